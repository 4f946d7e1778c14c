//! Acceptance suite: one PASS/FAIL line per criterion, every comparison
//! coefficient-exact. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qbij_core::bijections::{check_bijection, phi, rho, BijectionParams};
use qbij_core::dsl::{eval, identity_text, parse};
use qbij_core::identities::{
    build_side, count_table, nu3_specialized, q1_limit_check, qbinom_thm_at_middle, s_sum, verify,
    verify_combinatorial, IdentityParams, Side, REGISTRY,
};
use qbij_core::partitions::{
    enumerate_p, enumerate_p_gt, B1Pair, DistinctPartition, Partition, RunPair, SignedDistinctSet, StaircasePair,
};
use qbij_core::series::{poch_finite, EXACT};
use qbij_core::{Monomial, QSeries, Term};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn n(n: u32) -> IdentityParams {
    IdentityParams::n(n)
}

fn verify_grid(id: &str, range: std::ops::RangeInclusive<u32>, trunc: i64) -> Result<(), String> {
    for k in range {
        let r = verify(id, &n(k), trunc).map_err(|e| format!("{id} n={k}: {e}"))?;
        ensure(r.equal, || format!("{id} n={k}: {:?}", r.first_mismatch))?;
    }
    Ok(())
}

fn bijection(
    name: &str,
    p: BijectionParams,
    cap: Option<u64>,
) -> Result<qbij_core::bijections::BijectionReport, String> {
    let r = check_bijection(name, &p, cap).map_err(|e| format!("{name}: {e}"))?;
    ensure(r.passed(), || format!("{name} {p:?}: {r:?}"))?;
    Ok(r)
}

fn with_n(k: u32) -> BijectionParams {
    BijectionParams { n: Some(k), ..Default::default() }
}

fn four_pow(k: u32) -> usize {
    1usize << (2 * k)
}

fn c1_ay3() -> Outcome {
    let start = Instant::now();
    for k in 0..=20 {
        let lhs = s_sum(k, 1, EXACT).map_err(|e| e.to_string())?;
        let rhs = poch_finite(Term::q(2), 2, k).as_qseries().expect("univariate");
        ensure(lhs == rhs, || format!("n={k}: S_n(1) != (q^2;q^2)_n"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("n=0..20 exact in {took:.2?}"))
}

fn c2_thm21() -> Outcome {
    verify_grid("thm21", 0..=12, EXACT)?;
    for k in 0..=6 {
        let r = verify_combinatorial("thm21", &n(k), EXACT).map_err(|e| e.to_string())?;
        ensure(r.equal, || format!("B1 GF n={k}: {:?}", r.first_mismatch))?;
    }
    Ok("closed forms n=0..12, B1 enumeration n=0..6".into())
}

fn c3_lemma22() -> Outcome {
    verify_grid("lemma22", 0..=12, EXACT)?;
    for k in 0..=5 {
        bijection("phi", with_n(k), None)?;
    }
    let lambda = DistinctPartition::new(vec![5, 3]).unwrap();
    let pi = Partition::new(vec![2, 2, 2, 1, 1]).unwrap();
    let out = phi(5, &B1Pair { lambda, pi }).map_err(|e| e.to_string())?;
    let want = StaircasePair { t: 2, nu: Partition::new(vec![3, 2, 2, 2, 2, 1, 1]).unwrap() };
    ensure(out == want, || format!("worked example gave {out:?}"))?;
    ensure(out.mu() == DistinctPartition::new(vec![2, 1]).unwrap(), || "mu is not (2,1)".into())?;
    Ok(format!("n=0..12; phi exhaustive n=0..5; example mu={} nu={}", out.mu(), out.nu))
}

/// `Σ q^{|λ|}` over a signed family as a Laurent polynomial.
fn signed_gf(sets: &[SignedDistinctSet]) -> QSeries {
    QSeries::from_terms(sets.iter().map(|s| (s.weight(), 1)), EXACT)
}

fn c4_middle() -> Outcome {
    verify_grid("middle", 0..=12, EXACT)?;
    for k in 0..=5 {
        let r = bijection("rho", with_n(k), None)?;
        ensure(r.domain_size == four_pow(k), || format!("|P_gt({k})| = {}", r.domain_size))?;
        bijection("tau", with_n(k), None)?;
        bijection("psi", with_n(k), None)?;
    }
    let lam = SignedDistinctSet::new(5, vec![-4, -2, -1, 0, 2, 4, 5]).unwrap();
    let out = rho(5, &lam).map_err(|e| e.to_string())?;
    let want = RunPair { n: 5, t: 1, nu: Partition::new(vec![4, 4, 3, 2, 2, 2, 1]).unwrap() };
    ensure(out == want, || format!("worked example gave {out:?}"))?;
    for k in 0..=8u32 {
        let tri = i64::from(k) * i64::from(k + 1) / 2;
        let sq = poch_finite(Term::new(-1, Monomial::ONE, 1), 1, k);
        let sq = (&sq * &sq).as_qseries().expect("univariate");
        let half = sq.mul_term(&BigInt::from(1), -tri);
        let full = sq.mul_term(&BigInt::from(2), -tri);
        ensure(signed_gf(&enumerate_p(k)) == full, || format!("P({k}) GF"))?;
        ensure(signed_gf(&enumerate_p_gt(k)) == half, || format!("P_gt({k}) GF"))?;
    }
    Ok(format!("n=0..12; rho/tau/psi exhaustive n=0..5; example t={} nu={}; signed GFs n=0..8", out.t, out.nu))
}

fn c5_q1() -> Outcome {
    for k in 0..=20 {
        let r = q1_limit_check(k);
        ensure(r.holds(), || format!("n={k}: {r:?}"))?;
    }
    for k in 0..=7 {
        let c = enumerate_p_gt(k).len();
        ensure(c == four_pow(k), || format!("|P_gt({k})| = {c}"))?;
    }
    Ok("integer sums n=0..20 equal 4^n; |P_gt(n)| = 4^n for n=0..7".into())
}

fn c6_ay() -> Outcome {
    let start = Instant::now();
    for id in ["ay1", "ay2"] {
        let r = verify(id, &IdentityParams::default(), 60).map_err(|e| e.to_string())?;
        ensure(r.equal, || format!("{id}: {:?}", r.first_mismatch))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("ay1, ay2 bivariate to q^60 in {took:.2?}"))
}

fn c7_omega() -> Outcome {
    for id in ["omega", "omega1"] {
        let r = verify(id, &IdentityParams::default(), 80).map_err(|e| e.to_string())?;
        ensure(r.equal, || format!("{id}: {:?}", r.first_mismatch))?;
    }
    let r = verify_combinatorial("omega1", &IdentityParams::default(), 26).map_err(|e| e.to_string())?;
    ensure(r.equal, || format!("DS/OE GF: {:?}", r.first_mismatch))?;
    let rep = bijection("durfee_split", BijectionParams::default(), Some(25))?;
    Ok(format!("to q^80; DS/OE GF weight <= 25; durfee_split over {} elements", rep.domain_size))
}

fn c8_nu() -> Outcome {
    for id in ["nu3", "nu1", "nu2"] {
        let r = verify(id, &IdentityParams::default(), 40).map_err(|e| e.to_string())?;
        ensure(r.equal, || format!("{id}: {:?}", r.first_mismatch))?;
    }
    for id in ["nu1", "nu2"] {
        for side in [Side::Lhs, Side::Rhs] {
            let direct = build_side(id, side, &IdentityParams::default(), 40).map_err(|e| e.to_string())?;
            let sub = nu3_specialized(id, side, 40).map_err(|e| e.to_string())?;
            ensure(direct.first_mismatch(&sub).is_none() && direct.trunc() == sub.trunc(), || {
                format!("{id} {side:?} vs substituted nu3: {:?}", direct.first_mismatch(&sub))
            })?;
        }
    }
    let r = verify_combinatorial("nu3", &IdentityParams::default(), 31).map_err(|e| e.to_string())?;
    ensure(r.equal, || format!("O/DO GF: {:?}", r.first_mismatch))?;
    let rep = bijection("nu3", BijectionParams { max_nk: Some(5), ..Default::default() }, Some(30))?;
    Ok(format!("to q^40; nu1/nu2 = substituted nu3; nu3 exhaustive over {} elements", rep.domain_size))
}

fn c9_qbinom() -> Outcome {
    verify_grid("qbinom_thm", 0..=12, EXACT)?;
    for k in 0..=5 {
        let (at, closed) = qbinom_thm_at_middle(k).map_err(|e| e.to_string())?;
        ensure(at.first_mismatch(&closed).is_none(), || format!("z=-q^-{k}: {:?}", at.first_mismatch(&closed)))?;
    }
    Ok("N=0..12 exact; z=-q^-n, N=2n+1 Laurent check n=0..5".into())
}

fn c10_counts() -> Outcome {
    let rows = count_table(30).map_err(|e| e.to_string())?;
    let omega_bad: Vec<u32> = rows.iter().filter(|r| !r.omega_agrees()).map(|r| r.n).collect();
    let nu_bad: Vec<u32> = rows.iter().filter(|r| !r.nu_agrees()).map(|r| r.n).collect();
    // The excess of the ay2 coefficients over p_nu, compared with the
    // partitions of N into distinct even parts: the n = 0 summand of ay2.
    let evens = poch_finite(Term::new(-1, Monomial::ONE, 2), 2, 15).as_qseries().expect("univariate");
    let excess_is_even_distinct =
        rows.iter().all(|r| r.ay2.clone() - BigInt::from(r.p_nu) == evens.coeff(i64::from(r.n)));
    ensure(omega_bad.is_empty(), || format!("p_omega disagrees at N={omega_bad:?}"))?;
    ensure(nu_bad.is_empty(), || {
        let first = &rows[nu_bad[0] as usize - 1];
        format!(
            "p_omega agrees for N=1..30; p_nu disagrees at N={nu_bad:?} (first: N={} p_nu={} ay2={}); \
             excess equals distinct-even-part count for every N: {excess_is_even_distinct}",
            first.n, first.p_nu, first.ay2
        )
    })?;
    Ok("p_omega and p_nu agree for N=1..30".into())
}

fn c11_dsl() -> Outcome {
    let trunc = 60;
    let mut cases = 0;
    for case in REGISTRY {
        let (lt, rt) = identity_text(case.id).ok_or_else(|| format!("no text for {}", case.id))?;
        let (le, re) = (parse(lt).map_err(|e| e.to_string())?, parse(rt).map_err(|e| e.to_string())?);
        let grid: Vec<Option<u32>> = if case.takes_n { (0..=4).map(Some).collect() } else { vec![None] };
        for k in grid {
            let params = IdentityParams { n: k };
            let mut bind = BTreeMap::new();
            if let Some(k) = k {
                bind.insert("n".to_string(), i64::from(k));
            }
            for (side, e) in [(Side::Lhs, &le), (Side::Rhs, &re)] {
                let built = build_side(case.id, side, &params, trunc).map_err(|e| e.to_string())?;
                let text = eval(e, &bind, trunc).map_err(|e| format!("{} {side:?}: {e}", case.id))?;
                ensure(built.first_mismatch(&text).is_none() && built.trunc() == text.trunc(), || {
                    format!("{} {side:?} {params}: {:?}", case.id, built.first_mismatch(&text))
                })?;
                cases += 1;
            }
            // negative control: perturb one coefficient of the rhs text
            let at = 7;
            let bumped = parse(&format!("{rt} + 3*q^{at}")).map_err(|e| e.to_string())?;
            let lhs = build_side(case.id, Side::Lhs, &params, trunc).map_err(|e| e.to_string())?;
            let rhs = eval(&bumped, &bind, trunc).map_err(|e| e.to_string())?;
            let m = lhs.first_mismatch(&rhs);
            ensure(
                m.as_ref().is_some_and(|m| {
                    m.exponent == at && m.monomial == Monomial::ONE && &m.rhs - &m.lhs == BigInt::from(3)
                }),
                || format!("{} {params}: perturbation reported as {m:?}", case.id),
            )?;
        }
    }
    Ok(format!("{cases} textual sides match their builders at trunc {trunc}; every perturbation located at q^7"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("S_n(1) = (q^2;q^2)_n", c1_ay3),
        ("thm21 closed forms and B1 enumeration", c2_thm21),
        ("lemma22 and phi", c3_lemma22),
        ("middle step, rho and signed generating functions", c4_middle),
        ("q -> 1 limit", c5_q1),
        ("ay1 and ay2 bivariate", c6_ay),
        ("omega, omega1 and durfee_split", c7_omega),
        ("nu1, nu2, nu3 and the nu3 bijection", c8_nu),
        ("q-binomial theorem", c9_qbinom),
        ("p_omega / p_nu against ay1 / ay2 at z=1", c10_counts),
        ("DSL texts against builders", c11_dsl),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {:>2}  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.2?}", criteria.len() - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
