//! The constructive weight-preserving maps between partition families, each
//! with an explicit inverse, plus an exhaustive checker.
//!
//! | map | domain | codomain |
//! |-----|--------|----------|
//! | [`phi`] | B1(n) | B2(n) |
//! | [`psi`] | subsets of `{-n..-1}` | distinct partitions with parts `<= n` |
//! | [`tau`] | P_gt(n) | subsets of `{-n..n}` with at most `n` elements |
//! | [`rho`] | P_gt(n) | B3(n) |
//! | [`durfee_split`] | DS_k | OE_k |
//! | [`nu3_forward`] | O_{n,k} | DO_{n,k} |

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::partitions::{
    distinct_odd_to_selfconj, enumerate_b1, enumerate_b2, enumerate_b3, enumerate_do, enumerate_ds, enumerate_o,
    enumerate_oe, enumerate_p, enumerate_p_gt, selfconj_to_distinct_odd, validate_ds, validate_p_gt, B1Pair,
    DistinctPartition, HookPair, OddPair, Partition, RectanglePair, RunPair, SignedDistinctSet, StaircasePair,
    Violation,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BijectionError {
    /// The input is not in the map's domain.
    DomainViolation {
        map: &'static str,
        reason: Violation,
    },
    /// A property the construction guarantees failed to hold.
    InvariantBroken {
        map: &'static str,
        what: &'static str,
    },
    UnknownBijection(String),
    MissingParam(&'static str),
}

impl fmt::Display for BijectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BijectionError::DomainViolation { map, reason } => {
                write!(f, "{map}: input outside the domain ({reason})")
            }
            BijectionError::InvariantBroken { map, what } => write!(f, "{map}: {what}"),
            BijectionError::UnknownBijection(name) => write!(f, "unknown bijection {name:?}"),
            BijectionError::MissingParam(p) => write!(f, "missing parameter {p}"),
        }
    }
}

impl core::error::Error for BijectionError {}

type Result<T> = core::result::Result<T, BijectionError>;

fn check(map: &'static str, r: core::result::Result<(), Violation>) -> Result<()> {
    r.map_err(|reason| BijectionError::DomainViolation { map, reason })
}

fn violation(map: &'static str, why: &'static str) -> BijectionError {
    BijectionError::DomainViolation { map, reason: Violation(why) }
}

/// Subtract the staircase `(l, l-1, ..., 1)` from `lambda` and stack `pi`
/// underneath what remains.
pub fn phi(n: u32, pair: &B1Pair) -> Result<StaircasePair> {
    check("phi", pair.validate(n))?;
    let l = pair.lambda.len() as u32;
    let mut parts: Vec<u32> = pair.lambda.parts().iter().enumerate().map(|(i, &p)| p - (l - i as u32)).collect();
    parts.extend_from_slice(pair.pi.parts());
    parts.retain(|&p| p > 0);
    let out = StaircasePair { t: l, nu: Partition::new(parts).expect("rows stay decreasing") };
    debug_assert!(out.validate(n).is_ok());
    Ok(out)
}

pub fn phi_inv(n: u32, pair: &StaircasePair) -> Result<B1Pair> {
    check("phi_inv", pair.validate(n))?;
    let t = pair.t as usize;
    let lambda: Vec<u32> = (1..=t).map(|i| pair.nu.part(i) + (t + 1 - i) as u32).collect();
    let pi = pair.nu.parts().get(t..).unwrap_or(&[]).to_vec();
    let out = B1Pair {
        lambda: DistinctPartition::new(lambda).expect("adding a staircase separates parts"),
        pi: Partition::new(pi).expect("tail of a partition"),
    };
    debug_assert!(out.validate(n).is_ok());
    Ok(out)
}

fn negatives(n: u32) -> SignedDistinctSet {
    SignedDistinctSet::new(n, (-(n as i32)..0).collect()).expect("in range")
}

/// `-({-n, ..., -1} \ mu)`, with `|mu| = -n(n+1)/2 + |psi(mu)|`.
pub fn psi(n: u32, mu: &SignedDistinctSet) -> Result<DistinctPartition> {
    if mu.n() != n {
        return Err(violation("psi", "set belongs to a different n"));
    }
    let rest = mu.complement_within(&negatives(n)).ok_or_else(|| violation("psi", "element outside {-n, ..., -1}"))?;
    let parts = rest.elements().iter().map(|&e| (-e) as u32).collect();
    Ok(DistinctPartition::new(parts).expect("negated increasing negatives"))
}

pub fn psi_inv(n: u32, lam: &DistinctPartition) -> Result<SignedDistinctSet> {
    if lam.largest().unwrap_or(0) > n {
        return Err(violation("psi_inv", "part larger than n"));
    }
    let taken = lam.parts().iter().map(|&p| -(p as i32)).collect();
    let taken = SignedDistinctSet::new(n, taken).expect("in range");
    Ok(taken.complement_within(&negatives(n)).expect("subset of the negatives"))
}

/// `-({-n, ..., n} \ lam)`; sends sets with at least `n+1` elements to sets
/// with at most `n`, keeping the weight.
pub fn tau(n: u32, lam: &SignedDistinctSet) -> Result<SignedDistinctSet> {
    check("tau", validate_p_gt(n, lam))?;
    Ok(lam.complement().negate())
}

pub fn tau_inv(n: u32, lam: &SignedDistinctSet) -> Result<SignedDistinctSet> {
    if lam.n() != n {
        return Err(violation("tau_inv", "set belongs to a different n"));
    }
    if lam.len() > n as usize {
        return Err(violation("tau_inv", "more than n elements"));
    }
    Ok(lam.complement().negate())
}

/// With `lam` read increasing as `lam_1 < ... < lam_{n+1+t}`, subtract the
/// run `-n, ..., t` entrywise: `nu_i = lam_i - (-n + i - 1)`.
pub fn rho(n: u32, lam: &SignedDistinctSet) -> Result<RunPair> {
    check("rho", validate_p_gt(n, lam))?;
    let t = (lam.len() - n as usize - 1) as u32;
    let parts = lam.elements().iter().enumerate().map(|(i, &e)| (e + n as i32 - i as i32) as u32).collect();
    let out = RunPair { n, t, nu: Partition::from_multiset(parts) };
    debug_assert!(out.validate(n).is_ok());
    Ok(out)
}

pub fn rho_inv(n: u32, pair: &RunPair) -> Result<SignedDistinctSet> {
    check("rho_inv", pair.validate(n))?;
    let len = (n + 1 + pair.t) as usize;
    // nu read increasing, padded with zeros at the front
    let elements = (1..=len).map(|i| pair.nu.part(len + 1 - i) as i32 - n as i32 + i as i32 - 1).collect();
    let out = SignedDistinctSet::new(n, elements).expect("strictly increasing run");
    debug_assert!(validate_p_gt(n, &out).is_ok());
    Ok(out)
}

/// Split off the largest part `2k+1`.
pub fn durfee_split(lam: &Partition) -> Result<OddPair> {
    let top = lam.largest().ok_or_else(|| violation("durfee_split", "empty partition"))?;
    if top % 2 == 0 {
        return Err(violation("durfee_split", "largest part is even"));
    }
    check("durfee_split", validate_ds((top - 1) / 2, lam))?;
    let (mu, nu) = lam.split_top().expect("non-empty");
    Ok(OddPair { mu, nu })
}

/// Put `mu` back on top of `nu`.
pub fn durfee_merge(pair: &OddPair) -> Result<Partition> {
    if pair.mu.is_multiple_of(2) {
        return Err(violation("durfee_merge", "mu is even"));
    }
    let k = (pair.mu - 1) / 2;
    check("durfee_merge", pair.validate(k))?;
    let out = pair.nu.with_top(pair.mu).expect("mu is at least every part of nu");
    if validate_ds(k, &out).is_err() {
        return Err(BijectionError::InvariantBroken { map: "durfee_merge", what: "result is not in DS_k" });
    }
    Ok(out)
}

/// Intermediate shapes of [`nu3_forward`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nu3Trace {
    /// The rectangle after every part of `pi` has been absorbed.
    pub nu_star: Partition,
    /// Top row of `nu_star`.
    pub mu: u32,
    /// `nu_star` without its top row; self-conjugate with Durfee size `n`.
    pub nu_prime: Partition,
    pub nu: DistinctPartition,
}

/// Full construction with intermediate shapes. Each odd part `2s+1` of `pi`,
/// largest first, adds a column of height `s+1` to the right of the rows
/// built so far and a row of width `s` below them.
pub fn nu3_trace(n: u32, k: u32, pair: &RectanglePair) -> Result<Nu3Trace> {
    const MAP: &str = "nu3";
    check(MAP, pair.validate(n, k))?;
    let mut rows = pair.rectangle().into_parts();
    if rows.is_empty() {
        rows.push(0);
    }
    for &part in pair.pi.parts() {
        let s = (part - 1) / 2;
        for r in rows.iter_mut().take(s as usize + 1) {
            *r += 1;
        }
        rows.push(s);
    }
    rows.retain(|&r| r > 0);
    let nu_star = Partition::new(rows)
        .map_err(|_| BijectionError::InvariantBroken { map: MAP, what: "rows stopped decreasing" })?;
    let (mu, nu_prime) = nu_star.split_top().expect("k >= 1 or n >= 1 gives a row");
    let broken = |what| Err(BijectionError::InvariantBroken { map: MAP, what });
    if !nu_prime.is_self_conjugate() {
        return broken("nu' is not self-conjugate");
    }
    if nu_prime.durfee_size() != n {
        return broken("nu' does not have Durfee size n");
    }
    if nu_prime.largest().unwrap_or(0) > n + k {
        return broken("nu' has a part larger than n+k");
    }
    let nu = selfconj_to_distinct_odd(&nu_prime).expect("checked self-conjugate");
    let out = HookPair { mu, nu };
    if out.validate(n, k).is_err() {
        return broken("image is not in DO_{n,k}");
    }
    Ok(Nu3Trace { nu_star, mu, nu_prime, nu: out.nu })
}

pub fn nu3_forward(n: u32, k: u32, pair: &RectanglePair) -> Result<HookPair> {
    if n + k == 0 {
        return Err(violation("nu3", "n + k must be positive"));
    }
    nu3_trace(n, k, pair).map(|t| HookPair { mu: t.mu, nu: t.nu })
}

/// Rows of the self-conjugate shape beyond the Durfee square give the
/// nonzero `s`; the remaining parts of `pi` are `1` (`s = 0`).
pub fn nu3_inverse(n: u32, k: u32, pair: &HookPair) -> Result<RectanglePair> {
    check("nu3_inv", pair.validate(n, k))?;
    let nu_prime = distinct_odd_to_selfconj(&pair.nu).expect("validated odd parts");
    let tail = nu_prime.parts().get(n as usize..).unwrap_or(&[]);
    if tail.len() > k as usize {
        return Err(BijectionError::InvariantBroken { map: "nu3_inv", what: "more than k rows below n" });
    }
    let mut pi: Vec<u32> = tail.iter().map(|&s| 2 * s + 1).collect();
    pi.resize(k as usize, 1);
    let out = RectanglePair { n, pi: Partition::new(pi).expect("decreasing odd parts") };
    debug_assert!(out.validate(n, k).is_ok());
    Ok(out)
}

/// Outcome of an exhaustive check. Reports over disjoint slices of a domain
/// combine with [`BijectionReport::merge`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BijectionReport {
    pub domain_size: usize,
    pub codomain_size: usize,
    pub roundtrip_failures: usize,
    pub weight_violations: usize,
    pub image_violations: usize,
    /// Distinct inputs sharing an image.
    pub collisions: usize,
    /// Whether the (law-adjusted) domain weights equal the codomain weights
    /// as multisets.
    pub weight_multiset_match: bool,
    pub witness: Option<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.roundtrip_failures == 0
            && self.weight_violations == 0
            && self.image_violations == 0
            && self.collisions == 0
            && self.weight_multiset_match
            && self.domain_size == self.codomain_size
    }

    pub fn merge(mut self, other: BijectionReport) -> BijectionReport {
        self.domain_size += other.domain_size;
        self.codomain_size += other.codomain_size;
        self.roundtrip_failures += other.roundtrip_failures;
        self.weight_violations += other.weight_violations;
        self.image_violations += other.image_violations;
        self.collisions += other.collisions;
        self.weight_multiset_match &= other.weight_multiset_match;
        self.witness = self.witness.or(other.witness);
        self
    }

    fn empty() -> BijectionReport {
        BijectionReport { weight_multiset_match: true, ..BijectionReport::default() }
    }
}

struct Side<'a, T> {
    elements: Vec<T>,
    valid: &'a dyn Fn(&T) -> bool,
    /// Weight in the common scale of both sides.
    weight: &'a dyn Fn(&T) -> i64,
}

fn run<D, C>(
    dom: Side<'_, D>,
    cod: Side<'_, C>,
    fwd: &dyn Fn(&D) -> Result<C>,
    inv: &dyn Fn(&C) -> Result<D>,
) -> BijectionReport
where
    D: Ord + Clone + fmt::Debug,
    C: Ord + Clone + fmt::Debug,
{
    let mut rep = BijectionReport::empty();
    rep.domain_size = dom.elements.len();
    rep.codomain_size = cod.elements.len();
    let witness = |rep: &mut BijectionReport, msg: String| {
        if rep.witness.is_none() {
            rep.witness = Some(msg);
        }
    };
    let mut images = BTreeSet::new();
    let mut image_weights = Vec::new();
    for x in &dom.elements {
        let y = match fwd(x) {
            Ok(y) => y,
            Err(e) => {
                rep.image_violations += 1;
                witness(&mut rep, format!("{x:?}: {e}"));
                continue;
            }
        };
        if !(cod.valid)(&y) {
            rep.image_violations += 1;
            witness(&mut rep, format!("{x:?} maps outside the codomain to {y:?}"));
        }
        if (dom.weight)(x) != (cod.weight)(&y) {
            rep.weight_violations += 1;
            witness(&mut rep, format!("{x:?} -> {y:?} changes weight"));
        }
        if inv(&y).as_ref() != Ok(x) {
            rep.roundtrip_failures += 1;
            witness(&mut rep, format!("{x:?} does not come back from {y:?}"));
        }
        image_weights.push((cod.weight)(&y));
        if !images.insert(y) {
            rep.collisions += 1;
            witness(&mut rep, format!("{x:?} shares its image"));
        }
    }
    for y in &cod.elements {
        match inv(y) {
            Ok(x) if (dom.valid)(&x) && fwd(&x).as_ref() == Ok(y) => {}
            _ => {
                rep.roundtrip_failures += 1;
                witness(&mut rep, format!("{y:?} does not come back through the inverse"));
            }
        }
    }
    let mut dw: Vec<i64> = dom.elements.iter().map(|x| (dom.weight)(x)).collect();
    let mut cw: Vec<i64> = cod.elements.iter().map(|y| (cod.weight)(y)).collect();
    dw.sort_unstable();
    cw.sort_unstable();
    image_weights.sort_unstable();
    rep.weight_multiset_match = dw == cw && image_weights == cw;
    rep
}

/// Parameters for [`check_bijection`]. `max_nk` sweeps every `(n, k)` with
/// `1 <= n + k <= max_nk` for `nu3` when `n` and `k` are not both given.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BijectionParams {
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub max_nk: Option<u32>,
}

pub const BIJECTIONS: [&str; 6] = ["phi", "psi", "tau", "rho", "durfee_split", "nu3"];

/// Enumerate the domain and codomain, apply both directions and tally every
/// failure. `weight_cap` is required for `durfee_split` (all `k` up to the
/// cap unless `k` is given) and optional for `nu3`.
pub fn check_bijection(name: &str, params: &BijectionParams, weight_cap: Option<u64>) -> Result<BijectionReport> {
    let need_n = || params.n.ok_or(BijectionError::MissingParam("n"));
    let within = |w: u64| weight_cap.is_none_or(|c| w <= c);
    Ok(match name {
        "phi" => {
            let n = need_n()?;
            run(
                Side { elements: enumerate_b1(n), valid: &|x| x.validate(n).is_ok(), weight: &|x| x.weight() as i64 },
                Side { elements: enumerate_b2(n), valid: &|y| y.validate(n).is_ok(), weight: &|y| y.weight() as i64 },
                &|x| phi(n, x),
                &|y| phi_inv(n, y),
            )
        }
        "psi" => {
            let n = need_n()?;
            let shift = (n as i64) * (n as i64 + 1) / 2;
            let dom = (0u64..1 << n).map(|m| SignedDistinctSet::from_mask(n, m)).collect();
            let cod = (0u64..1 << n)
                .map(|m| {
                    let parts = (1..=n).rev().filter(|p| m >> (p - 1) & 1 == 1).collect();
                    DistinctPartition::new(parts).expect("distinct")
                })
                .collect();
            run(
                Side {
                    elements: dom,
                    valid: &|x: &SignedDistinctSet| x.elements().iter().all(|&e| e < 0),
                    weight: &|x| x.weight(),
                },
                Side {
                    elements: cod,
                    valid: &|y: &DistinctPartition| y.largest().unwrap_or(0) <= n,
                    weight: &|y| y.weight() as i64 - shift,
                },
                &|x| psi(n, x),
                &|y| psi_inv(n, y),
            )
        }
        "tau" => {
            let n = need_n()?;
            let cod = enumerate_p(n).into_iter().filter(|s| s.len() <= n as usize).collect();
            run(
                Side { elements: enumerate_p_gt(n), valid: &|x| validate_p_gt(n, x).is_ok(), weight: &|x| x.weight() },
                Side { elements: cod, valid: &|y: &SignedDistinctSet| y.len() <= n as usize, weight: &|y| y.weight() },
                &|x| tau(n, x),
                &|y| tau_inv(n, y),
            )
        }
        "rho" => {
            let n = need_n()?;
            run(
                Side { elements: enumerate_p_gt(n), valid: &|x| validate_p_gt(n, x).is_ok(), weight: &|x| x.weight() },
                Side { elements: enumerate_b3(n), valid: &|y| y.validate(n).is_ok(), weight: &|y| y.weight() },
                &|x| rho(n, x),
                &|y| rho_inv(n, y),
            )
        }
        "durfee_split" => {
            let cap = weight_cap.ok_or(BijectionError::MissingParam("weight_cap"))?;
            let ks: Vec<u32> = match params.k {
                Some(k) => alloc::vec![k],
                None => (0..).take_while(|k| u64::from(2 * k + 1) <= cap).collect(),
            };
            let mut rep = BijectionReport::empty();
            for k in ks {
                rep = rep.merge(run(
                    Side {
                        elements: enumerate_ds(k, cap),
                        valid: &|x| validate_ds(k, x).is_ok(),
                        weight: &|x| x.weight() as i64,
                    },
                    Side {
                        elements: enumerate_oe(k, cap),
                        valid: &|y| y.validate(k).is_ok(),
                        weight: &|y| y.weight() as i64,
                    },
                    &durfee_split,
                    &durfee_merge,
                ));
            }
            rep
        }
        "nu3" => {
            let pairs: Vec<(u32, u32)> = match (params.n, params.k, params.max_nk) {
                (Some(n), Some(k), _) => alloc::vec![(n, k)],
                (_, _, Some(m)) => (1..=m).flat_map(|s| (0..=s).map(move |n| (n, s - n))).collect(),
                (None, _, None) => return Err(BijectionError::MissingParam("n")),
                (Some(_), None, None) => return Err(BijectionError::MissingParam("k")),
            };
            let mut rep = BijectionReport::empty();
            for (n, k) in pairs {
                let dom = enumerate_o(n, k, weight_cap);
                let cod = enumerate_do(n, k, weight_cap);
                rep = rep.merge(run(
                    Side {
                        elements: dom,
                        valid: &|x| x.validate(n, k).is_ok() && within(x.weight()),
                        weight: &|x| x.weight() as i64,
                    },
                    Side {
                        elements: cod,
                        valid: &|y| y.validate(n, k).is_ok() && within(y.weight()),
                        weight: &|y| y.weight() as i64,
                    },
                    &|x| nu3_forward(n, k, x),
                    &|y| nu3_inverse(n, k, y),
                ));
            }
            rep
        }
        other => return Err(BijectionError::UnknownBijection(String::from(other))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn d(parts: &[u32]) -> DistinctPartition {
        DistinctPartition::new(parts.to_vec()).unwrap()
    }

    fn s(n: u32, e: &[i32]) -> SignedDistinctSet {
        SignedDistinctSet::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn phi_example() {
        let x = B1Pair { lambda: d(&[5, 3]), pi: p(&[2, 2, 2, 1, 1]) };
        let y = phi(5, &x).unwrap();
        assert_eq!(y, StaircasePair { t: 2, nu: p(&[3, 2, 2, 2, 2, 1, 1]) });
        assert_eq!(y.mu(), d(&[2, 1]));
        assert_eq!(phi_inv(5, &y).unwrap(), x);
        let empty = B1Pair { lambda: d(&[]), pi: p(&[]) };
        assert_eq!(phi(3, &empty).unwrap(), StaircasePair { t: 0, nu: p(&[]) });
    }

    #[test]
    fn phi_rejects_bad_input() {
        let x = B1Pair { lambda: d(&[5, 3]), pi: p(&[3]) };
        assert!(matches!(phi(5, &x), Err(BijectionError::DomainViolation { .. })));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(2, &s(2, &[])).unwrap(), d(&[2, 1]));
        assert_eq!(psi(2, &s(2, &[-2, -1])).unwrap(), d(&[]));
        let x = s(3, &[-2]);
        let y = psi(3, &x).unwrap();
        assert_eq!(y, d(&[3, 1]));
        assert_eq!(x.weight(), -6 + y.weight() as i64);
        assert_eq!(psi_inv(3, &y).unwrap(), x);
        assert!(psi(2, &s(2, &[0])).is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(1, &s(1, &[-1, 0, 1])).unwrap(), s(1, &[]));
        assert_eq!(tau(1, &s(1, &[0, 1])).unwrap(), s(1, &[1]));
        assert!(tau(1, &s(1, &[1])).is_err());
    }

    #[test]
    fn rho_examples() {
        let x = s(5, &[-4, -2, -1, 0, 2, 4, 5]);
        let y = rho(5, &x).unwrap();
        assert_eq!(y, RunPair { n: 5, t: 1, nu: p(&[4, 4, 3, 2, 2, 2, 1]) });
        assert_eq!(y.mu(), s(5, &[-5, -4, -3, -2, -1, 0, 1]));
        assert_eq!(rho_inv(5, &y).unwrap(), x);
        assert_eq!(rho(1, &s(1, &[-1, 0])).unwrap(), RunPair { n: 1, t: 0, nu: p(&[]) });
    }

    #[test]
    fn durfee_examples() {
        assert_eq!(durfee_split(&p(&[3])).unwrap(), OddPair { mu: 3, nu: p(&[]) });
        assert_eq!(durfee_split(&p(&[3, 1, 1])).unwrap(), OddPair { mu: 3, nu: p(&[1, 1]) });
        assert_eq!(durfee_merge(&OddPair { mu: 3, nu: p(&[1, 1]) }).unwrap(), p(&[3, 1, 1]));
        assert!(durfee_split(&p(&[3, 1])).is_err());
    }

    #[test]
    fn nu3_example() {
        let x = RectanglePair { n: 1, pi: p(&[3]) };
        let tr = nu3_trace(1, 1, &x).unwrap();
        assert_eq!(tr.nu_star, p(&[2, 2, 1]));
        assert_eq!(tr.mu, 2);
        assert_eq!(tr.nu_prime, p(&[2, 1]));
        assert_eq!(tr.nu, d(&[3]));
        let y = nu3_forward(1, 1, &x).unwrap();
        assert_eq!(x.weight(), y.weight());
        assert_eq!(nu3_inverse(1, 1, &y).unwrap(), x);
        let x0 = RectanglePair { n: 0, pi: p(&[1]) };
        assert_eq!(nu3_forward(0, 1, &x0).unwrap(), HookPair { mu: 1, nu: d(&[]) });
    }

    #[test]
    fn small_checks_pass() {
        let n = |n| BijectionParams { n: Some(n), ..Default::default() };
        for name in ["phi", "psi", "tau", "rho"] {
            for k in 0..4 {
                let r = check_bijection(name, &n(k), None).unwrap();
                assert!(r.passed(), "{name} n={k}: {r:?}");
            }
        }
        assert_eq!(check_bijection("tau", &n(1), None).unwrap().domain_size, 4);
        let r = check_bijection("durfee_split", &BijectionParams::default(), Some(15)).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = check_bijection("nu3", &BijectionParams { max_nk: Some(3), ..Default::default() }, Some(20)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(check_bijection("sigma", &n(1), None), Err(BijectionError::UnknownBijection("sigma".into())));
    }

    #[test]
    fn merge_is_additive() {
        let a = BijectionReport { domain_size: 2, codomain_size: 2, weight_multiset_match: true, ..Default::default() };
        let b = BijectionReport {
            domain_size: 1,
            codomain_size: 1,
            collisions: 1,
            weight_multiset_match: false,
            witness: Some("w".into()),
            ..Default::default()
        };
        let m = a.clone().merge(b);
        assert_eq!((m.domain_size, m.collisions, m.weight_multiset_match), (3, 1, false));
        assert!(!m.passed());
        assert!(a.passed());
    }
}
