//! Registry of the q-series identities, with both sides built as
//! [`MultiSeries`] and, where a bijective proof exists, a combinatorial side
//! built by enumerating partitions.
//!
//! Infinite sums stop at the first summand whose lowest possible `q`-degree
//! reaches the truncation order, so no contribution below it is lost.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::partitions::{
    enumerate_b1, enumerate_b2, enumerate_b3, enumerate_do, enumerate_ds, enumerate_o, enumerate_oe, enumerate_p_gt,
    Partition,
};
use crate::series::{poch_finite, qbinom, AuxVar, Mismatch, Monomial, MultiSeries, QSeries, SeriesError, Term, EXACT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityError {
    UnknownIdentity(String),
    BadParams(String),
    Series(SeriesError),
}

impl fmt::Display for IdentityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityError::UnknownIdentity(id) => write!(f, "unknown identity {id:?}"),
            IdentityError::BadParams(msg) => write!(f, "bad parameters: {msg}"),
            IdentityError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for IdentityError {}

impl From<SeriesError> for IdentityError {
    fn from(e: SeriesError) -> Self {
        IdentityError::Series(e)
    }
}

type Result<T> = core::result::Result<T, IdentityError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Both sides are polynomials, compared exactly.
    PolynomialExact,
    /// Power series in `q`, compared below the truncation order.
    TruncatedSeries,
    /// Integer identity; sides are constant series.
    Integer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
    Combinatorial,
}

impl Side {
    pub fn from_name(s: &str) -> Option<Side> {
        match s {
            "lhs" => Some(Side::Lhs),
            "rhs" => Some(Side::Rhs),
            "combinatorial" => Some(Side::Combinatorial),
            _ => None,
        }
    }
}

/// A registered identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityCase {
    pub id: &'static str,
    /// Whether the identity takes the integer parameter `n`.
    pub takes_n: bool,
    pub kind: Kind,
    /// Families enumerated for the combinatorial side(s), if any.
    pub families: &'static [&'static str],
    pub statement: &'static str,
}

pub const REGISTRY: [IdentityCase; 13] = [
    IdentityCase {
        id: "ay1",
        takes_n: false,
        kind: Kind::TruncatedSeries,
        families: &[],
        statement: "sum_{n>=1} q^n/((zq^n;q)_{n+1}(zq^{2n+2};q^2)_inf) = sum_{n>=0} z^n q^{2n^2+2n+1}/((q;q^2)_{n+1}(zq;q^2)_{n+1})",
    },
    IdentityCase {
        id: "ay2",
        takes_n: false,
        kind: Kind::TruncatedSeries,
        families: &[],
        statement: "sum_{n>=0} q^n(-zq^{n+1};q)_n(-zq^{2n+2};q^2)_inf = sum_{n>=0} z^n q^{n^2+n}/(q;q^2)_{n+1}",
    },
    IdentityCase {
        id: "ay3",
        takes_n: true,
        kind: Kind::PolynomialExact,
        families: &[],
        statement: "sum_{s=0}^n q^s (q;q)_{n+s}/(q^2;q^2)_s = (q^2;q^2)_n",
    },
    IdentityCase {
        id: "thm21",
        takes_n: true,
        kind: Kind::PolynomialExact,
        families: &["B1"],
        statement: "sum_{s=0}^n q^s (-q^{s+1};q)_{n-s} [n+s, s] = (-q;q)_n^2",
    },
    IdentityCase {
        id: "lemma22",
        takes_n: true,
        kind: Kind::PolynomialExact,
        families: &["B1", "B2"],
        statement: "sum_{s=0}^n q^s (-q^{s+1};q)_{n-s} [n+s, s] = sum_{t=0}^n q^{t(t+1)/2} [2n+1, n+1+t]",
    },
    IdentityCase {
        id: "middle",
        takes_n: true,
        kind: Kind::PolynomialExact,
        families: &["P_gt", "B3"],
        statement: "sum_{t=0}^n q^{t(t+1)/2} [2n+1, n+1+t] = (-q;q)_n^2",
    },
    IdentityCase {
        id: "q1limit",
        takes_n: true,
        kind: Kind::Integer,
        families: &["subsets by pivot"],
        statement: "sum_{s=0}^n 2^{n-s} C(n+s, s) = sum_{t=0}^n C(2n+1, n+1+t)",
    },
    IdentityCase {
        id: "omega",
        takes_n: false,
        kind: Kind::TruncatedSeries,
        families: &[],
        statement: "sum_{n>=0} z^n q^{2n^2+2n}/((q;q^2)_{n+1}(zq;q^2)_{n+1}) = sum_{n>=0} z^n q^n/(q;q^2)_{n+1}",
    },
    IdentityCase {
        id: "omega1",
        takes_n: false,
        kind: Kind::TruncatedSeries,
        families: &["DS", "OE"],
        statement: "sum_{n>=0} z^{2n+1} q^{(2n+1)^2}/((q^2;q^4)_{n+1}(z^2q^2;q^4)_{n+1}) = sum_{n>=0} z^{2n+1} q^{2n+1}/(q^2;q^4)_{n+1}",
    },
    IdentityCase {
        id: "nu1",
        takes_n: false,
        kind: Kind::TruncatedSeries,
        families: &[],
        statement: "sum_{n>=0} q^{n^2+n}/(-zq;q^2)_{n+1} = sum_{n>=0} (q/z;q^2)_n (-zq)^n",
    },
    IdentityCase {
        id: "nu2",
        takes_n: false,
        kind: Kind::TruncatedSeries,
        families: &[],
        statement: "sum_{n>=0} z^n q^{n^2+n}/(-q;q^2)_{n+1} = sum_{n>=0} (zq;q^2)_n (-q)^n",
    },
    IdentityCase {
        id: "nu3",
        takes_n: false,
        kind: Kind::TruncatedSeries,
        families: &["O", "DO"],
        statement: "sum_{n>=0} q^{n^2+n} x^n/(yq;q^2)_{n+1} = sum_{n>=0} (-xq/y;q^2)_n (yq)^n",
    },
    IdentityCase {
        id: "qbinom_thm",
        takes_n: true,
        kind: Kind::PolynomialExact,
        families: &[],
        statement: "(z;q)_N = sum_{t=0}^N [N, t] (-1)^t z^t q^{t(t-1)/2}, with N = n",
    },
];

pub fn lookup(id: &str) -> Result<&'static IdentityCase> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| IdentityError::UnknownIdentity(String::from(id)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IdentityParams {
    pub n: Option<u32>,
}

impl IdentityParams {
    pub fn n(n: u32) -> IdentityParams {
        IdentityParams { n: Some(n) }
    }
}

impl fmt::Display for IdentityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            Some(n) => write!(f, "n={n}"),
            None => f.write_str("-"),
        }
    }
}

fn param_n(case: &IdentityCase, params: &IdentityParams) -> Result<u32> {
    match (case.takes_n, params.n) {
        (true, Some(n)) => Ok(n),
        (true, None) => Err(IdentityError::BadParams(format!("{} needs n", case.id))),
        (false, Some(_)) => Err(IdentityError::BadParams(format!("{} takes no parameters", case.id))),
        (false, None) => Ok(0),
    }
}

fn check_trunc(trunc: i64) -> Result<()> {
    if trunc < 1 {
        return Err(IdentityError::BadParams(String::from("trunc must be at least 1")));
    }
    Ok(())
}

const Z: AuxVar = AuxVar::Z;

fn z(e: i32) -> Monomial {
    Monomial::var(Z).pow(e)
}

fn term(coeff: i64, aux: Monomial, q: i64) -> Term {
    Term::new(coeff, aux, q)
}

fn tri(t: i64) -> i64 {
    t * (t + 1) / 2
}

/// `s / (a; q^step)_count`, or over the infinite product when `count` is
/// `None`. Factors of `q`-degree at or above the truncation order are `1`.
fn div_poch(mut s: MultiSeries, a: Term, step: u32, count: Option<u32>) -> Result<MultiSeries> {
    let mut k = 0u32;
    loop {
        if count.is_some_and(|c| k >= c) {
            break;
        }
        let factor = a.shift(i64::from(step) * i64::from(k));
        if count.is_none() && factor.q_exp >= s.trunc() {
            break;
        }
        s = s.div_one_minus(&factor)?;
        k += 1;
    }
    Ok(s)
}

/// `s · (a; q^step)_count`; factors that are `1` below the truncation order
/// of the product are skipped.
fn mul_poch(mut s: MultiSeries, a: Term, step: u32, count: Option<u32>) -> MultiSeries {
    let mut k = 0u32;
    loop {
        if count.is_some_and(|c| k >= c) {
            break;
        }
        let factor = a.shift(i64::from(step) * i64::from(k));
        // later factors have higher degree, so they vanish too
        if factor.q_exp >= 0 && s.valuation().saturating_add(factor.q_exp) >= s.trunc() {
            break;
        }
        s = s.mul_one_minus(&factor);
        k += 1;
    }
    s
}

/// A single starting term truncated at `trunc`.
fn start(t: Term, trunc: i64) -> MultiSeries {
    MultiSeries::from(t).truncate(trunc)
}

fn from_q(s: QSeries) -> MultiSeries {
    MultiSeries::from(s)
}

/// `S_n(i) = Σ_{s=0}^n q^{is} (q;q)_{n+s} / (q²;q²)_s`, each quotient taken
/// by exact polynomial division.
pub fn s_sum(n: u32, i: u32, trunc: i64) -> core::result::Result<QSeries, SeriesError> {
    let mut acc = QSeries::zero();
    // (q;q)_{n+s}/(q^2;q^2)_s, advanced one factor pair at a time
    let mut quotient = poch_finite(Term::q(1), 1, n).as_qseries().expect("no aux variables");
    for s in 0..=n {
        if s > 0 {
            let e = i64::from(n + s);
            quotient = &quotient - &quotient.mul_term(&BigInt::one(), e);
            let den = QSeries::from_terms([(0, 1), (2 * i64::from(s), -1)], EXACT);
            quotient = quotient.div_exact(&den)?;
        }
        acc = &acc + &quotient.mul_term(&BigInt::one(), i64::from(i) * i64::from(s));
    }
    Ok(acc.truncate(trunc))
}

/// Summand `s` of the left side of `thm21`.
pub fn thm21_summand(n: u32, s: u32) -> MultiSeries {
    poch_finite(term(-1, Monomial::ONE, i64::from(s) + 1), 1, n - s).mul_term(&Term::q(i64::from(s)))
        * from_q(qbinom(i64::from(n + s), i64::from(s)))
}

fn thm21_lhs(n: u32) -> MultiSeries {
    (0..=n).fold(MultiSeries::zero(), |acc, s| &acc + &thm21_summand(n, s))
}

fn neg_q_squared(n: u32) -> MultiSeries {
    let p = poch_finite(term(-1, Monomial::ONE, 1), 1, n);
    &p * &p
}

fn staircase_sum(n: u32) -> MultiSeries {
    (0..=i64::from(n)).fold(MultiSeries::zero(), |acc, t| {
        let b = qbinom(2 * i64::from(n) + 1, i64::from(n) + 1 + t);
        &acc + &from_q(b).mul_term(&Term::q(tri(t)))
    })
}

fn weight_gf<I: IntoIterator<Item = (Monomial, i64)>>(items: I, trunc: i64) -> MultiSeries {
    let mut out: alloc::collections::BTreeMap<(Monomial, i64), i64> = Default::default();
    for (m, w) in items {
        if w < trunc {
            *out.entry((m, w)).or_default() += 1;
        }
    }
    let mut per: alloc::collections::BTreeMap<Monomial, Vec<(i64, i64)>> = Default::default();
    for ((m, w), c) in out {
        per.entry(m).or_default().push((w, c));
    }
    MultiSeries::from_entries(per.into_iter().map(|(m, ts)| (m, QSeries::from_terms(ts, EXACT))), trunc)
}

fn binom(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    (0..k).fold(BigInt::one(), |acc, j| acc * (m - j) / (j + 1))
}

/// Integer sides of the `q -> 1` limit of `thm21`, plus the subset count
/// obtained by grouping subsets of `{1, ..., 2n+1}` with at least `n+1`
/// elements by their `(n+1)`-th smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q1Limit {
    pub n: u32,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub four_pow: BigInt,
    /// Per-pivot subset counts from enumeration; only for `n <= 10`.
    pub pivot_counts: Option<Vec<BigInt>>,
}

impl Q1Limit {
    pub fn holds(&self) -> bool {
        let pivots_ok = self.pivot_counts.as_ref().is_none_or(|counts| {
            counts.len() == self.n as usize + 1
                && counts.iter().enumerate().all(|(s, c)| *c == q1_lhs_term(self.n, s as u32))
        });
        self.lhs == self.rhs && self.rhs == self.four_pow && pivots_ok
    }
}

/// `2^{n-s} C(n+s, s)`.
pub fn q1_lhs_term(n: u32, s: u32) -> BigInt {
    (BigInt::one() << (n - s)) * binom(u64::from(n + s), u64::from(s))
}

pub fn q1_limit_check(n: u32) -> Q1Limit {
    let lhs = (0..=n).map(|s| q1_lhs_term(n, s)).sum();
    let m = u64::from(2 * n + 1);
    let rhs = (0..=u64::from(n)).map(|t| binom(m, u64::from(n) + 1 + t)).sum();
    let pivot_counts = (n <= 10).then(|| {
        let mut counts = vec![BigInt::zero(); n as usize + 1];
        for mask in 0u64..1 << m {
            if mask.count_ones() > n {
                // position of the (n+1)-th set bit, as an element of 1..=2n+1
                let mut seen = 0;
                let pivot = (0..m).find(|&b| {
                    seen += (mask >> b & 1) as u32;
                    seen == n + 1
                });
                let pivot = pivot.expect("at least n+1 bits") + 1;
                counts[(pivot - u64::from(n) - 1) as usize] += 1;
            }
        }
        counts
    });
    Q1Limit { n, lhs, rhs, four_pow: BigInt::one() << (2 * n), pivot_counts }
}

fn ay1_lhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (1..).take_while(|&n| n < trunc) {
        let s = start(Term::q(n), trunc);
        let s = div_poch(s, term(1, z(1), n), 1, Some(n as u32 + 1))?;
        let s = div_poch(s, term(1, z(1), 2 * n + 2), 2, None)?;
        acc = &acc + &s;
    }
    Ok(acc)
}

fn ay1_rhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| 2 * n * n + 2 * n + 1 < trunc) {
        let s = start(term(1, z(n as i32), 2 * n * n + 2 * n + 1), trunc);
        let s = div_poch(s, Term::q(1), 2, Some(n as u32 + 1))?;
        let s = div_poch(s, term(1, z(1), 1), 2, Some(n as u32 + 1))?;
        acc = &acc + &s;
    }
    Ok(acc)
}

fn ay2_lhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| n < trunc) {
        let s = start(Term::q(n), trunc);
        let s = mul_poch(s, term(-1, z(1), n + 1), 1, Some(n as u32));
        acc = &acc + &mul_poch(s, term(-1, z(1), 2 * n + 2), 2, None);
    }
    Ok(acc)
}

fn ay2_rhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| n * n + n < trunc) {
        let s = start(term(1, z(n as i32), n * n + n), trunc);
        acc = &acc + &div_poch(s, Term::q(1), 2, Some(n as u32 + 1))?;
    }
    Ok(acc)
}

fn omega_lhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| 2 * n * n + 2 * n < trunc) {
        let s = start(term(1, z(n as i32), 2 * n * n + 2 * n), trunc);
        let s = div_poch(s, Term::q(1), 2, Some(n as u32 + 1))?;
        acc = &acc + &div_poch(s, term(1, z(1), 1), 2, Some(n as u32 + 1))?;
    }
    Ok(acc)
}

fn omega_rhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| n < trunc) {
        let s = start(term(1, z(n as i32), n), trunc);
        acc = &acc + &div_poch(s, Term::q(1), 2, Some(n as u32 + 1))?;
    }
    Ok(acc)
}

fn omega1_lhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| (2 * n + 1) * (2 * n + 1) < trunc) {
        let m = 2 * n + 1;
        let s = start(term(1, z(m as i32), m * m), trunc);
        let s = div_poch(s, Term::q(2), 4, Some(n as u32 + 1))?;
        acc = &acc + &div_poch(s, term(1, z(2), 2), 4, Some(n as u32 + 1))?;
    }
    Ok(acc)
}

fn omega1_rhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| 2 * n + 1 < trunc) {
        let m = 2 * n + 1;
        let s = start(term(1, z(m as i32), m), trunc);
        acc = &acc + &div_poch(s, Term::q(2), 4, Some(n as u32 + 1))?;
    }
    Ok(acc)
}

fn x(e: i32) -> Monomial {
    Monomial::var(AuxVar::X).pow(e)
}

fn y(e: i32) -> Monomial {
    Monomial::var(AuxVar::Y).pow(e)
}

fn nu3_lhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| n * n + n < trunc) {
        let s = start(term(1, x(n as i32), n * n + n), trunc);
        acc = &acc + &div_poch(s, term(1, y(1), 1), 2, Some(n as u32 + 1))?;
    }
    Ok(acc)
}

fn nu3_rhs(trunc: i64) -> MultiSeries {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| n < trunc) {
        let s = start(term(1, y(n as i32), n), trunc);
        acc = &acc + &mul_poch(s, term(-1, x(1) * y(-1), 1), 2, Some(n as u32));
    }
    acc
}

fn nu1_lhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| n * n + n < trunc) {
        let s = start(Term::q(n * n + n), trunc);
        acc = &acc + &div_poch(s, term(-1, z(1), 1), 2, Some(n as u32 + 1))?;
    }
    Ok(acc)
}

fn nu1_rhs(trunc: i64) -> MultiSeries {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| n < trunc) {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let s = start(term(sign, z(n as i32), n), trunc);
        acc = &acc + &mul_poch(s, term(1, z(-1), 1), 2, Some(n as u32));
    }
    acc
}

fn nu2_lhs(trunc: i64) -> Result<MultiSeries> {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| n * n + n < trunc) {
        let s = start(term(1, z(n as i32), n * n + n), trunc);
        acc = &acc + &div_poch(s, term(-1, Monomial::ONE, 1), 2, Some(n as u32 + 1))?;
    }
    Ok(acc)
}

fn nu2_rhs(trunc: i64) -> MultiSeries {
    let mut acc = MultiSeries::zero_to(trunc);
    for n in (0..).take_while(|&n| n < trunc) {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let s = start(term(sign, Monomial::ONE, n), trunc);
        acc = &acc + &mul_poch(s, term(1, z(1), 1), 2, Some(n as u32));
    }
    acc
}

fn qbinom_thm_lhs(n: u32) -> MultiSeries {
    poch_finite(term(1, z(1), 0), 1, n)
}

fn qbinom_thm_rhs(n: u32) -> MultiSeries {
    (0..=i64::from(n)).fold(MultiSeries::zero(), |acc, t| {
        let sign = if t % 2 == 0 { 1 } else { -1 };
        let b = from_q(qbinom(i64::from(n), t));
        &acc + &b.mul_term(&term(sign, z(t as i32), t * (t - 1) / 2))
    })
}

fn ds_gf(trunc: i64) -> MultiSeries {
    let cap = (trunc - 1).max(0) as u64;
    let ks = (0u32..).take_while(|k| u64::from(2 * k + 1) <= cap);
    let items: Vec<(Monomial, i64)> = ks
        .flat_map(|k| enumerate_ds(k, cap).into_iter().map(move |l| (z(2 * k as i32 + 1), l.weight() as i64)))
        .collect();
    weight_gf(items, trunc)
}

fn oe_gf(trunc: i64) -> MultiSeries {
    let cap = (trunc - 1).max(0) as u64;
    let ks = (0u32..).take_while(|k| u64::from(2 * k + 1) <= cap);
    let items: Vec<(Monomial, i64)> = ks
        .flat_map(|k| enumerate_oe(k, cap).into_iter().map(move |e| (z(2 * k as i32 + 1), e.weight() as i64)))
        .collect();
    weight_gf(items, trunc)
}

fn nk_range(trunc: i64) -> impl Iterator<Item = (u32, u32)> {
    let trunc = trunc.max(0);
    (0u32..).take_while(move |&n| i64::from(n) * i64::from(n + 1) < trunc).flat_map(move |n| {
        let room = trunc - i64::from(n) * i64::from(n + 1);
        (0..room as u32).map(move |k| (n, k))
    })
}

fn o_gf(trunc: i64) -> MultiSeries {
    let cap = (trunc - 1).max(0) as u64;
    let items: Vec<(Monomial, i64)> = nk_range(trunc)
        .flat_map(|(n, k)| {
            enumerate_o(n, k, Some(cap)).into_iter().map(move |e| (x(n as i32) * y(k as i32), e.weight() as i64))
        })
        .collect();
    weight_gf(items, trunc)
}

fn do_gf(trunc: i64) -> MultiSeries {
    let cap = (trunc - 1).max(0) as u64;
    let items: Vec<(Monomial, i64)> = nk_range(trunc)
        .flat_map(|(n, k)| {
            enumerate_do(n, k, Some(cap)).into_iter().map(move |e| (x(n as i32) * y(k as i32), e.weight() as i64))
        })
        .collect();
    weight_gf(items, trunc)
}

/// Both closed-form sides, exact for polynomial identities.
fn closed_sides(case: &IdentityCase, n: u32, trunc: i64) -> Result<(MultiSeries, MultiSeries)> {
    Ok(match case.id {
        "ay1" => (ay1_lhs(trunc)?, ay1_rhs(trunc)?),
        "ay2" => (ay2_lhs(trunc)?, ay2_rhs(trunc)?),
        "ay3" => (from_q(s_sum(n, 1, EXACT)?), poch_finite(Term::q(2), 2, n)),
        "thm21" => (thm21_lhs(n), neg_q_squared(n)),
        "lemma22" => (thm21_lhs(n), staircase_sum(n)),
        "middle" => (staircase_sum(n), neg_q_squared(n)),
        "q1limit" => {
            let r = q1_limit_check(n);
            (MultiSeries::constant(r.lhs), MultiSeries::constant(r.rhs))
        }
        "omega" => (omega_lhs(trunc)?, omega_rhs(trunc)?),
        "omega1" => (omega1_lhs(trunc)?, omega1_rhs(trunc)?),
        "nu1" => (nu1_lhs(trunc)?, nu1_rhs(trunc)),
        "nu2" => (nu2_lhs(trunc)?, nu2_rhs(trunc)),
        "nu3" => (nu3_lhs(trunc)?, nu3_rhs(trunc)),
        "qbinom_thm" => (qbinom_thm_lhs(n), qbinom_thm_rhs(n)),
        other => return Err(IdentityError::UnknownIdentity(String::from(other))),
    })
}

/// A combinatorial side: the family it enumerates and which closed-form side
/// it should reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialSide {
    pub family: &'static str,
    pub matches: Side,
    pub series: MultiSeries,
}

/// Every combinatorial side of `id`, each a sum of `q^{weight}` (times the
/// identity's auxiliary statistic) over an enumerated family, truncated at
/// `trunc`. The finite families grow like `4^n`.
pub fn combinatorial_sides(id: &str, params: &IdentityParams, trunc: i64) -> Result<Vec<CombinatorialSide>> {
    check_trunc(trunc)?;
    let case = lookup(id)?;
    let n = param_n(case, params)?;
    let side = |family, matches, series: MultiSeries| CombinatorialSide { family, matches, series };
    let plain = |ws: Vec<i64>| weight_gf(ws.into_iter().map(|w| (Monomial::ONE, w)), trunc);
    Ok(match case.id {
        "thm21" => vec![side("B1", Side::Lhs, plain(enumerate_b1(n).iter().map(|e| e.weight() as i64).collect()))],
        "lemma22" => vec![
            side("B1", Side::Lhs, plain(enumerate_b1(n).iter().map(|e| e.weight() as i64).collect())),
            side("B2", Side::Rhs, plain(enumerate_b2(n).iter().map(|e| e.weight() as i64).collect())),
        ],
        "middle" => {
            // shift by n(n+1)/2 to undo the negative offset of the signed sets
            let shift = tri(i64::from(n));
            vec![
                side("P_gt", Side::Lhs, plain(enumerate_p_gt(n).iter().map(|e| e.weight() + shift).collect())),
                side("B3", Side::Lhs, plain(enumerate_b3(n).iter().map(|e| e.weight() + shift).collect())),
            ]
        }
        "q1limit" => {
            let r = q1_limit_check(n);
            match r.pivot_counts {
                Some(c) => {
                    vec![side("subsets by pivot", Side::Rhs, MultiSeries::constant(c.into_iter().sum::<BigInt>()))]
                }
                None => Vec::new(),
            }
        }
        "omega1" => vec![side("DS", Side::Lhs, ds_gf(trunc)), side("OE", Side::Rhs, oe_gf(trunc))],
        "nu3" => vec![side("O", Side::Lhs, o_gf(trunc)), side("DO", Side::Rhs, do_gf(trunc))],
        _ => Vec::new(),
    })
}

/// One side of a registered identity expanded below `trunc`. Polynomial
/// identities are built exactly and then truncated.
pub fn build_side(id: &str, side: Side, params: &IdentityParams, trunc: i64) -> Result<MultiSeries> {
    check_trunc(trunc)?;
    let case = lookup(id)?;
    let n = param_n(case, params)?;
    match side {
        Side::Lhs => Ok(closed_sides(case, n, trunc)?.0.truncate(trunc)),
        Side::Rhs => Ok(closed_sides(case, n, trunc)?.1.truncate(trunc)),
        Side::Combinatorial => combinatorial_sides(id, params, trunc)?
            .into_iter()
            .next()
            .map(|c| c.series)
            .ok_or_else(|| IdentityError::BadParams(format!("{id} has no combinatorial side here"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub id: String,
    pub params: IdentityParams,
    pub trunc: i64,
    pub equal: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl VerifyReport {
    fn compare(id: &str, params: &IdentityParams, trunc: i64, lhs: &MultiSeries, rhs: &MultiSeries) -> Self {
        let first_mismatch = lhs.first_mismatch(rhs);
        VerifyReport { id: String::from(id), params: *params, trunc, equal: first_mismatch.is_none(), first_mismatch }
    }
}

/// Compare two series below `trunc` and describe the first difference.
pub fn compare_series(
    id: &str,
    params: &IdentityParams,
    trunc: i64,
    lhs: &MultiSeries,
    rhs: &MultiSeries,
) -> VerifyReport {
    let lhs = lhs.clone().truncate(trunc);
    let rhs = rhs.clone().truncate(trunc);
    VerifyReport::compare(id, params, trunc, &lhs, &rhs)
}

/// Coefficient-exact comparison of the two closed-form sides below `trunc`.
pub fn verify(id: &str, params: &IdentityParams, trunc: i64) -> Result<VerifyReport> {
    check_trunc(trunc)?;
    let case = lookup(id)?;
    let n = param_n(case, params)?;
    let (lhs, rhs) = closed_sides(case, n, trunc)?;
    Ok(compare_series(id, params, trunc, &lhs, &rhs))
}

/// Compare every combinatorial side with the closed-form side it encodes.
/// The report carries the first failing comparison, if any.
pub fn verify_combinatorial(id: &str, params: &IdentityParams, trunc: i64) -> Result<VerifyReport> {
    let case = lookup(id)?;
    let n = param_n(case, params)?;
    let sides = combinatorial_sides(id, params, trunc)?;
    if sides.is_empty() {
        return Err(IdentityError::BadParams(format!("{id} has no combinatorial side here")));
    }
    let (lhs, rhs) = closed_sides(case, n, trunc)?;
    let mut report = None;
    for c in sides {
        let closed = if c.matches == Side::Lhs { &lhs } else { &rhs };
        let r = compare_series(id, params, trunc, closed, &c.series);
        if !r.equal {
            return Ok(r);
        }
        report.get_or_insert(r);
    }
    Ok(report.expect("at least one side"))
}

/// `nu3` with `x -> 1, y -> -z` (gives `nu1`) or `x -> z, y -> -1` (gives
/// `nu2`).
pub fn nu3_specialized(which: &str, side: Side, trunc: i64) -> Result<MultiSeries> {
    let s = build_side("nu3", side, &IdentityParams::default(), trunc)?;
    let (xr, yr) = match which {
        "nu1" => (Term::new(1, Monomial::ONE, 0), Term::new(-1, z(1), 0)),
        "nu2" => (Term::new(1, z(1), 0), Term::new(-1, Monomial::ONE, 0)),
        other => return Err(IdentityError::UnknownIdentity(String::from(other))),
    };
    Ok(s.substitute(AuxVar::X, &xr)?.substitute(AuxVar::Y, &yr)?)
}

/// Left side of the `q`-binomial theorem at `z = -q^{-n}`, `N = 2n+1`,
/// alongside `2 q^{-n(n+1)/2} (-q;q)_n^2`; the two are equal Laurent
/// polynomials.
pub fn qbinom_thm_at_middle(n: u32) -> Result<(MultiSeries, MultiSeries)> {
    let rhs_sum = qbinom_thm_rhs(2 * n + 1);
    let at = rhs_sum.substitute(Z, &term(-1, Monomial::ONE, -i64::from(n)))?;
    let closed = neg_q_squared(n).mul_term(&term(2, Monomial::ONE, -tri(i64::from(n))));
    Ok((at, closed))
}

fn partitions_of(total: u32) -> impl Iterator<Item = Partition> {
    crate::partitions::bounded_partitions(u64::from(total), total, usize::MAX, &|_| true)
        .into_iter()
        .filter(move |p| p.weight() == u64::from(total))
}

fn omega_condition(p: &Partition) -> bool {
    let small = p.smallest().unwrap_or(0);
    p.parts().iter().all(|&a| a % 2 == 0 || a < 2 * small)
}

/// Partitions of `n` whose odd parts are all less than twice the smallest
/// part, by brute force.
pub fn p_omega(n: u32) -> u64 {
    partitions_of(n).filter(omega_condition).count() as u64
}

/// The distinct-part partitions counted by [`p_omega`].
pub fn p_nu(n: u32) -> u64 {
    partitions_of(n).filter(|p| p.is_distinct() && omega_condition(p)).count() as u64
}

/// One row of the `p_omega` / `p_nu` table against the `z = 1`
/// coefficients of the `ay1` and `ay2` left sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub n: u32,
    pub p_omega: u64,
    pub p_nu: u64,
    pub ay1: BigInt,
    pub ay2: BigInt,
}

impl CountRow {
    pub fn omega_agrees(&self) -> bool {
        BigInt::from(self.p_omega) == self.ay1
    }

    pub fn nu_agrees(&self) -> bool {
        BigInt::from(self.p_nu) == self.ay2
    }
}

/// Left sides of `ay1` and `ay2` at `z = 1`, truncated at `trunc`.
pub fn counting_series(trunc: i64) -> Result<(QSeries, QSeries)> {
    let one = Term::new(1, Monomial::ONE, 0);
    let a1 = ay1_lhs(trunc)?.substitute(Z, &one)?;
    let a2 = ay2_lhs(trunc)?.substitute(Z, &one)?;
    Ok((a1.coefficient(Monomial::ONE), a2.coefficient(Monomial::ONE)))
}

pub fn count_table(max_n: u32) -> Result<Vec<CountRow>> {
    if max_n == 0 {
        return Err(IdentityError::BadParams(String::from("max_n must be at least 1")));
    }
    let (a1, a2) = counting_series(i64::from(max_n) + 1)?;
    Ok((1..=max_n)
        .map(|n| CountRow {
            n,
            p_omega: p_omega(n),
            p_nu: p_nu(n),
            ay1: a1.coeff(i64::from(n)),
            ay2: a2.coeff(i64::from(n)),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> MultiSeries {
        MultiSeries::from(QSeries::from_slice(c))
    }

    #[test]
    fn s_sum_small() {
        assert_eq!(s_sum(0, 1, EXACT).unwrap(), QSeries::one());
        assert_eq!(s_sum(1, 1, EXACT).unwrap(), QSeries::from_slice(&[1, 0, -1]));
        for n in 0..8 {
            let rhs = poch_finite(Term::q(2), 2, n).as_qseries().unwrap();
            assert_eq!(s_sum(n, 1, EXACT).unwrap(), rhs);
        }
    }

    #[test]
    fn build_side_examples() {
        let p1 = IdentityParams::n(1);
        assert_eq!(build_side("ay3", Side::Lhs, &p1, 50).unwrap(), q(&[1, 0, -1]).truncate(50));
        assert_eq!(build_side("thm21", Side::Rhs, &p1, 50).unwrap(), q(&[1, 2, 1]).truncate(50));
        let p0 = IdentityParams::n(0);
        assert_eq!(build_side("middle", Side::Lhs, &p0, 50).unwrap(), q(&[1]).truncate(50));
        assert_eq!(build_side("middle", Side::Rhs, &p0, 50).unwrap(), q(&[1]).truncate(50));
        let l = build_side("q1limit", Side::Lhs, &IdentityParams::n(2), 50).unwrap();
        assert_eq!(l, MultiSeries::constant(16).truncate(50));
    }

    #[test]
    fn params_are_checked() {
        assert!(matches!(verify("ay3", &IdentityParams::default(), 10), Err(IdentityError::BadParams(_))));
        assert!(matches!(verify("ay1", &IdentityParams::n(1), 10), Err(IdentityError::BadParams(_))));
        assert!(matches!(verify("ay9", &IdentityParams::default(), 10), Err(IdentityError::UnknownIdentity(_))));
        assert!(matches!(verify("ay3", &IdentityParams::n(1), 0), Err(IdentityError::BadParams(_))));
    }

    #[test]
    fn small_verifications() {
        for id in ["ay3", "thm21", "lemma22", "middle", "q1limit", "qbinom_thm"] {
            for n in 0..5 {
                assert!(verify(id, &IdentityParams::n(n), 100).unwrap().equal, "{id} n={n}");
            }
        }
        for id in ["ay1", "ay2", "omega", "omega1", "nu1", "nu2", "nu3"] {
            assert!(verify(id, &IdentityParams::default(), 20).unwrap().equal, "{id}");
        }
    }

    #[test]
    fn perturbed_side_is_caught() {
        let p = IdentityParams::n(2);
        let lhs = build_side("thm21", Side::Lhs, &p, 50).unwrap();
        let rhs = &build_side("thm21", Side::Rhs, &p, 50).unwrap() + &MultiSeries::from(Term::q(1));
        let r = compare_series("thm21", &p, 50, &lhs, &rhs);
        assert!(!r.equal);
        assert_eq!(r.first_mismatch.unwrap().exponent, 1);
    }

    #[test]
    fn small_counts() {
        assert_eq!(p_omega(1), 1);
        assert_eq!(p_omega(2), 2);
        assert_eq!(p_nu(1), 1);
        assert_eq!(p_nu(2), 1);
    }

    #[test]
    fn q1_pivots() {
        for n in 0..6 {
            assert!(q1_limit_check(n).holds(), "n={n}");
        }
    }
}
