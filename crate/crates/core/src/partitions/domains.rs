//! The finite (or weight-capped) families the bijections act on, with a
//! membership validator for each.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{DistinctPartition, Partition, SignedDistinctSet};

/// Reason an element fails a family's defining constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation(pub &'static str);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

fn require(cond: bool, why: &'static str) -> Result<(), Violation> {
    if cond {
        Ok(())
    } else {
        Err(Violation(why))
    }
}

fn tri(t: u32) -> u64 {
    u64::from(t) * u64::from(t + 1) / 2
}

/// All partitions fitting a `max_parts × max_part` box, in lexicographic
/// order of their zero-padded part vectors.
#[derive(Clone, Debug)]
pub struct BoxPartitions {
    max_part: u32,
    cur: Option<Vec<u32>>,
}

impl BoxPartitions {
    pub fn new(max_parts: u32, max_part: u32) -> BoxPartitions {
        BoxPartitions { max_part, cur: Some(alloc::vec![0; max_parts as usize]) }
    }
}

impl Iterator for BoxPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.cur.as_mut()?;
        let out = Partition::from_multiset(cur.clone());
        let next = (0..cur.len()).rev().find(|&i| cur[i] < self.max_part && (i == 0 || cur[i] < cur[i - 1]));
        match next {
            Some(i) => {
                cur[i] += 1;
                cur[i + 1..].iter_mut().for_each(|x| *x = 0);
            }
            None => self.cur = None,
        }
        Some(out)
    }
}

/// Partitions with weight at most `max_weight`, parts at most `max_part`,
/// at most `max_len` parts, using only parts accepted by `allowed`.
pub(crate) fn bounded_partitions(
    max_weight: u64,
    max_part: u32,
    max_len: usize,
    allowed: &dyn Fn(u32) -> bool,
) -> Vec<Partition> {
    fn rec(
        remaining: u64,
        max_part: u32,
        len_left: usize,
        allowed: &dyn Fn(u32) -> bool,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        out.push(Partition(cur.clone()));
        if len_left == 0 {
            return;
        }
        let top = u64::from(max_part).min(remaining) as u32;
        for p in (1..=top).rev() {
            if allowed(p) {
                cur.push(p);
                rec(remaining - u64::from(p), p, len_left - 1, allowed, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(max_weight, max_part, max_len, allowed, &mut Vec::new(), &mut out);
    out
}

/// Element of B1(n): `lambda` distinct with parts `<= n`; `pi` has at most
/// `n + 1` parts, all smaller than the smallest part of `lambda` (at most `n`
/// when `lambda` is empty).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct B1Pair {
    pub lambda: DistinctPartition,
    pub pi: Partition,
}

impl B1Pair {
    pub fn weight(&self) -> u64 {
        self.lambda.weight() + self.pi.weight()
    }

    pub fn validate(&self, n: u32) -> Result<(), Violation> {
        require(self.lambda.largest().unwrap_or(0) <= n, "lambda has a part larger than n")?;
        require(self.pi.len() <= n as usize + 1, "pi has more than n+1 parts")?;
        let bound = match self.lambda.smallest() {
            Some(s) => s - 1,
            None => n,
        };
        require(self.pi.largest().unwrap_or(0) <= bound, "pi's largest part is too big")
    }
}

/// Element of B2(n): the staircase `(t, t-1, ..., 1)` (stored as `t`) and a
/// partition `nu` in an `(n+1+t) × (n-t)` box.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StaircasePair {
    pub t: u32,
    pub nu: Partition,
}

impl StaircasePair {
    pub fn mu(&self) -> DistinctPartition {
        DistinctPartition((1..=self.t).rev().collect())
    }

    pub fn weight(&self) -> u64 {
        tri(self.t) + self.nu.weight()
    }

    pub fn validate(&self, n: u32) -> Result<(), Violation> {
        require(self.t <= n, "t exceeds n")?;
        require(self.nu.len() <= (n + 1 + self.t) as usize, "nu has more than n+1+t parts")?;
        require(self.nu.largest().unwrap_or(0) <= n - self.t, "nu has a part larger than n-t")
    }
}

/// Element of B3(n): the run `{-n, ..., t}` (stored as `t`) and a partition
/// `nu` in an `(n+1+t) × (n-t)` box.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunPair {
    pub n: u32,
    pub t: u32,
    pub nu: Partition,
}

impl RunPair {
    pub fn mu(&self) -> SignedDistinctSet {
        SignedDistinctSet { n: self.n, elements: (-(self.n as i32)..=self.t as i32).collect() }
    }

    /// `|mu| + |nu|` with `|mu| = t(t+1)/2 - n(n+1)/2`.
    pub fn weight(&self) -> i64 {
        tri(self.t) as i64 - tri(self.n) as i64 + self.nu.weight() as i64
    }

    pub fn validate(&self, n: u32) -> Result<(), Violation> {
        require(self.n == n, "element belongs to a different n")?;
        StaircasePair { t: self.t, nu: self.nu.clone() }.validate(n)
    }
}

/// Element of OE_k: a single odd part `mu = 2k+1` and an odd partition `nu`
/// with parts `<= 2k+1`, each distinct part repeated an even number of times.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPair {
    pub mu: u32,
    pub nu: Partition,
}

impl OddPair {
    pub fn weight(&self) -> u64 {
        u64::from(self.mu) + self.nu.weight()
    }

    pub fn validate(&self, k: u32) -> Result<(), Violation> {
        require(self.mu == 2 * k + 1, "mu is not 2k+1")?;
        require(self.nu.all_odd(), "nu has an even part")?;
        require(self.nu.largest().unwrap_or(0) <= self.mu, "nu has a part larger than mu")?;
        require(self.nu.even_multiplicities(), "nu has a part of odd multiplicity")
    }
}

/// Element of O_{n,k}: the `(n+1)`-row rectangle of width `n` (implied by
/// `n`) and an odd partition `pi` with exactly `k` parts, each `<= 2n+1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RectanglePair {
    pub n: u32,
    pub pi: Partition,
}

impl RectanglePair {
    pub fn k(&self) -> u32 {
        self.pi.len() as u32
    }

    pub fn rectangle(&self) -> Partition {
        if self.n == 0 {
            return Partition::empty();
        }
        Partition(alloc::vec![self.n; self.n as usize + 1])
    }

    pub fn weight(&self) -> u64 {
        u64::from(self.n) * u64::from(self.n + 1) + self.pi.weight()
    }

    pub fn validate(&self, n: u32, k: u32) -> Result<(), Violation> {
        require(self.n == n, "rectangle does not match n")?;
        require(self.pi.len() == k as usize, "pi does not have exactly k parts")?;
        require(self.pi.all_odd(), "pi has an even part")?;
        require(self.pi.largest().unwrap_or(0) <= 2 * n + 1, "pi has a part larger than 2n+1")
    }
}

/// Element of DO_{n,k}: a single part `mu = n+k` and a distinct odd
/// partition `nu` with exactly `n` parts, each `<= 2(n+k) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HookPair {
    pub mu: u32,
    pub nu: DistinctPartition,
}

impl HookPair {
    pub fn n(&self) -> u32 {
        self.nu.len() as u32
    }

    pub fn weight(&self) -> u64 {
        u64::from(self.mu) + self.nu.weight()
    }

    pub fn validate(&self, n: u32, k: u32) -> Result<(), Violation> {
        require(self.mu == n + k, "mu is not n+k")?;
        require(self.nu.len() == n as usize, "nu does not have exactly n parts")?;
        require(self.nu.parts().iter().all(|p| p % 2 == 1), "nu has an even part")?;
        require(u64::from(self.nu.largest().unwrap_or(0)) < 2 * u64::from(n + k), "nu has a part larger than 2(n+k)-1")
    }
}

/// Membership in DS_k: odd Durfee size, the parts below the Durfee square and
/// the conjugate of the part to its right are both odd partitions with even
/// multiplicities, and the largest part is `2k+1`.
pub fn validate_ds(k: u32, lambda: &Partition) -> Result<(), Violation> {
    require(lambda.largest() == Some(2 * k + 1), "largest part is not 2k+1")?;
    let d = lambda.durfee_size();
    require(d % 2 == 1, "Durfee size is even")?;
    let below = Partition(lambda.parts()[d as usize..].to_vec());
    require(below.all_odd() && below.even_multiplicities(), "parts below the Durfee square")?;
    let right = Partition::from_multiset(lambda.parts()[..d as usize].iter().map(|p| p - d).collect());
    let right = right.conjugate();
    require(right.all_odd() && right.even_multiplicities(), "parts right of the Durfee square")
}

pub fn validate_p(n: u32, s: &SignedDistinctSet) -> Result<(), Violation> {
    require(s.n() == n, "set belongs to a different n")?;
    require(s.elements().iter().all(|e| e.unsigned_abs() <= n), "element outside [-n, n]")
}

pub fn validate_p_gt(n: u32, s: &SignedDistinctSet) -> Result<(), Violation> {
    validate_p(n, s)?;
    require(s.len() > n as usize, "fewer than n+1 elements")
}

pub fn enumerate_b1(n: u32) -> Vec<B1Pair> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let parts: Vec<u32> = (1..=n).rev().filter(|p| mask >> (p - 1) & 1 == 1).collect();
        let lambda = DistinctPartition(parts);
        let bound = lambda.smallest().map_or(n, |s| s - 1);
        out.extend(BoxPartitions::new(n + 1, bound).map(|pi| B1Pair { lambda: lambda.clone(), pi }));
    }
    out
}

pub fn enumerate_b2(n: u32) -> Vec<StaircasePair> {
    (0..=n).flat_map(|t| BoxPartitions::new(n + 1 + t, n - t).map(move |nu| StaircasePair { t, nu })).collect()
}

pub fn enumerate_b3(n: u32) -> Vec<RunPair> {
    (0..=n).flat_map(|t| BoxPartitions::new(n + 1 + t, n - t).map(move |nu| RunPair { n, t, nu })).collect()
}

pub fn enumerate_p(n: u32) -> Vec<SignedDistinctSet> {
    (0u64..1 << (2 * n + 1)).map(|m| SignedDistinctSet::from_mask(n, m)).collect()
}

pub fn enumerate_p_gt(n: u32) -> Vec<SignedDistinctSet> {
    (0u64..1 << (2 * n + 1)).filter(|m| m.count_ones() > n).map(|m| SignedDistinctSet::from_mask(n, m)).collect()
}

/// Odd partitions with every part repeated an even number of times, parts
/// at most `max_part`, weight at most `max_weight`; `half_len` fixes the
/// number of distinct pairs when given.
fn paired_odd(max_weight: u64, max_part: u32, half_len: Option<usize>) -> Vec<Partition> {
    let max_len = half_len.unwrap_or(usize::MAX);
    bounded_partitions(max_weight / 2, max_part, max_len, &|p| p % 2 == 1)
        .into_iter()
        .filter(|h| half_len.is_none_or(|l| h.len() == l))
        .map(|h| Partition(h.parts().iter().flat_map(|&p| [p, p]).collect()))
        .collect()
}

/// Built directly from its pieces: an odd Durfee size `d`, the conjugate of
/// the region right of the square (exactly `2k+1-d` parts) and the region
/// below it, both paired odd partitions with parts at most `d`.
pub fn enumerate_ds(k: u32, weight_cap: u64) -> Vec<Partition> {
    let top = 2 * k + 1;
    let mut out = Vec::new();
    for d in (1..=top).step_by(2) {
        let square = u64::from(d) * u64::from(d);
        if square > weight_cap {
            break;
        }
        let r = (top - d) as usize;
        for right in paired_odd(weight_cap - square, d, Some(r / 2)) {
            let room = weight_cap - square - right.weight();
            for below in paired_odd(room, d, None) {
                let mut rows: Vec<u32> =
                    (1..=d).map(|i| d + right.parts().iter().filter(|&&c| c >= i).count() as u32).collect();
                rows.extend_from_slice(below.parts());
                let lambda = Partition(rows);
                debug_assert!(validate_ds(k, &lambda).is_ok(), "{lambda:?}");
                out.push(lambda);
            }
        }
    }
    out.sort();
    out
}

pub fn enumerate_oe(k: u32, weight_cap: u64) -> Vec<OddPair> {
    let mu = 2 * k + 1;
    if u64::from(mu) > weight_cap {
        return Vec::new();
    }
    paired_odd(weight_cap - u64::from(mu), mu, None).into_iter().map(|nu| OddPair { mu, nu }).collect()
}

pub fn enumerate_o(n: u32, k: u32, weight_cap: Option<u64>) -> Vec<RectanglePair> {
    let base = u64::from(n) * u64::from(n + 1);
    let max_pi = u64::from(k) * u64::from(2 * n + 1);
    let budget = match weight_cap {
        Some(c) if c < base => return Vec::new(),
        Some(c) => (c - base).min(max_pi),
        None => max_pi,
    };
    bounded_partitions(budget, 2 * n + 1, k as usize, &|p| p % 2 == 1)
        .into_iter()
        .filter(|pi| pi.len() == k as usize)
        .map(|pi| RectanglePair { n, pi })
        .collect()
}

pub fn enumerate_do(n: u32, k: u32, weight_cap: Option<u64>) -> Vec<HookPair> {
    let mu = n + k;
    let odds: Vec<u32> = (0..mu).map(|j| 2 * j + 1).rev().collect();
    let mut out = Vec::new();
    // choose n of the available odd parts, largest first
    fn rec(odds: &[u32], need: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if need == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..odds.len() {
            if odds.len() - i < need {
                break;
            }
            cur.push(odds[i]);
            rec(&odds[i + 1..], need - 1, cur, out);
            cur.pop();
        }
    }
    let mut chosen = Vec::new();
    rec(&odds, n as usize, &mut Vec::new(), &mut chosen);
    for parts in chosen {
        let pair = HookPair { mu, nu: DistinctPartition(parts) };
        if weight_cap.is_none_or(|c| pair.weight() <= c) {
            out.push(pair);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DomainParams {
    pub n: Option<u32>,
    pub k: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainError {
    UnknownDomain(String),
    MissingParam(&'static str),
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainError::UnknownDomain(name) => write!(f, "unknown domain {name:?}"),
            DomainError::MissingParam(p) => write!(f, "missing parameter {p}"),
        }
    }
}

impl core::error::Error for DomainError {}

/// A named family together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    B1 { n: u32 },
    B2 { n: u32 },
    B3 { n: u32 },
    P { n: u32 },
    PGt { n: u32 },
    Ds { k: u32 },
    Oe { k: u32 },
    O { n: u32, k: u32 },
    Do { n: u32, k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DomainElement {
    B1(B1Pair),
    B2(StaircasePair),
    B3(RunPair),
    Signed(SignedDistinctSet),
    Ds(Partition),
    Oe(OddPair),
    O(RectanglePair),
    Do(HookPair),
}

impl DomainElement {
    pub fn weight(&self) -> i64 {
        match self {
            DomainElement::B1(e) => e.weight() as i64,
            DomainElement::B2(e) => e.weight() as i64,
            DomainElement::B3(e) => e.weight(),
            DomainElement::Signed(e) => e.weight(),
            DomainElement::Ds(e) => e.weight() as i64,
            DomainElement::Oe(e) => e.weight() as i64,
            DomainElement::O(e) => e.weight() as i64,
            DomainElement::Do(e) => e.weight() as i64,
        }
    }
}

impl fmt::Display for DomainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainElement::B1(e) => write!(f, "lambda={} pi={}", e.lambda, e.pi),
            DomainElement::B2(e) => write!(f, "mu={} nu={}", e.mu(), e.nu),
            DomainElement::B3(e) => write!(f, "mu={} nu={}", e.mu(), e.nu),
            DomainElement::Signed(e) => write!(f, "{e}"),
            DomainElement::Ds(e) => write!(f, "{e}"),
            DomainElement::Oe(e) => write!(f, "mu=({}) nu={}", e.mu, e.nu),
            DomainElement::O(e) => write!(f, "lambda={} pi={}", e.rectangle(), e.pi),
            DomainElement::Do(e) => write!(f, "mu=({}) nu={}", e.mu, e.nu),
        }
    }
}

impl Domain {
    pub const NAMES: [&'static str; 9] = ["B1", "B2", "B3", "P", "P_gt", "DS", "OE", "O", "DO"];

    pub fn from_name(name: &str, params: &DomainParams) -> Result<Domain, DomainError> {
        let n = || params.n.ok_or(DomainError::MissingParam("n"));
        let k = || params.k.ok_or(DomainError::MissingParam("k"));
        Ok(match name {
            "B1" => Domain::B1 { n: n()? },
            "B2" => Domain::B2 { n: n()? },
            "B3" => Domain::B3 { n: n()? },
            "P" => Domain::P { n: n()? },
            "P_gt" => Domain::PGt { n: n()? },
            "DS" => Domain::Ds { k: k()? },
            "OE" => Domain::Oe { k: k()? },
            "O" => Domain::O { n: n()?, k: k()? },
            "DO" => Domain::Do { n: n()?, k: k()? },
            other => return Err(DomainError::UnknownDomain(String::from(other))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Domain::B1 { .. } => "B1",
            Domain::B2 { .. } => "B2",
            Domain::B3 { .. } => "B3",
            Domain::P { .. } => "P",
            Domain::PGt { .. } => "P_gt",
            Domain::Ds { .. } => "DS",
            Domain::Oe { .. } => "OE",
            Domain::O { .. } => "O",
            Domain::Do { .. } => "DO",
        }
    }

    /// Whether the family can be listed without a weight cap.
    pub fn is_finite(&self) -> bool {
        !matches!(self, Domain::Ds { .. } | Domain::Oe { .. })
    }

    /// Every element of the family once. The cap is required for DS and OE,
    /// optional for O and DO, and ignored for the rest.
    pub fn enumerate(&self, weight_cap: Option<u64>) -> Result<Vec<DomainElement>, DomainError> {
        let cap = || weight_cap.ok_or(DomainError::MissingParam("weight_cap"));
        Ok(match *self {
            Domain::B1 { n } => enumerate_b1(n).into_iter().map(DomainElement::B1).collect(),
            Domain::B2 { n } => enumerate_b2(n).into_iter().map(DomainElement::B2).collect(),
            Domain::B3 { n } => enumerate_b3(n).into_iter().map(DomainElement::B3).collect(),
            Domain::P { n } => enumerate_p(n).into_iter().map(DomainElement::Signed).collect(),
            Domain::PGt { n } => enumerate_p_gt(n).into_iter().map(DomainElement::Signed).collect(),
            Domain::Ds { k } => enumerate_ds(k, cap()?).into_iter().map(DomainElement::Ds).collect(),
            Domain::Oe { k } => enumerate_oe(k, cap()?).into_iter().map(DomainElement::Oe).collect(),
            Domain::O { n, k } => enumerate_o(n, k, weight_cap).into_iter().map(DomainElement::O).collect(),
            Domain::Do { n, k } => enumerate_do(n, k, weight_cap).into_iter().map(DomainElement::Do).collect(),
        })
    }

    pub fn validate(&self, e: &DomainElement) -> Result<(), Violation> {
        match (*self, e) {
            (Domain::B1 { n }, DomainElement::B1(x)) => x.validate(n),
            (Domain::B2 { n }, DomainElement::B2(x)) => x.validate(n),
            (Domain::B3 { n }, DomainElement::B3(x)) => x.validate(n),
            (Domain::P { n }, DomainElement::Signed(x)) => validate_p(n, x),
            (Domain::PGt { n }, DomainElement::Signed(x)) => validate_p_gt(n, x),
            (Domain::Ds { k }, DomainElement::Ds(x)) => validate_ds(k, x),
            (Domain::Oe { k }, DomainElement::Oe(x)) => x.validate(k),
            (Domain::O { n, k }, DomainElement::O(x)) => x.validate(n, k),
            (Domain::Do { n, k }, DomainElement::Do(x)) => x.validate(n, k),
            _ => Err(Violation("element has the wrong shape for this domain")),
        }
    }

    pub fn contains(&self, e: &DomainElement) -> bool {
        self.validate(e).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{qbinom, QSeries, EXACT};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn box_gf(a: u32, b: u32) -> QSeries {
        QSeries::from_terms(BoxPartitions::new(a, b).map(|p| (p.weight() as i64, 1)), EXACT)
    }

    #[test]
    fn box_examples() {
        let one: Vec<_> = BoxPartitions::new(1, 1).collect();
        assert_eq!(one, [Partition::empty(), p(&[1])]);
        let two: Vec<_> = BoxPartitions::new(2, 1).collect();
        assert_eq!(two.len(), 3);
        assert_eq!(box_gf(2, 1), qbinom(3, 1));
        assert_eq!(BoxPartitions::new(2, 2).count(), 6);
        assert_eq!(box_gf(2, 2), qbinom(4, 2));
        assert_eq!(BoxPartitions::new(0, 5).count(), 1);
        assert_eq!(BoxPartitions::new(5, 0).count(), 1);
    }

    #[test]
    fn box_gf_is_qbinom() {
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(box_gf(a, b), qbinom(i64::from(a + b), i64::from(b)), "box {a}x{b}");
            }
        }
    }

    #[test]
    fn signed_counts() {
        assert_eq!(enumerate_p(1).len(), 8);
        assert_eq!(enumerate_p_gt(1).len(), 4);
    }

    #[test]
    fn b1_small() {
        let b1 = enumerate_b1(1);
        assert_eq!(b1.len(), 4);
        let mut w: Vec<u64> = b1.iter().map(B1Pair::weight).collect();
        w.sort();
        assert_eq!(w, [0, 1, 1, 2]);
    }

    #[test]
    fn ds_examples() {
        assert!(validate_ds(1, &p(&[3])).is_ok());
        assert!(validate_ds(1, &p(&[3, 1, 1])).is_ok());
        assert!(validate_ds(1, &p(&[3, 1])).is_err());
        // Durfee size 2
        assert!(validate_ds(1, &p(&[3, 3])).is_err());
        assert!(enumerate_ds(1, 5).contains(&p(&[3, 1, 1])));
        // brute-force filter over all partitions with the right largest part
        for k in 0..4 {
            let top = 2 * k + 1;
            let mut brute: Vec<Partition> = bounded_partitions(20 - u64::from(top), top, usize::MAX, &|_| true)
                .into_iter()
                .filter_map(|rest| rest.with_top(top).ok())
                .filter(|l| validate_ds(k, l).is_ok())
                .collect();
            brute.sort();
            assert_eq!(enumerate_ds(k, 20), brute, "k={k}");
        }
    }

    #[test]
    fn enumerated_elements_validate_and_mutants_fail() {
        for n in 0..4 {
            for x in enumerate_b1(n) {
                assert!(x.validate(n).is_ok());
                let mut bad = x.clone();
                bad.pi = Partition::from_multiset([bad.pi.parts(), &[n + 1]].concat());
                assert!(bad.validate(n).is_err(), "{bad:?}");
            }
            for x in enumerate_b2(n) {
                assert!(x.validate(n).is_ok());
                let bad =
                    StaircasePair { t: x.t, nu: Partition::from_multiset([x.nu.parts(), &[n - x.t + 1]].concat()) };
                assert!(bad.validate(n).is_err());
            }
        }
        for k in 0..3 {
            for x in enumerate_oe(k, 15) {
                assert!(x.validate(k).is_ok());
                let bad = OddPair { mu: x.mu, nu: Partition::from_multiset([x.nu.parts(), &[1]].concat()) };
                assert!(bad.validate(k).is_err());
            }
        }
        for (n, k) in [(1, 2), (2, 1), (2, 2)] {
            for x in enumerate_o(n, k, None) {
                assert!(x.validate(n, k).is_ok());
                let bad = RectanglePair { n, pi: Partition::from_multiset([x.pi.parts(), &[1]].concat()) };
                assert!(bad.validate(n, k).is_err());
            }
            for x in enumerate_do(n, k, None) {
                assert!(x.validate(n, k).is_ok());
                let bad = HookPair { mu: x.mu + 1, nu: x.nu.clone() };
                assert!(bad.validate(n, k).is_err());
            }
        }
    }

    #[test]
    fn named_domains() {
        let d = Domain::from_name("P_gt", &DomainParams { n: Some(1), k: None }).unwrap();
        assert_eq!(d.enumerate(None).unwrap().len(), 4);
        assert_eq!(Domain::from_name("B7", &DomainParams::default()), Err(DomainError::UnknownDomain("B7".into())));
        assert_eq!(Domain::from_name("O", &DomainParams { n: Some(1), k: None }), Err(DomainError::MissingParam("k")));
        let ds = Domain::from_name("DS", &DomainParams { n: None, k: Some(0) }).unwrap();
        assert_eq!(ds.enumerate(None), Err(DomainError::MissingParam("weight_cap")));
        for e in ds.enumerate(Some(9)).unwrap() {
            assert!(ds.contains(&e));
        }
    }
}
