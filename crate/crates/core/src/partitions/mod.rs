//! Partitions, distinct partitions and signed distinct sets.
//!
//! Ordinary and distinct partitions store their parts in decreasing order.
//! [`SignedDistinctSet`] stores its elements in increasing order, matching
//! how subsets of `{-n, ..., n}` are indexed by the maps that consume them.

mod domains;

pub(crate) use domains::bounded_partitions;

pub use domains::{
    enumerate_b1, enumerate_b2, enumerate_b3, enumerate_do, enumerate_ds, enumerate_o, enumerate_oe, enumerate_p,
    enumerate_p_gt, validate_ds, validate_p, validate_p_gt, B1Pair, BoxPartitions, Domain, DomainElement, DomainError,
    DomainParams, HookPair, OddPair, RectanglePair, RunPair, StaircasePair, Violation,
};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionError {
    ZeroPart,
    NotDecreasing,
    NotDistinct,
    OutOfRange { element: i64, bound: u32 },
    NotSelfConjugate,
    NotDistinctOdd,
    Syntax(String),
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::ZeroPart => f.write_str("partition parts must be positive"),
            PartitionError::NotDecreasing => f.write_str("partition parts must be weakly decreasing"),
            PartitionError::NotDistinct => f.write_str("parts must be distinct"),
            PartitionError::OutOfRange { element, bound } => {
                write!(f, "element {element} outside [-{bound}, {bound}]")
            }
            PartitionError::NotSelfConjugate => f.write_str("partition is not self-conjugate"),
            PartitionError::NotDistinctOdd => f.write_str("parts must be distinct and odd"),
            PartitionError::Syntax(msg) => write!(f, "syntax error: {msg}"),
        }
    }
}

impl core::error::Error for PartitionError {}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing);
        }
        Ok(Partition(parts))
    }

    /// Sort decreasingly and drop zero parts.
    pub fn from_multiset(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Part `i`, 1-indexed, or `0` past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let Some(largest) = self.largest() else {
            return Partition::empty();
        };
        let parts = (1..=largest).map(|c| self.0.iter().take_while(|&&p| p >= c).count() as u32).collect();
        Partition(parts)
    }

    /// Side of the largest square fitting in the Ferrers diagram.
    pub fn durfee_size(&self) -> u32 {
        self.0.iter().enumerate().take_while(|&(i, &p)| p as usize > i).count() as u32
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn is_distinct(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn all_odd(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 1)
    }

    /// Every distinct part occurs an even number of times.
    pub fn even_multiplicities(&self) -> bool {
        let mut i = 0;
        while i < self.0.len() {
            let run = self.0[i..].iter().take_while(|&&p| p == self.0[i]).count();
            if run % 2 == 1 {
                return false;
            }
            i += run;
        }
        true
    }

    /// Attach `part` as a new top row.
    pub fn with_top(&self, part: u32) -> Result<Partition, PartitionError> {
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(part);
        parts.extend_from_slice(&self.0);
        Partition::new(parts)
    }

    /// Split off the top row.
    pub fn split_top(&self) -> Option<(u32, Partition)> {
        let (&first, rest) = self.0.split_first()?;
        Some((first, Partition(rest.to_vec())))
    }
}

/// Strictly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistinctPartition(Vec<u32>);

impl DistinctPartition {
    pub fn new(parts: Vec<u32>) -> Result<DistinctPartition, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(PartitionError::NotDistinct);
        }
        Ok(DistinctPartition(parts))
    }

    pub fn empty() -> DistinctPartition {
        DistinctPartition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn as_partition(&self) -> Partition {
        Partition(self.0.clone())
    }
}

impl TryFrom<Partition> for DistinctPartition {
    type Error = PartitionError;
    fn try_from(p: Partition) -> Result<Self, Self::Error> {
        DistinctPartition::new(p.0)
    }
}

/// A subset of `{-n, ..., n}`, kept in increasing order. Its weight is the
/// sum of its elements and may be negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedDistinctSet {
    n: u32,
    elements: Vec<i32>,
}

impl SignedDistinctSet {
    /// Accepts the elements in any order; rejects repeats and elements
    /// outside `[-n, n]`.
    pub fn new(n: u32, mut elements: Vec<i32>) -> Result<SignedDistinctSet, PartitionError> {
        if let Some(&e) = elements.iter().find(|e| e.unsigned_abs() > n) {
            return Err(PartitionError::OutOfRange { element: i64::from(e), bound: n });
        }
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(PartitionError::NotDistinct);
        }
        Ok(SignedDistinctSet { n, elements })
    }

    /// Subset selected by bit `i` of `mask` standing for element `i - n`.
    pub fn from_mask(n: u32, mask: u64) -> SignedDistinctSet {
        let elements = (0..=2 * n).filter(|i| mask >> i & 1 == 1).map(|i| i as i32 - n as i32).collect();
        SignedDistinctSet { n, elements }
    }

    /// The whole of `{-n, ..., n}`.
    pub fn full(n: u32) -> SignedDistinctSet {
        SignedDistinctSet { n, elements: (-(n as i32)..=n as i32).collect() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn elements(&self) -> &[i32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: i32) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn weight(&self) -> i64 {
        self.elements.iter().map(|&e| i64::from(e)).sum()
    }

    /// `{-e : e in self}`.
    pub fn negate(&self) -> SignedDistinctSet {
        SignedDistinctSet { n: self.n, elements: self.elements.iter().rev().map(|e| -e).collect() }
    }

    /// `outer \ self`; `None` unless `self` is a subset of `outer`.
    pub fn complement_within(&self, outer: &SignedDistinctSet) -> Option<SignedDistinctSet> {
        if !self.elements.iter().all(|&e| outer.contains(e)) {
            return None;
        }
        let elements = outer.elements.iter().copied().filter(|&e| !self.contains(e)).collect();
        Some(SignedDistinctSet { n: self.n.max(outer.n), elements })
    }

    /// Complement in `{-n, ..., n}`.
    pub fn complement(&self) -> SignedDistinctSet {
        self.complement_within(&SignedDistinctSet::full(self.n)).expect("subset of the full set")
    }
}

/// Principal-hook map from a self-conjugate partition to distinct odd parts:
/// hook `i` becomes the part `2(p_i - i) + 1` for `i` up to the Durfee size.
pub fn selfconj_to_distinct_odd(p: &Partition) -> Result<DistinctPartition, PartitionError> {
    if !p.is_self_conjugate() {
        return Err(PartitionError::NotSelfConjugate);
    }
    let d = p.durfee_size() as usize;
    let parts = (1..=d).map(|i| 2 * (p.part(i) - i as u32) + 1).collect();
    Ok(DistinctPartition(parts))
}

/// Inverse of [`selfconj_to_distinct_odd`]: fold each odd part back into a
/// principal hook.
pub fn distinct_odd_to_selfconj(d: &DistinctPartition) -> Result<Partition, PartitionError> {
    if !d.parts().iter().all(|p| p % 2 == 1) {
        return Err(PartitionError::NotDistinctOdd);
    }
    let top: Vec<u32> = d.parts().iter().enumerate().map(|(i, &h)| (h - 1) / 2 + i as u32 + 1).collect();
    let size = top.len() as u32;
    let mut parts = top.clone();
    // rows below the Durfee square are columns of the top rows
    let mut r = size + 1;
    loop {
        let len = top.iter().filter(|&&p| p >= r).count() as u32;
        if len == 0 {
            break;
        }
        parts.push(len);
        r += 1;
    }
    Partition::new(parts)
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, open: char, close: char, xs: &[T]) -> fmt::Result {
    write!(f, "{open}")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "{close}")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, '(', ')', &self.0)
    }
}

impl fmt::Display for DistinctPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, '(', ')', &self.0)
    }
}

impl fmt::Display for SignedDistinctSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, '{', '}', &self.elements)
    }
}

fn parse_list<T: FromStr>(s: &str, open: char, close: char) -> Result<Vec<T>, PartitionError> {
    let inner = s
        .trim()
        .strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| PartitionError::Syntax(alloc::format!("expected {open}...{close}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| PartitionError::Syntax(alloc::format!("bad entry {:?}", x.trim()))))
        .collect()
}

/// Parses `(5,3,3)`; the empty partition is `()`.
impl FromStr for Partition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Partition::new(parse_list(s, '(', ')')?)
    }
}

impl FromStr for DistinctPartition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DistinctPartition::new(parse_list(s, '(', ')')?)
    }
}

/// Parses `{-4,-2,0,5}` given the bound `n` separately.
pub fn parse_signed_set(n: u32, s: &str) -> Result<SignedDistinctSet, PartitionError> {
    SignedDistinctSet::new(n, parse_list(s, '{', '}')?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(Partition::new(vec![1, 2]), Err(PartitionError::NotDecreasing));
        assert_eq!(Partition::new(vec![2, 0]), Err(PartitionError::ZeroPart));
        assert_eq!(DistinctPartition::new(vec![2, 2]), Err(PartitionError::NotDistinct));
        assert_eq!(Partition::from_multiset(vec![1, 0, 3, 1]), p(&[3, 1, 1]));
        assert!(matches!(SignedDistinctSet::new(2, vec![3]), Err(PartitionError::OutOfRange { .. })));
        assert_eq!(SignedDistinctSet::new(2, vec![1, 1]), Err(PartitionError::NotDistinct));
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[4, 4, 2]).conjugate(), p(&[3, 3, 2, 2]));
    }

    #[test]
    fn durfee() {
        assert_eq!(p(&[3, 2, 1]).durfee_size(), 2);
        assert_eq!(Partition::empty().durfee_size(), 0);
        assert_eq!(p(&[1, 1, 1, 1]).durfee_size(), 1);
        assert_eq!(p(&[5, 5, 5, 1]).durfee_size(), 3);
    }

    #[test]
    fn hook_map_examples() {
        assert_eq!(selfconj_to_distinct_odd(&p(&[3, 2, 1])).unwrap().parts(), &[5, 1]);
        assert!(selfconj_to_distinct_odd(&Partition::empty()).unwrap().is_empty());
        assert_eq!(selfconj_to_distinct_odd(&p(&[1])).unwrap().parts(), &[1]);
        assert_eq!(selfconj_to_distinct_odd(&p(&[2])), Err(PartitionError::NotSelfConjugate));
        let d = DistinctPartition::new(vec![5, 1]).unwrap();
        assert_eq!(distinct_odd_to_selfconj(&d).unwrap(), p(&[3, 2, 1]));
        let bad = DistinctPartition::new(vec![4, 1]).unwrap();
        assert_eq!(distinct_odd_to_selfconj(&bad), Err(PartitionError::NotDistinctOdd));
    }

    #[test]
    fn multiplicity_checks() {
        assert!(p(&[3, 3, 1, 1]).even_multiplicities());
        assert!(!p(&[3, 3, 1]).even_multiplicities());
        assert!(Partition::empty().even_multiplicities());
    }

    #[test]
    fn signed_set_ops() {
        let s = SignedDistinctSet::new(3, vec![2, -1]).unwrap();
        assert_eq!(s.elements(), &[-1, 2]);
        assert_eq!(s.weight(), 1);
        assert_eq!(s.negate().elements(), &[-2, 1]);
        assert_eq!(s.complement().elements(), &[-3, -2, 0, 1, 3]);
        let outer = SignedDistinctSet::new(3, vec![-1, 0, 2]).unwrap();
        assert_eq!(s.complement_within(&outer).unwrap().elements(), &[0]);
        assert!(outer.complement_within(&s).is_none());
        assert_eq!(SignedDistinctSet::from_mask(1, 0b101).elements(), &[-1, 1]);
    }

    #[test]
    fn parse_and_display() {
        let q: Partition = "(5, 3,3)".parse().unwrap();
        assert_eq!(q, p(&[5, 3, 3]));
        assert_eq!(alloc::format!("{q}"), "(5,3,3)");
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(1,2)".parse::<Partition>().is_err());
        assert!("5,3".parse::<Partition>().is_err());
        let s = parse_signed_set(5, "{-4,-2,-1,0,2,4,5}").unwrap();
        assert_eq!(alloc::format!("{s}"), "{-4,-2,-1,0,2,4,5}");
    }
}
