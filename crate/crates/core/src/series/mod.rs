//! Truncated Laurent series in `q` with exact integer coefficients.
//!
//! A [`QSeries`] stores its nonzero coefficients sparsely together with a
//! truncation order `trunc`: every coefficient at an exponent `< trunc` is
//! exact, nothing is claimed at or above it. Polynomials that are known in
//! full carry `trunc == EXACT`.

mod multi;
mod poch;

pub use multi::{AuxVar, Mismatch, Monomial, MultiSeries, Term};
pub use poch::{poch_finite, poch_infinite, poch_series, qbinom};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Truncation order of a series that is known exactly (a Laurent polynomial).
pub const EXACT: i64 = i64::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// The `q^0` part of a series to be inverted is not exactly `1`, or the
    /// series has negative `q` exponents.
    NonUnitConstantTerm,
    /// An infinite product or quotient whose factors do not tend to `1`
    /// `q`-adically.
    NonConvergent,
    /// Polynomial division left a remainder.
    DivisionInexact,
    /// The operation produces an infinite series but its input carries no
    /// finite truncation order.
    UnboundedTruncation,
    /// A negative power of an auxiliary variable was substituted by a
    /// non-invertible term.
    NonInvertibleSubstitution,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonUnitConstantTerm => f.write_str("series is not a unit: its q^0 part must be exactly 1"),
            SeriesError::NonConvergent => f.write_str("infinite product does not converge: factor has q-degree <= 0"),
            SeriesError::DivisionInexact => f.write_str("polynomial division is not exact"),
            SeriesError::UnboundedTruncation => f.write_str("result is an infinite series; truncate the input first"),
            SeriesError::NonInvertibleSubstitution => {
                f.write_str("cannot substitute a non-unit term into a negative power")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// Shift a truncation order by `by`, keeping `EXACT` fixed.
pub(crate) fn shift_trunc(trunc: i64, by: i64) -> i64 {
    if trunc == EXACT || by == EXACT {
        EXACT
    } else {
        trunc.saturating_add(by)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: BTreeMap<i64, BigInt>,
    trunc: i64,
}

impl Default for QSeries {
    fn default() -> Self {
        QSeries::zero()
    }
}

impl QSeries {
    /// The exact zero polynomial.
    pub fn zero() -> Self {
        QSeries { coeffs: BTreeMap::new(), trunc: EXACT }
    }

    /// Zero known only below `trunc`.
    pub fn zero_to(trunc: i64) -> Self {
        QSeries { coeffs: BTreeMap::new(), trunc }
    }

    pub fn one() -> Self {
        QSeries::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QSeries::monomial(c, 0)
    }

    /// `c * q^e`, exact.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        QSeries { coeffs, trunc: EXACT }
    }

    /// Collect `(exponent, coefficient)` pairs, summing repeats and dropping
    /// everything at or above `trunc`.
    pub fn from_terms<I, C>(terms: I, trunc: i64) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e >= trunc {
                continue;
            }
            *coeffs.entry(e).or_default() += c.into();
        }
        coeffs.retain(|_, c| !c.is_zero());
        QSeries { coeffs, trunc }
    }

    /// Exact polynomial with `coeffs[i]` at `q^i`.
    pub fn from_slice(coeffs: &[i64]) -> Self {
        QSeries::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i64, c)), EXACT)
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    /// True when no coefficient below `trunc` is nonzero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored (nonzero) coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lower bound on the exponent of any nonzero coefficient, counting the
    /// unknown tail: `min_exp`, or `trunc` for a series that is zero so far.
    pub fn valuation(&self) -> i64 {
        self.min_exp().unwrap_or(self.trunc)
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Forget everything at or above `t`.
    pub fn truncate(mut self, t: i64) -> Self {
        if t < self.trunc {
            self.trunc = t;
            let _ = self.coeffs.split_off(&t);
        }
        self
    }

    /// Multiply by `c * q^e`.
    pub fn mul_term(&self, c: &BigInt, e: i64) -> Self {
        if c.is_zero() {
            return QSeries::zero();
        }
        let coeffs = self.coeffs.iter().map(|(&k, v)| (k + e, v * c)).collect();
        QSeries { coeffs, trunc: shift_trunc(self.trunc, e) }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(c, 0)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = QSeries::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `q = 1`. Only meaningful for exact polynomials.
    pub fn eval_at_one(&self) -> Option<BigInt> {
        self.is_exact().then(|| self.coeffs.values().sum())
    }

    /// Multiplicative inverse of a series `1 + O(q)` up to its truncation order.
    pub fn invert_unit(&self) -> Result<QSeries, SeriesError> {
        if self.min_exp().is_some_and(|e| e < 0) || !self.coeff(0).is_one() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        if self.is_exact() {
            return if self.len() == 1 { Ok(self.clone()) } else { Err(SeriesError::UnboundedTruncation) };
        }
        let t = self.trunc.max(0) as usize;
        let a: Vec<BigInt> = (0..t as i64).map(|e| self.coeff(e)).collect();
        let mut b: Vec<BigInt> = vec![BigInt::zero(); t];
        if t > 0 {
            b[0] = BigInt::one();
        }
        for d in 1..t {
            let mut acc = BigInt::zero();
            for j in 1..=d {
                if !a[j].is_zero() && !b[d - j].is_zero() {
                    acc -= &a[j] * &b[d - j];
                }
            }
            b[d] = acc;
        }
        Ok(QSeries::from_terms(b.into_iter().enumerate().map(|(i, c)| (i as i64, c)), self.trunc))
    }

    /// Exact quotient of two exact Laurent polynomials.
    pub fn div_exact(&self, divisor: &QSeries) -> Result<QSeries, SeriesError> {
        if !self.is_exact() || !divisor.is_exact() {
            return Err(SeriesError::UnboundedTruncation);
        }
        let (Some(dlo), Some(dhi)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(SeriesError::DivisionInexact);
        };
        let (Some(nlo), Some(nhi)) = (self.min_exp(), self.max_exp()) else {
            return Ok(QSeries::zero());
        };
        if nhi - nlo < dhi - dlo {
            return Err(SeriesError::DivisionInexact);
        }
        let mut rem: Vec<BigInt> = (nlo..=nhi).map(|e| self.coeff(e)).collect();
        let den: Vec<BigInt> = (dlo..=dhi).map(|e| divisor.coeff(e)).collect();
        let lead = den.last().expect("nonempty divisor");
        let sparse: Vec<(usize, &BigInt)> = den.iter().enumerate().filter(|(_, d)| !d.is_zero()).collect();
        let qlen = rem.len() - den.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + den.len() - 1];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return Err(SeriesError::DivisionInexact);
            }
            let c = top / lead;
            for &(j, d) in &sparse {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::DivisionInexact);
        }
        let shift = nlo - dlo;
        Ok(QSeries::from_terms(quot.into_iter().enumerate().map(|(i, c)| (i as i64 + shift, c)), EXACT))
    }

    /// Lowest exponent below both truncation orders where `self` and `other`
    /// differ, with the two coefficients.
    pub fn first_difference(&self, other: &QSeries) -> Option<(i64, BigInt, BigInt)> {
        let t = self.trunc.min(other.trunc);
        let keys: alloc::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().filter(|&e| e < t).collect();
        keys.into_iter().find_map(|e| {
            let (a, b) = (self.coeff(e), other.coeff(e));
            (a != b).then_some((e, a, b))
        })
    }

    fn add_impl(&self, other: &QSeries, negate: bool) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut coeffs = self.coeffs.clone();
        let _ = coeffs.split_off(&trunc);
        for (&e, c) in other.coeffs.range(..trunc) {
            let slot = coeffs.entry(e).or_default();
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        QSeries { coeffs, trunc }
    }

    fn mul_impl(&self, other: &QSeries) -> QSeries {
        let trunc = shift_trunc(self.trunc, other.valuation()).min(shift_trunc(other.trunc, self.valuation()));
        let (Some(alo), Some(ahi), Some(blo), Some(bhi)) =
            (self.min_exp(), self.max_exp(), other.min_exp(), other.max_exp())
        else {
            return QSeries::zero_to(trunc);
        };
        let lo = alo + blo;
        let hi = (ahi + bhi + 1).min(trunc);
        if hi <= lo {
            return QSeries::zero_to(trunc);
        }
        let mut dense = vec![BigInt::zero(); (hi - lo) as usize];
        for (&ea, ca) in &self.coeffs {
            if ea + blo >= hi {
                break;
            }
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if e >= hi {
                    break;
                }
                dense[(e - lo) as usize] += ca * cb;
            }
        }
        QSeries::from_terms(dense.into_iter().enumerate().map(|(i, c)| (i as i64 + lo, c)), trunc)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.add_impl(rhs, false)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.add_impl(rhs, true)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.mul_impl(rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(), trunc: self.trunc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

/// Formats one `c * <var>` term for [`fmt::Display`] impls.
pub(crate) fn write_term(out: &mut String, first: bool, c: &BigInt, var_part: &str) -> fmt::Result {
    use core::fmt::Write;
    let neg = c.is_negative();
    let mag = c.abs();
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if var_part.is_empty() {
        write!(out, "{mag}")
    } else if mag.is_one() {
        out.push_str(var_part);
        Ok(())
    } else {
        write!(out, "{mag}*{var_part}")
    }
}

pub(crate) fn q_power_str(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => String::from("q"),
        _ => alloc::format!("q^{e}"),
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            write_term(&mut out, i == 0, c, &q_power_str(e))?;
        }
        if !self.is_exact() {
            let tail =
                alloc::format!("O({})", if self.trunc == 1 { String::from("q") } else { q_power_str(self.trunc) });
            if out.is_empty() {
                out = tail;
            } else {
                out.push_str(" + ");
                out.push_str(&tail);
            }
        } else if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> QSeries {
        QSeries::from_slice(c)
    }

    #[test]
    fn cancellation_and_identity() {
        assert_eq!(&s(&[1, -1]) + &s(&[0, 1]), QSeries::one());
        let a = s(&[3, 0, -2]);
        assert_eq!(&QSeries::zero() + &a, a);
    }

    #[test]
    fn add_takes_min_trunc() {
        let a = s(&[1, -1]).truncate(10);
        let b = s(&[0, 0, 1]).truncate(5);
        let sum = &a + &b;
        assert_eq!(sum.trunc(), 5);
        assert_eq!(sum, s(&[1, -1, 1]).truncate(5));
    }

    #[test]
    fn products() {
        assert_eq!(&s(&[1, -1]) * &s(&[1, 1]), s(&[1, 0, -1]));
        assert_eq!(&s(&[1, -1]) * &s(&[1, 0, -1]), s(&[1, -1, -1, 1]));
    }

    #[test]
    fn mul_trunc_is_shifted_by_valuation() {
        // (q^2 + O(q^5)) * (q^3 + O(q^10)) is exact below min(5+3, 10+2) = 8
        let a = QSeries::monomial(1, 2).truncate(5);
        let b = QSeries::monomial(1, 3).truncate(10);
        assert_eq!((&a * &b).trunc(), 8);
        // Laurent valuation lowers the bound
        let c = QSeries::monomial(1, -2);
        assert_eq!((&a * &c).trunc(), 3);
    }

    #[test]
    fn geometric_inverse() {
        let inv = s(&[1, -1]).truncate(8).invert_unit().unwrap();
        assert_eq!(inv, s(&[1; 8]).truncate(8));
        assert_eq!(QSeries::one().truncate(4).invert_unit().unwrap(), QSeries::one().truncate(4));
    }

    #[test]
    fn invert_rejects_non_units() {
        assert_eq!(s(&[2, 1]).truncate(5).invert_unit(), Err(SeriesError::NonUnitConstantTerm));
        assert_eq!(s(&[0, 1]).truncate(5).invert_unit(), Err(SeriesError::NonUnitConstantTerm));
        assert_eq!(s(&[1, 1]).invert_unit(), Err(SeriesError::UnboundedTruncation));
    }

    #[test]
    fn exact_division() {
        let num = s(&[1, -1, -1, 1]);
        assert_eq!(num.div_exact(&s(&[1, -1])).unwrap(), s(&[1, 0, -1]));
        assert_eq!(s(&[1, 1, 1]).div_exact(&s(&[1, -1])), Err(SeriesError::DivisionInexact));
        // Laurent shift
        let lq = QSeries::monomial(1, -3);
        assert_eq!(QSeries::one().div_exact(&lq).unwrap(), QSeries::monomial(1, 3));
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", s(&[1, -1, 0, 2])), "1 - q + 2*q^3");
        assert_eq!(alloc::format!("{}", s(&[1, 1]).truncate(4)), "1 + q + O(q^4)");
        assert_eq!(alloc::format!("{}", QSeries::zero()), "0");
    }

    #[test]
    fn first_difference_respects_trunc() {
        let a = s(&[1, 2, 3]);
        let b = s(&[1, 2, 4]).truncate(2);
        assert_eq!(a.first_difference(&b), None);
        assert_eq!(a.first_difference(&s(&[1, 3])), Some((1, BigInt::from(2), BigInt::from(3))));
    }
}
