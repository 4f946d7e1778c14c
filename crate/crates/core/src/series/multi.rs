use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{q_power_str, shift_trunc, write_term, QSeries, SeriesError, EXACT};

/// The auxiliary variables a [`MultiSeries`] may carry besides `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuxVar {
    Z,
    X,
    Y,
}

impl AuxVar {
    pub const ALL: [AuxVar; 3] = [AuxVar::Z, AuxVar::X, AuxVar::Y];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            AuxVar::Z => "z",
            AuxVar::X => "x",
            AuxVar::Y => "y",
        }
    }

    pub fn from_name(name: &str) -> Option<AuxVar> {
        AuxVar::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// A Laurent monomial `z^a x^b y^c` in the auxiliary variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([i32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 3]);

    pub fn var(v: AuxVar) -> Monomial {
        Monomial::ONE.with(v, 1)
    }

    pub fn new(z: i32, x: i32, y: i32) -> Monomial {
        Monomial([z, x, y])
    }

    pub fn exponent(&self, v: AuxVar) -> i32 {
        self.0[v.index()]
    }

    pub fn with(mut self, v: AuxVar, e: i32) -> Monomial {
        self.0[v.index()] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.map(|e| e * k))
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in AuxVar::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

/// `coeff * aux * q^q_exp`, the shape of a Pochhammer base such as `-z q^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub aux: Monomial,
    pub q_exp: i64,
}

impl Term {
    pub fn new(coeff: i64, aux: Monomial, q_exp: i64) -> Term {
        Term { coeff, aux, q_exp }
    }

    /// `q^e`.
    pub fn q(e: i64) -> Term {
        Term::new(1, Monomial::ONE, e)
    }

    /// Multiply by `q^e`.
    pub fn shift(self, e: i64) -> Term {
        Term { q_exp: self.q_exp + e, ..self }
    }
}

impl Neg for Term {
    type Output = Term;
    fn neg(self) -> Term {
        Term { coeff: -self.coeff, ..self }
    }
}

/// First disagreement between two series, ordered by `q` exponent then
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub monomial: Monomial,
    pub exponent: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// A finite sum `Σ m · s_m(q)` over auxiliary monomials `m`, all sharing one
/// `q`-truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    entries: BTreeMap<Monomial, QSeries>,
    trunc: i64,
}

impl Default for MultiSeries {
    fn default() -> Self {
        MultiSeries::zero()
    }
}

impl From<QSeries> for MultiSeries {
    fn from(s: QSeries) -> Self {
        MultiSeries::monomial(Monomial::ONE, s)
    }
}

impl From<Term> for MultiSeries {
    fn from(t: Term) -> Self {
        MultiSeries::monomial(t.aux, QSeries::monomial(t.coeff, t.q_exp))
    }
}

impl MultiSeries {
    pub fn zero() -> Self {
        MultiSeries { entries: BTreeMap::new(), trunc: EXACT }
    }

    pub fn zero_to(trunc: i64) -> Self {
        MultiSeries { entries: BTreeMap::new(), trunc }
    }

    pub fn one() -> Self {
        MultiSeries::from(QSeries::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiSeries::from(QSeries::constant(c))
    }

    /// `aux · s`.
    pub fn monomial(aux: Monomial, s: QSeries) -> Self {
        let trunc = s.trunc();
        MultiSeries::from_entries([(aux, s)], trunc)
    }

    /// Build from `(monomial, series)` pairs, summing repeats and truncating
    /// everything to `trunc`.
    pub fn from_entries<I>(entries: I, trunc: i64) -> Self
    where
        I: IntoIterator<Item = (Monomial, QSeries)>,
    {
        let mut map: BTreeMap<Monomial, QSeries> = BTreeMap::new();
        for (m, s) in entries {
            let s = s.truncate(trunc);
            match map.remove(&m) {
                Some(prev) => {
                    map.insert(m, &prev + &s);
                }
                None => {
                    map.insert(m, s);
                }
            }
        }
        Self::normalized(map, trunc)
    }

    fn normalized(entries: BTreeMap<Monomial, QSeries>, trunc: i64) -> Self {
        let trunc = entries.values().map(QSeries::trunc).fold(trunc, i64::min);
        let entries = entries.into_iter().map(|(m, s)| (m, s.truncate(trunc))).filter(|(_, s)| !s.is_zero()).collect();
        MultiSeries { entries, trunc }
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &QSeries)> + '_ {
        self.entries.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.entries.keys().copied()
    }

    /// The `q`-series multiplying `aux`.
    pub fn coefficient(&self, aux: Monomial) -> QSeries {
        self.entries.get(&aux).cloned().unwrap_or_else(|| QSeries::zero_to(self.trunc))
    }

    pub fn coeff(&self, aux: Monomial, e: i64) -> BigInt {
        self.entries.get(&aux).map(|s| s.coeff(e)).unwrap_or_default()
    }

    /// Total number of stored nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.entries.values().map(QSeries::len).sum()
    }

    /// The plain `q`-series, if no auxiliary variable occurs.
    pub fn as_qseries(&self) -> Option<QSeries> {
        if self.entries.keys().all(Monomial::is_one) {
            Some(self.coefficient(Monomial::ONE))
        } else {
            None
        }
    }

    /// If the series is a single term `c · m · q^e`, return it.
    pub fn as_term(&self) -> Option<Term> {
        if self.entries.len() != 1 {
            return None;
        }
        let (m, s) = self.entries.iter().next()?;
        if s.len() != 1 {
            return None;
        }
        let (e, c) = s.iter().next()?;
        Some(Term::new(i64::try_from(c).ok()?, *m, e))
    }

    pub fn has_negative_aux(&self) -> bool {
        self.entries.keys().any(Monomial::has_negative)
    }

    /// Lowest `q` exponent that may carry a nonzero coefficient.
    pub fn valuation(&self) -> i64 {
        self.entries.values().map(QSeries::valuation).min().unwrap_or(self.trunc)
    }

    pub fn truncate(self, t: i64) -> Self {
        if t >= self.trunc {
            return self;
        }
        Self::normalized(self.entries, t)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return MultiSeries::zero();
        }
        let entries = self.entries.iter().map(|(m, s)| (*m, s.scale(c))).collect();
        MultiSeries { entries, trunc: self.trunc }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, t: &Term) -> Self {
        if t.coeff == 0 {
            return MultiSeries::zero();
        }
        let c = BigInt::from(t.coeff);
        let entries = self.entries.iter().map(|(m, s)| (*m * t.aux, s.mul_term(&c, t.q_exp))).collect();
        MultiSeries { entries, trunc: shift_trunc(self.trunc, t.q_exp) }
    }

    /// `self · (1 - t)`.
    pub fn mul_one_minus(&self, t: &Term) -> Self {
        self - &self.mul_term(t)
    }

    /// `self / (1 - t)` for a term of positive `q`-degree, expanded as the
    /// geometric series `Σ t^j` up to the truncation order.
    pub fn div_one_minus(&self, t: &Term) -> Result<Self, SeriesError> {
        if t.q_exp <= 0 {
            return Err(SeriesError::NonConvergent);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_exact() {
            return Err(SeriesError::UnboundedTruncation);
        }
        let mut acc = self.clone();
        let mut cur = self.clone();
        loop {
            cur = cur.mul_term(t).truncate(self.trunc);
            if cur.is_zero() {
                break;
            }
            acc = &acc + &cur;
        }
        Ok(acc)
    }

    /// Integer power; negative exponents invert a single term directly and
    /// anything else through [`MultiSeries::invert_unit`].
    pub fn pow(&self, k: i64) -> Result<Self, SeriesError> {
        if k < 0 {
            let inv = match self.as_term() {
                Some(t) if t.coeff == 1 || t.coeff == -1 => {
                    MultiSeries::from(Term::new(t.coeff, t.aux.inverse(), -t.q_exp))
                        .truncate(shift_trunc(self.trunc, -2 * t.q_exp))
                }
                _ => self.invert_unit()?,
            };
            return inv.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = MultiSeries::one();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Inverse of a series whose `q^0` part is exactly `1` and whose other
    /// terms all have positive `q`-degree, up to the truncation order.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let unit = self.entries.iter().all(|(m, s)| {
            if m.is_one() {
                s.min_exp().is_some_and(|e| e >= 0) && s.coeff(0).is_one()
            } else {
                s.valuation() >= 1
            }
        }) && self.entries.contains_key(&Monomial::ONE);
        if !unit {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        if self.is_exact() {
            return if *self == MultiSeries::one() { Ok(self.clone()) } else { Err(SeriesError::UnboundedTruncation) };
        }
        let t = self.trunc.max(0) as usize;
        // q-major slices of h = self - 1
        let mut h: Vec<BTreeMap<Monomial, BigInt>> = (0..t).map(|_| BTreeMap::new()).collect();
        for (m, s) in &self.entries {
            for (e, c) in s.iter() {
                if e >= 1 {
                    h[e as usize].insert(*m, c.clone());
                }
            }
        }
        let mut b: Vec<BTreeMap<Monomial, BigInt>> = Vec::with_capacity(t);
        for d in 0..t {
            let mut slice: BTreeMap<Monomial, BigInt> = BTreeMap::new();
            if d == 0 {
                slice.insert(Monomial::ONE, BigInt::one());
            }
            for j in 1..=d {
                if h[j].is_empty() || b[d - j].is_empty() {
                    continue;
                }
                for (m1, c1) in &h[j] {
                    for (m2, c2) in &b[d - j] {
                        *slice.entry(*m1 * *m2).or_default() -= c1 * c2;
                    }
                }
            }
            slice.retain(|_, c| !c.is_zero());
            b.push(slice);
        }
        let mut per_mono: BTreeMap<Monomial, Vec<(i64, BigInt)>> = BTreeMap::new();
        for (d, slice) in b.into_iter().enumerate() {
            for (m, c) in slice {
                per_mono.entry(m).or_default().push((d as i64, c));
            }
        }
        let entries = per_mono.into_iter().map(|(m, terms)| (m, QSeries::from_terms(terms, self.trunc))).collect();
        Ok(Self::normalized(entries, self.trunc))
    }

    /// Replace `var` by the term `repl`. A substitution that moves `q`
    /// exponents needs an exact input, since the unknown tail of a truncated
    /// series could otherwise move below its truncation order.
    pub fn substitute(&self, var: AuxVar, repl: &Term) -> Result<Self, SeriesError> {
        if repl.q_exp != 0 && !self.is_exact() {
            return Err(SeriesError::UnboundedTruncation);
        }
        let mut out: Vec<(Monomial, QSeries)> = Vec::with_capacity(self.entries.len());
        for (m, s) in &self.entries {
            let e = m.exponent(var);
            if e < 0 && repl.coeff.abs() != 1 {
                return Err(SeriesError::NonInvertibleSubstitution);
            }
            let c =
                if e >= 0 { BigInt::from(repl.coeff).pow(e as u32) } else { BigInt::from(repl.coeff).pow((-e) as u32) };
            let aux = m.with(var, 0) * repl.aux.pow(e);
            out.push((aux, s.mul_term(&c, repl.q_exp * e as i64)));
        }
        Ok(MultiSeries::from_entries(out, self.trunc))
    }

    /// First coefficient below both truncation orders where the two series
    /// differ.
    pub fn first_mismatch(&self, other: &MultiSeries) -> Option<Mismatch> {
        let t = self.trunc.min(other.trunc);
        let mut keys: BTreeSet<(i64, Monomial)> = BTreeSet::new();
        for src in [self, other] {
            for (m, s) in &src.entries {
                keys.extend(s.iter().map(|(e, _)| e).filter(|&e| e < t).map(|e| (e, *m)));
            }
        }
        keys.into_iter().find_map(|(e, m)| {
            let (lhs, rhs) = (self.coeff(m, e), other.coeff(m, e));
            (lhs != rhs).then_some(Mismatch { monomial: m, exponent: e, lhs, rhs })
        })
    }

    fn add_impl(&self, other: &MultiSeries, negate: bool) -> MultiSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut entries = self.entries.clone();
        for (m, s) in &other.entries {
            let next = match entries.get(m) {
                Some(prev) if negate => prev - s,
                Some(prev) => prev + s,
                None if negate => -s,
                None => s.clone(),
            };
            entries.insert(*m, next);
        }
        Self::normalized(entries, trunc)
    }

    fn mul_impl(&self, other: &MultiSeries) -> MultiSeries {
        let trunc = shift_trunc(self.trunc, other.valuation()).min(shift_trunc(other.trunc, self.valuation()));
        let mut entries: BTreeMap<Monomial, QSeries> = BTreeMap::new();
        for (ma, sa) in &self.entries {
            for (mb, sb) in &other.entries {
                let prod = (sa * sb).truncate(trunc);
                if prod.is_zero() {
                    continue;
                }
                let m = *ma * *mb;
                let next = match entries.remove(&m) {
                    Some(prev) => &prev + &prod,
                    None => prod,
                };
                entries.insert(m, next);
            }
        }
        Self::normalized(entries, trunc)
    }
}

impl Add for &MultiSeries {
    type Output = MultiSeries;
    fn add(self, rhs: &MultiSeries) -> MultiSeries {
        self.add_impl(rhs, false)
    }
}

impl Sub for &MultiSeries {
    type Output = MultiSeries;
    fn sub(self, rhs: &MultiSeries) -> MultiSeries {
        self.add_impl(rhs, true)
    }
}

impl Mul for &MultiSeries {
    type Output = MultiSeries;
    fn mul(self, rhs: &MultiSeries) -> MultiSeries {
        self.mul_impl(rhs)
    }
}

impl Neg for &MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        MultiSeries { entries: self.entries.iter().map(|(m, s)| (*m, -s)).collect(), trunc: self.trunc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiSeries {
            type Output = MultiSeries;
            fn $m(self, rhs: MultiSeries) -> MultiSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        -&self
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, Monomial, &BigInt)> = Vec::new();
        for (m, s) in &self.entries {
            terms.extend(s.iter().map(|(e, c)| (e, *m, c)));
        }
        terms.sort_by_key(|&(e, m, _)| (e, m));
        let mut out = String::new();
        for (i, (e, m, c)) in terms.iter().enumerate() {
            let var = match (m.is_one(), *e == 0) {
                (true, _) => q_power_str(*e),
                (false, true) => alloc::format!("{m}"),
                (false, false) => alloc::format!("{m}*{}", q_power_str(*e)),
            };
            write_term(&mut out, i == 0, c, &var)?;
        }
        if !self.is_exact() {
            let tail =
                if self.trunc == 1 { String::from("O(q)") } else { alloc::format!("O({})", q_power_str(self.trunc)) };
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&tail);
        } else if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Monomial {
        Monomial::var(AuxVar::Z)
    }

    fn poly(c: &[i64]) -> MultiSeries {
        MultiSeries::from(QSeries::from_slice(c))
    }

    #[test]
    fn aux_exponents_add() {
        let a = MultiSeries::monomial(z(), QSeries::from_slice(&[1, -1]));
        let b = MultiSeries::monomial(z(), QSeries::from_slice(&[1, 1]));
        let p = &a * &b;
        assert_eq!(p, MultiSeries::monomial(z().pow(2), QSeries::from_slice(&[1, 0, -1])));
    }

    #[test]
    fn invert_geometric() {
        let a = poly(&[1, -1]).truncate(6);
        assert_eq!(a.invert_unit().unwrap(), poly(&[1; 6]).truncate(6));
        assert_eq!(MultiSeries::one().invert_unit().unwrap(), MultiSeries::one());
    }

    #[test]
    fn invert_bivariate_matches_div_one_minus() {
        // 1 / (1 - z q) both ways
        let t = Term::new(1, z(), 1);
        let direct = MultiSeries::one().truncate(12).div_one_minus(&t).unwrap();
        let inv = MultiSeries::one().truncate(12).mul_one_minus(&t).invert_unit().unwrap();
        assert_eq!(direct, inv);
        assert_eq!(direct.coeff(z().pow(5), 5), BigInt::from(1));
    }

    #[test]
    fn invert_rejects_aux_constant() {
        // 1 - z has a z-term at q^0
        let a = &MultiSeries::one().truncate(5) - &MultiSeries::monomial(z(), QSeries::one());
        assert_eq!(a.invert_unit(), Err(SeriesError::NonUnitConstantTerm));
        assert_eq!(poly(&[3, 1]).truncate(5).invert_unit(), Err(SeriesError::NonUnitConstantTerm));
    }

    #[test]
    fn negative_power_of_monomial() {
        let zi = MultiSeries::from(Term::new(1, z(), 0)).pow(-1).unwrap();
        assert_eq!(zi, MultiSeries::from(Term::new(1, z().inverse(), 0)));
        let qz = MultiSeries::from(Term::new(-1, z(), 2)).pow(-2).unwrap();
        assert_eq!(qz, MultiSeries::from(Term::new(1, z().pow(-2), -4)));
    }

    #[test]
    fn substitution() {
        // (z q + z^-1 q^3) with z -> -q^2
        let s = &MultiSeries::from(Term::new(1, z(), 1)) + &MultiSeries::from(Term::new(1, z().inverse(), 3));
        let r = s.substitute(AuxVar::Z, &Term::new(-1, Monomial::ONE, 2)).unwrap();
        assert_eq!(r, poly(&[0, -1, 0, -1]));
        assert_eq!(s.clone().truncate(10).substitute(AuxVar::Z, &Term::q(1)), Err(SeriesError::UnboundedTruncation));
        assert_eq!(
            s.substitute(AuxVar::Z, &Term::new(2, Monomial::ONE, 0)),
            Err(SeriesError::NonInvertibleSubstitution)
        );
    }

    #[test]
    fn first_mismatch_orders_by_q() {
        let a = &poly(&[1, 2, 3]) + &MultiSeries::monomial(z(), QSeries::monomial(1, 1));
        let b = poly(&[1, 2, 4]);
        let mm = a.first_mismatch(&b).unwrap();
        assert_eq!((mm.monomial, mm.exponent), (z(), 1));
        assert_eq!(a.first_mismatch(&a), None);
    }

    #[test]
    fn display() {
        let a = &poly(&[1, -1]) + &MultiSeries::monomial(z().pow(2), QSeries::monomial(3, 2));
        assert_eq!(alloc::format!("{a}"), "1 - q + 3*z^2*q^2");
        assert_eq!(alloc::format!("{}", a.truncate(2)), "1 - q + O(q^2)");
    }
}
