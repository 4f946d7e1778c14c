//! q-Pochhammer products and Gaussian binomial coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MultiSeries, QSeries, SeriesError, Term, EXACT};

/// `(a; q^step)_n = ∏_{k<n} (1 - a q^{step·k})`, an exact polynomial.
pub fn poch_finite(a: Term, step: u32, n: u32) -> MultiSeries {
    (0..n).fold(MultiSeries::one(), |acc, k| acc.mul_one_minus(&a.shift(i64::from(step) * i64::from(k))))
}

/// `(a; q^step)_∞` truncated at `q^trunc`. Every factor whose `q`-degree
/// reaches `trunc` is `1` modulo `q^trunc` and is skipped.
pub fn poch_infinite(a: Term, step: u32, trunc: i64) -> Result<MultiSeries, SeriesError> {
    if a.q_exp <= 0 || step == 0 {
        return Err(SeriesError::NonConvergent);
    }
    let mut acc = MultiSeries::one().truncate(trunc);
    let mut factor = a;
    while factor.q_exp < trunc {
        acc = acc.mul_one_minus(&factor);
        factor = factor.shift(i64::from(step));
    }
    Ok(acc)
}

/// `(a; q^step)_count` for an arbitrary series base `a`; `count == None`
/// means the infinite product, which needs `a` to have positive valuation.
/// The result is truncated at `trunc`.
pub fn poch_series(a: &MultiSeries, step: u32, count: Option<u32>, trunc: i64) -> Result<MultiSeries, SeriesError> {
    if let Some(t) = a.as_term() {
        return match count {
            Some(n) if t.q_exp >= 0 => {
                // factors of degree >= trunc are 1 modulo q^trunc
                let mut acc = MultiSeries::one().truncate(trunc);
                for k in 0..n {
                    let f = t.shift(i64::from(step) * i64::from(k));
                    if f.q_exp >= trunc {
                        break;
                    }
                    acc = acc.mul_one_minus(&f);
                }
                Ok(acc)
            }
            Some(n) => Ok(poch_finite(t, step, n).truncate(trunc)),
            None => poch_infinite(t, step, trunc),
        };
    }
    let mut acc = MultiSeries::one().truncate(trunc);
    let mut k: u32 = 0;
    loop {
        match count {
            Some(n) if k >= n => break,
            None => {
                if step == 0 || a.valuation() <= 0 {
                    return Err(SeriesError::NonConvergent);
                }
                if a.valuation() + i64::from(step) * i64::from(k) >= trunc {
                    break;
                }
            }
            _ => {}
        }
        let shifted = a.mul_term(&Term::q(i64::from(step) * i64::from(k)));
        acc = &acc - &(&acc * &shifted);
        k += 1;
    }
    Ok(acc)
}

/// Gaussian binomial coefficient `[m choose k]_q` as an exact polynomial;
/// zero outside `0 <= k <= m`.
pub fn qbinom(m: i64, k: i64) -> QSeries {
    if m < 0 || k < 0 || k > m {
        return QSeries::zero();
    }
    let k = k.min(m - k) as usize;
    let m = m as usize;
    // rows[j] holds [i choose j]_q for the current i, via
    // [i, j] = [i-1, j-1] + q^j [i-1, j]
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); 1]; k + 1];
    rows[0][0] = BigInt::from(1);
    for i in 1..=m {
        for j in (1..=k.min(i)).rev() {
            let deg = j * (i - j);
            let mut next = vec![BigInt::zero(); deg + 1];
            for (e, c) in rows[j - 1].iter().enumerate() {
                next[e] += c;
            }
            if j < i {
                for (e, c) in rows[j].iter().enumerate() {
                    next[e + j] += c;
                }
            }
            rows[j] = next;
        }
    }
    let row = core::mem::take(&mut rows[k]);
    QSeries::from_terms(row.into_iter().enumerate().map(|(e, c)| (e as i64, c)), EXACT)
}
