//! Exact integer primitives: factorials, binomials, rising factorials,
//! divisor-sum sieves, and generalized-pentagonal classification.
//!
//! Everything here is arbitrary-precision integer arithmetic; no floating
//! point is used anywhere in this module.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// n!, exact.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Rising factorial k(k+1)···(k+l−1); the empty product 1 when `l == 0`.
pub fn rising_factorial(k: u64, l: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..l {
        acc *= k + j;
    }
    acc
}

/// Binomial coefficient C(n, r) by the multiplicative scheme.
///
/// Every intermediate value stays integral: after step i the accumulator
/// holds C(n−r+i, i), so the division by i is always exact.
pub fn binomial(n: u64, r: u64) -> Result<BigInt> {
    if r > n {
        return Err(Error::Domain(format!(
            "binomial({n}, {r}): r must not exceed n"
        )));
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 1..=r {
        acc *= n - r + i;
        acc /= i;
    }
    Ok(acc)
}

/// Sieved divisor sums σ(m) = Σ_{d|m} d and σ₂(m) = Σ_{d|m} d² for
/// 1 ≤ m ≤ max_n.
///
/// Immutable after construction; safe to share across concurrent readers.
#[derive(Debug, Clone)]
pub struct DivisorSumTable {
    max_n: usize,
    sigma1: Vec<BigInt>,
    sigma2: Vec<BigInt>,
}

impl DivisorSumTable {
    /// Largest index the table covers.
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// σ(m). Panics if `m` is 0 or beyond `max_n`.
    pub fn sigma1(&self, m: usize) -> &BigInt {
        assert!(m >= 1 && m <= self.max_n, "sigma1({m}) out of table range");
        &self.sigma1[m - 1]
    }

    /// σ₂(m). Panics if `m` is 0 or beyond `max_n`.
    pub fn sigma2(&self, m: usize) -> &BigInt {
        assert!(m >= 1 && m <= self.max_n, "sigma2({m}) out of table range");
        &self.sigma2[m - 1]
    }
}

/// Sieve σ and σ₂ for all m ≤ max_n in one pass over multiples.
///
/// Cost is O(max_n log max_n) additions; no per-m factorization.
pub fn build_divisor_table(max_n: usize) -> Result<DivisorSumTable> {
    if max_n == 0 {
        return Err(Error::Domain("divisor table needs max_n >= 1".into()));
    }
    let mut sigma1 = vec![BigInt::zero(); max_n];
    let mut sigma2 = vec![BigInt::zero(); max_n];
    for d in 1..=max_n {
        let d_sq = BigInt::from(d) * d;
        for m in (d..=max_n).step_by(d) {
            sigma1[m - 1] += d;
            sigma2[m - 1] += &d_sq;
        }
    }
    Ok(DivisorSumTable {
        max_n,
        sigma1,
        sigma2,
    })
}

/// Result of classifying an index against the two generalized pentagonal
/// families i = m(3m−1)/2 and i = m(3m+1)/2.
///
/// `value` is λ_i = (−1)^m · i! when some positive m matches, 0 otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PentagonalCoefficient {
    pub index: u64,
    pub m: Option<u64>,
    pub sign: Option<i8>,
    pub value: BigInt,
}

/// Classify `i ≥ 1` by an integer-only scan over m.
///
/// The scan stops once m(3m−1)/2 exceeds i, which bounds m by
/// √(2i/3) + 1; no floating-point square roots are involved.
pub fn pentagonal_lambda(i: u64) -> PentagonalCoefficient {
    assert!(i >= 1, "pentagonal_lambda requires i >= 1");
    let mut m = 1u64;
    loop {
        let lower = m * (3 * m - 1) / 2;
        if lower > i {
            break;
        }
        let upper = m * (3 * m + 1) / 2;
        if lower == i || upper == i {
            let sign: i8 = if m.is_multiple_of(2) { 1 } else { -1 };
            let mut value = factorial(i);
            if sign < 0 {
                value = -value;
            }
            return PentagonalCoefficient {
                index: i,
                m: Some(m),
                sign: Some(sign),
                value,
            };
        }
        m += 1;
    }
    PentagonalCoefficient {
        index: i,
        m: None,
        sign: None,
        value: BigInt::zero(),
    }
}
