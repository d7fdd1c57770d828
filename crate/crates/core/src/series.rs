//! Exact truncated formal power series over integer coefficients, and the
//! generating-function constructions built from them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact coefficients a₀..a_N of a formal power series truncated at q^N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// The constant series 1 + O(q^{order+1}).
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    /// Wrap explicit coefficients a₀..a_N; order is the last index.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least a_0");
        Self { coeffs }
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of q^i. Panics beyond the truncation order.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact product, truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Multiply in place by 1/(1−q^j): a forward prefix sum along stride j.
    /// Division-free by construction.
    pub fn mul_geometric_inverse(&mut self, j: usize) {
        assert!(j >= 1);
        for i in j..self.coeffs.len() {
            let add = self.coeffs[i - j].clone();
            self.coeffs[i] += add;
        }
    }

    /// Multiply in place by (1−q^j): a backward difference along stride j.
    pub fn mul_one_minus_power(&mut self, j: usize) {
        assert!(j >= 1);
        for i in (j..self.coeffs.len()).rev() {
            let sub = self.coeffs[i - j].clone();
            self.coeffs[i] -= sub;
        }
    }
}

/// ∏_{j=1}^{order} (1−q^j)^{−k}, the k-colored generating function,
/// truncated at q^order. Factors with j > order cannot touch the window.
pub fn colored_generating_series(k: u64, order: usize) -> TruncatedSeries {
    let mut series = TruncatedSeries::one(order);
    for j in 1..=order {
        for _ in 0..k {
            series.mul_geometric_inverse(j);
        }
    }
    series
}

/// ∏_{j=1}^{order} (1−q^j)^{−j}, the plane-partition generating function,
/// truncated at q^order.
pub fn plane_generating_series(order: usize) -> TruncatedSeries {
    let mut series = TruncatedSeries::one(order);
    for j in 1..=order {
        for _ in 0..j {
            series.mul_geometric_inverse(j);
        }
    }
    series
}

/// ∏_{j=1}^{order} (1−q^j), Euler's pentagonal product, truncated at q^order.
pub fn euler_product(order: usize) -> TruncatedSeries {
    let mut series = TruncatedSeries::one(order);
    for j in 1..=order {
        series.mul_one_minus_power(j);
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, pentagonal_lambda};
    use proptest::prelude::*;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn one_and_orders() {
        let s = TruncatedSeries::one(0);
        assert_eq!(s.coeffs(), &ints(&[1])[..]);
        assert_eq!(s.order(), 0);
    }

    #[test]
    fn mul_truncates_at_min_order() {
        let a = TruncatedSeries::from_coeffs(ints(&[1, 1, 1, 1]));
        let b = TruncatedSeries::from_coeffs(ints(&[1, -1]));
        let p = a.mul(&b);
        assert_eq!(p.order(), 1);
        assert_eq!(p.coeffs(), &ints(&[1, 0])[..]);
    }

    #[test]
    fn geometric_inverse_then_forward_is_identity() {
        let original = TruncatedSeries::from_coeffs(ints(&[3, -1, 4, 1, 5, -9, 2, 6]));
        for j in 1..=7 {
            let mut s = original.clone();
            s.mul_geometric_inverse(j);
            s.mul_one_minus_power(j);
            assert_eq!(s, original, "j={j}");
        }
    }

    #[test]
    fn colored_series_known_prefixes() {
        assert_eq!(
            colored_generating_series(2, 2).coeffs(),
            &ints(&[1, 2, 5])[..]
        );
        assert_eq!(colored_generating_series(1, 0).coeffs(), &ints(&[1])[..]);
        assert_eq!(
            colored_generating_series(1, 10).coeffs(),
            &ints(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42])[..]
        );
    }

    #[test]
    fn plane_series_known_prefix() {
        assert_eq!(
            plane_generating_series(3).coeffs(),
            &ints(&[1, 1, 3, 6])[..]
        );
        assert_eq!(plane_generating_series(0).coeffs(), &ints(&[1])[..]);
        assert_eq!(
            plane_generating_series(8).coeffs(),
            &ints(&[1, 1, 3, 6, 13, 24, 48, 86, 160])[..]
        );
    }

    #[test]
    fn euler_product_matches_pentagonal_lambda() {
        // at every truncation order N <= 40, coefficient of q^i is lambda_i / i!
        for order in 1..=40usize {
            let series = euler_product(order);
            assert_eq!(series.coeff(0), &BigInt::one());
            for i in 1..=order as u64 {
                let lambda = pentagonal_lambda(i).value;
                let expect =
                    crate::bell::exact_div(lambda, &factorial(i), "pentagonal test").unwrap();
                assert_eq!(series.coeff(i as usize), &expect, "N={order}, q^{i}");
            }
        }
    }

    proptest! {
        #[test]
        fn mul_commutes(a in proptest::collection::vec(-20i64..=20, 1..12),
                        b in proptest::collection::vec(-20i64..=20, 1..12)) {
            let sa = TruncatedSeries::from_coeffs(ints(&a));
            let sb = TruncatedSeries::from_coeffs(ints(&b));
            prop_assert_eq!(sa.mul(&sb), sb.mul(&sa));
        }

        #[test]
        fn geometric_roundtrip(coeffs in proptest::collection::vec(-50i64..=50, 1..20),
                               j in 1usize..6) {
            let original = TruncatedSeries::from_coeffs(ints(&coeffs));
            let mut s = original.clone();
            s.mul_one_minus_power(j);
            s.mul_geometric_inverse(j);
            prop_assert_eq!(s, original);
        }
    }
}
