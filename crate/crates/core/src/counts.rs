//! The counting surface: p_k(n) and pp(n) by every implemented route, the
//! series and enumeration oracles, and a process-wide memo for the default
//! recurrence method.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{build_divisor_table, factorial};
use crate::bell::{
    complete_bell_prefix, exact_div, hessenberg_det_prefix, partial_bell_table,
    BellArgumentSequence, HessenbergSpec, PartialBellTable, Provenance,
};
use crate::enumerate::{oracle_enumerate_colored, oracle_enumerate_plane};
use crate::error::{Error, Result};
use crate::series::{colored_generating_series, plane_generating_series, TruncatedSeries};

/// The two counted families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Colored,
    Plane,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Colored => "colored",
            Family::Plane => "plane",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "colored" => Ok(Family::Colored),
            "plane" => Ok(Family::Plane),
            other => Err(format!("unknown family '{other}' (use colored or plane)")),
        }
    }
}

/// Every implemented counting route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    PartialBell,
    CompleteBell,
    Determinant,
    Recurrence,
    OracleSeries,
    OracleEnumeration,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::PartialBell,
        Method::CompleteBell,
        Method::Determinant,
        Method::Recurrence,
        Method::OracleSeries,
        Method::OracleEnumeration,
    ];

    /// Whether the route exists for the family (only the partial-Bell
    /// formula is colored-only).
    pub fn supports(&self, family: Family) -> bool {
        !matches!((self, family), (Method::PartialBell, Family::Plane))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::PartialBell => "partial-bell",
            Method::CompleteBell => "complete-bell",
            Method::Determinant => "determinant",
            Method::Recurrence => "recurrence",
            Method::OracleSeries => "oracle-series",
            Method::OracleEnumeration => "oracle-enumeration",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "partial-bell" => Ok(Method::PartialBell),
            "complete-bell" => Ok(Method::CompleteBell),
            "determinant" => Ok(Method::Determinant),
            "recurrence" => Ok(Method::Recurrence),
            "oracle-series" => Ok(Method::OracleSeries),
            "oracle-enumeration" => Ok(Method::OracleEnumeration),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

/// One computed count: which family, which parameters, which route, and the
/// exact nonnegative value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub family: Family,
    pub k: Option<u64>,
    pub n: u64,
    pub method: Method,
    pub value: BigInt,
}

impl CountResult {
    fn checked(
        family: Family,
        k: Option<u64>,
        n: u64,
        method: Method,
        value: BigInt,
    ) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InternalInconsistency(format!(
                "negative count {value} for {family} k={k:?} n={n} via {method}"
            )));
        }
        Ok(Self {
            family,
            k,
            n,
            method,
            value,
        })
    }
}

/// p_k(n) through the partial-Bell formula over pentagonal arguments:
/// the alternating rising-factorial sum divided by n!.
pub fn pk_partial_bell(k: u64, n: u64) -> Result<CountResult> {
    let args = BellArgumentSequence::pentagonal(n as usize);
    let table = partial_bell_table(&args, n as usize, n as usize)?;
    let value = pk_partial_bell_with_table(k, n, &table)?;
    CountResult::checked(Family::Colored, Some(k), n, Method::PartialBell, value)
}

/// Same as [`pk_partial_bell`] but against a prebuilt pentagonal table, so
/// sweeps can share one table across every k and n.
pub fn pk_partial_bell_with_table(k: u64, n: u64, table: &PartialBellTable) -> Result<BigInt> {
    if table.args().provenance() != &Provenance::Pentagonal {
        return Err(Error::Domain(
            "partial-Bell counting needs a pentagonal argument table".into(),
        ));
    }
    let n = n as usize;
    if table.n_max() < n || table.l_max() < n {
        return Err(Error::Domain(format!(
            "table covers n <= {}, need {n}",
            table.n_max()
        )));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    // sum of (-1)^l (k)^(l) B_{n,l} over l = 1..n; the l = 0 term vanishes
    let mut sum = BigInt::zero();
    let mut rising = BigInt::one(); // (k)^(l), grown incrementally
    for l in 1..=n {
        rising *= k + (l as u64) - 1;
        let b = table.entry(n, l);
        if b.is_zero() {
            continue;
        }
        let term = &rising * b;
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    exact_div(sum, &factorial(n as u64), "partial-Bell count")
}

/// p_k(0..=max_n) through the complete Bell polynomial over the
/// k-scaled divisor arguments.
pub fn pk_complete_bell_prefix(k: u64, max_n: u64) -> Result<Vec<BigInt>> {
    if max_n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let table = build_divisor_table(max_n as usize)?;
    let args = BellArgumentSequence::colored(k, &table);
    normalize_by_factorials(
        complete_bell_prefix(&args, max_n as usize)?,
        "complete-Bell count",
    )
}

/// p_k(n) = B_n(kσ(1), 1!·kσ(2), …)/n!.
pub fn pk_complete_bell(k: u64, n: u64) -> Result<CountResult> {
    let value = pk_complete_bell_prefix(k, n)?.pop().expect("nonempty");
    CountResult::checked(Family::Colored, Some(k), n, Method::CompleteBell, value)
}

/// p_k(0..=max_n) through leading Hessenberg determinants with first-row
/// generators k·σ(m).
pub fn pk_determinant_prefix(k: u64, max_n: u64) -> Result<Vec<BigInt>> {
    if max_n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let table = build_divisor_table(max_n as usize)?;
    let c = (1..=max_n as usize).map(|m| table.sigma1(m) * k).collect();
    let spec = HessenbergSpec::new(c);
    normalize_by_factorials(hessenberg_det_prefix(&spec), "determinant count")
}

/// p_k(n) as the n×n Hessenberg determinant divided by n!.
pub fn pk_determinant(k: u64, n: u64) -> Result<CountResult> {
    let value = pk_determinant_prefix(k, n)?.pop().expect("nonempty");
    CountResult::checked(Family::Colored, Some(k), n, Method::Determinant, value)
}

/// p_k(0..=max_n) by the normalized recurrence
/// n·p_k(n) = k·Σ_{m=1}^{n} σ(m)·p_k(n−m). The default production route.
pub fn pk_recurrence_prefix(k: u64, max_n: u64) -> Result<Vec<BigInt>> {
    let mut prefix = Vec::new();
    extend_recurrence_prefix(Family::Colored, k, &mut prefix, max_n as usize)?;
    Ok(prefix)
}

/// p_k(n) by the normalized recurrence.
pub fn pk_recurrence(k: u64, n: u64) -> Result<CountResult> {
    let value = pk_recurrence_prefix(k, n)?.pop().expect("nonempty");
    CountResult::checked(Family::Colored, Some(k), n, Method::Recurrence, value)
}

/// pp(0..=max_n) through the complete Bell polynomial over the σ₂-scaled
/// arguments.
pub fn pp_complete_bell_prefix(max_n: u64) -> Result<Vec<BigInt>> {
    if max_n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let table = build_divisor_table(max_n as usize)?;
    let args = BellArgumentSequence::plane(&table);
    normalize_by_factorials(
        complete_bell_prefix(&args, max_n as usize)?,
        "complete-Bell count",
    )
}

/// pp(n) = B_n(σ₂(1), 1!·σ₂(2), …)/n!.
pub fn pp_complete_bell(n: u64) -> Result<CountResult> {
    let value = pp_complete_bell_prefix(n)?.pop().expect("nonempty");
    CountResult::checked(Family::Plane, None, n, Method::CompleteBell, value)
}

/// pp(0..=max_n) through leading Hessenberg determinants with first-row
/// generators σ₂(m).
pub fn pp_determinant_prefix(max_n: u64) -> Result<Vec<BigInt>> {
    if max_n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let table = build_divisor_table(max_n as usize)?;
    let c = (1..=max_n as usize)
        .map(|m| table.sigma2(m).clone())
        .collect();
    let spec = HessenbergSpec::new(c);
    normalize_by_factorials(hessenberg_det_prefix(&spec), "determinant count")
}

/// pp(n) as the n×n Hessenberg determinant divided by n!.
pub fn pp_determinant(n: u64) -> Result<CountResult> {
    let value = pp_determinant_prefix(n)?.pop().expect("nonempty");
    CountResult::checked(Family::Plane, None, n, Method::Determinant, value)
}

/// pp(0..=max_n) by the normalized recurrence
/// n·pp(n) = Σ_{m=1}^{n} σ₂(m)·pp(n−m). The default production route.
pub fn pp_recurrence_prefix(max_n: u64) -> Result<Vec<BigInt>> {
    let mut prefix = Vec::new();
    extend_recurrence_prefix(Family::Plane, 0, &mut prefix, max_n as usize)?;
    Ok(prefix)
}

/// pp(n) by the normalized recurrence.
pub fn pp_recurrence(n: u64) -> Result<CountResult> {
    let value = pp_recurrence_prefix(n)?.pop().expect("nonempty");
    CountResult::checked(Family::Plane, None, n, Method::Recurrence, value)
}

/// The family's generating function truncated at q^order; `k` is ignored
/// for the plane family.
pub fn oracle_series(family: Family, k: u64, order: usize) -> TruncatedSeries {
    match family {
        Family::Colored => colored_generating_series(k, order),
        Family::Plane => plane_generating_series(order),
    }
}

/// Partition numbers p(0..=max_n) by the classical pentagonal-number
/// recurrence, independent of every route above. Auxiliary check for the
/// p₁ reduction.
pub fn classical_partition_prefix(max_n: u64) -> Vec<BigInt> {
    let max_n = max_n as usize;
    let mut p = Vec::with_capacity(max_n + 1);
    p.push(BigInt::one());
    for n in 1..=max_n {
        let mut total = BigInt::zero();
        let mut m = 1usize;
        loop {
            let lower = m * (3 * m - 1) / 2;
            if lower > n {
                break;
            }
            let upper = m * (3 * m + 1) / 2;
            let mut contribution = p[n - lower].clone();
            if upper <= n {
                contribution += &p[n - upper];
            }
            if m % 2 == 1 {
                total += contribution;
            } else {
                total -= contribution;
            }
            m += 1;
        }
        p.push(total);
    }
    p
}

/// Divide the m-th entry by m!, asserting exactness, and reject negatives.
fn normalize_by_factorials(raw: Vec<BigInt>, what: &str) -> Result<Vec<BigInt>> {
    let mut fact = BigInt::one();
    raw.into_iter()
        .enumerate()
        .map(|(m, value)| {
            if m > 1 {
                fact *= m as u64;
            }
            let v = exact_div(value, &fact, what)?;
            if v.is_negative() {
                return Err(Error::InternalInconsistency(format!(
                    "negative {what} at n={m}"
                )));
            }
            Ok(v)
        })
        .collect()
}

/// Grow `prefix` (p(0..)) in place up to index `target` using the family's
/// normalized recurrence; every division by n is asserted exact.
fn extend_recurrence_prefix(
    family: Family,
    k: u64,
    prefix: &mut Vec<BigInt>,
    target: usize,
) -> Result<()> {
    if prefix.is_empty() {
        prefix.push(BigInt::one());
    }
    if prefix.len() > target {
        return Ok(());
    }
    let table = build_divisor_table(target)?;
    for n in prefix.len()..=target {
        let mut sum = BigInt::zero();
        for m in 1..=n {
            let p = &prefix[n - m];
            if p.is_zero() {
                continue;
            }
            let sigma = match family {
                Family::Colored => table.sigma1(m),
                Family::Plane => table.sigma2(m),
            };
            sum += sigma * p;
        }
        if family == Family::Colored {
            sum *= k;
        }
        prefix.push(exact_div(sum, &BigInt::from(n), "normalized recurrence")?);
    }
    Ok(())
}

/// Compute one count with no caching; the dispatch behind the CLI and the
/// verification sweep.
pub fn compute_count(
    family: Family,
    k: Option<u64>,
    n: u64,
    method: Method,
) -> Result<CountResult> {
    let k = match (family, k) {
        (Family::Colored, Some(k)) => Some(k),
        (Family::Colored, None) => {
            return Err(Error::Domain("colored counts need a color count k".into()))
        }
        (Family::Plane, None) => None,
        (Family::Plane, Some(_)) => {
            return Err(Error::Domain("plane counts take no color count".into()))
        }
    };
    if !method.supports(family) {
        return Err(Error::Domain(format!(
            "method {method} is not defined for the {family} family"
        )));
    }
    match (family, method) {
        (Family::Colored, Method::PartialBell) => pk_partial_bell(k.unwrap(), n),
        (Family::Colored, Method::CompleteBell) => pk_complete_bell(k.unwrap(), n),
        (Family::Colored, Method::Determinant) => pk_determinant(k.unwrap(), n),
        (Family::Colored, Method::Recurrence) => pk_recurrence(k.unwrap(), n),
        (Family::Plane, Method::CompleteBell) => pp_complete_bell(n),
        (Family::Plane, Method::Determinant) => pp_determinant(n),
        (Family::Plane, Method::Recurrence) => pp_recurrence(n),
        (_, Method::OracleSeries) => {
            let series = oracle_series(family, k.unwrap_or(0), n as usize);
            CountResult::checked(family, k, n, method, series.coeff(n as usize).clone())
        }
        (Family::Colored, Method::OracleEnumeration) => {
            let value = oracle_enumerate_colored(k.unwrap(), n)?;
            CountResult::checked(family, k, n, method, value)
        }
        (Family::Plane, Method::OracleEnumeration) => {
            let value = oracle_enumerate_plane(n)?;
            CountResult::checked(family, k, n, method, value)
        }
        (Family::Plane, Method::PartialBell) => unreachable!("rejected above"),
    }
}

/// Process-wide memo of recurrence prefixes keyed by (family, k), so
/// repeated queries amortize. Extend-or-read is atomic under the lock;
/// other methods always compute fresh.
#[derive(Debug, Default)]
pub struct Counter {
    memo: Mutex<HashMap<(Family, u64), Vec<BigInt>>>,
}

impl Counter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Memoized recurrence value for (family, k, n).
    pub fn recurrence(&self, family: Family, k: u64, n: u64) -> Result<BigInt> {
        let mut memo = self.memo.lock().expect("memo poisoned");
        let prefix = memo.entry((family, k)).or_default();
        extend_recurrence_prefix(family, k, prefix, n as usize)?;
        Ok(prefix[n as usize].clone())
    }

    /// Dispatch with memoization for the recurrence method.
    pub fn count(
        &self,
        family: Family,
        k: Option<u64>,
        n: u64,
        method: Method,
    ) -> Result<CountResult> {
        if method == Method::Recurrence {
            let k = match (family, k) {
                (Family::Colored, Some(k)) => k,
                (Family::Colored, None) => {
                    return Err(Error::Domain("colored counts need a color count k".into()))
                }
                (Family::Plane, None) => 0,
                (Family::Plane, Some(_)) => {
                    return Err(Error::Domain("plane counts take no color count".into()))
                }
            };
            let value = self.recurrence(family, k, n)?;
            let k = match family {
                Family::Colored => Some(k),
                Family::Plane => None,
            };
            return CountResult::checked(family, k, n, method, value);
        }
        compute_count(family, k, n, method)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn paper_worked_small_values() {
        assert_eq!(pk_partial_bell(2, 2).unwrap().value, big(5));
        assert_eq!(pk_complete_bell(2, 2).unwrap().value, big(5));
        assert_eq!(pk_determinant(2, 2).unwrap().value, big(5));
        assert_eq!(pk_recurrence(2, 2).unwrap().value, big(5));
        assert_eq!(pp_complete_bell(3).unwrap().value, big(6));
        assert_eq!(pp_determinant(3).unwrap().value, big(6));
        assert_eq!(pp_recurrence(3).unwrap().value, big(6));
    }

    #[test]
    fn n_zero_is_one_for_every_route() {
        assert_eq!(pk_partial_bell(3, 0).unwrap().value, big(1));
        assert_eq!(pk_complete_bell(7, 0).unwrap().value, big(1));
        assert_eq!(pk_determinant(1, 0).unwrap().value, big(1));
        assert_eq!(pk_recurrence(4, 0).unwrap().value, big(1));
        assert_eq!(pp_complete_bell(0).unwrap().value, big(1));
        assert_eq!(pp_determinant(0).unwrap().value, big(1));
        assert_eq!(pp_recurrence(0).unwrap().value, big(1));
        assert_eq!(oracle_series(Family::Plane, 0, 0).coeff(0), &big(1));
    }

    #[test]
    fn hand_expanded_examples() {
        // p_1(2): l=1 gives (-1)(1)(lambda_2) = 2, l=2 gives (2)(lambda_1^2) = 2; 4/2! = 2
        assert_eq!(pk_partial_bell(1, 2).unwrap().value, big(2));
        assert_eq!(pk_complete_bell(1, 1).unwrap().value, big(1));
        assert_eq!(pk_determinant(1, 4).unwrap().value, big(5));
        assert_eq!(pk_determinant(2, 1).unwrap().value, big(2));
        assert_eq!(pk_recurrence(1, 10).unwrap().value, big(42));
        assert_eq!(pp_recurrence(2).unwrap().value, big(3));
        assert_eq!(pp_determinant(5).unwrap().value, big(24));
    }

    #[test]
    fn recurrence_prefix_known_sequences() {
        let p1 = pk_recurrence_prefix(1, 10).unwrap();
        let expect: Vec<BigInt> = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
            .iter()
            .map(|&v| big(v))
            .collect();
        assert_eq!(p1, expect);

        let pp = pp_recurrence_prefix(5).unwrap();
        let expect: Vec<BigInt> = [1u64, 1, 3, 6, 13, 24].iter().map(|&v| big(v)).collect();
        assert_eq!(pp, expect);
    }

    #[test]
    fn zero_colors_is_the_empty_product() {
        for method in [
            Method::PartialBell,
            Method::CompleteBell,
            Method::Determinant,
            Method::Recurrence,
            Method::OracleSeries,
        ] {
            let at0 = compute_count(Family::Colored, Some(0), 0, method).unwrap();
            assert_eq!(at0.value, big(1), "{method} at n=0");
            for n in 1..=6 {
                let r = compute_count(Family::Colored, Some(0), n, method).unwrap();
                assert!(r.value.is_zero(), "{method} at n={n}");
            }
        }
    }

    #[test]
    fn methods_agree_on_a_small_grid() {
        for k in 1..=3u64 {
            let rec = pk_recurrence_prefix(k, 20).unwrap();
            let com = pk_complete_bell_prefix(k, 20).unwrap();
            let det = pk_determinant_prefix(k, 20).unwrap();
            let series = oracle_series(Family::Colored, k, 20);
            assert_eq!(rec, com, "k={k}");
            assert_eq!(rec, det, "k={k}");
            assert_eq!(&rec[..], series.coeffs(), "k={k}");
            let args = BellArgumentSequence::pentagonal(20);
            let table = partial_bell_table(&args, 20, 20).unwrap();
            for n in 0..=20u64 {
                assert_eq!(
                    pk_partial_bell_with_table(k, n, &table).unwrap(),
                    rec[n as usize],
                    "partial-bell k={k} n={n}"
                );
            }
        }
        let rec = pp_recurrence_prefix(20).unwrap();
        assert_eq!(rec, pp_complete_bell_prefix(20).unwrap());
        assert_eq!(rec, pp_determinant_prefix(20).unwrap());
        assert_eq!(&rec[..], oracle_series(Family::Plane, 0, 20).coeffs());
    }

    #[test]
    fn monotone_in_k_and_n() {
        let prefixes: Vec<Vec<BigInt>> = (1..=5)
            .map(|k| pk_recurrence_prefix(k, 30).unwrap())
            .collect();
        for (i, prefix) in prefixes.iter().enumerate() {
            for n in 1..prefix.len() {
                assert!(prefix[n] >= prefix[n - 1], "k={} n={n}", i + 1);
                if i > 0 {
                    assert!(prefix[n] > prefixes[i - 1][n], "k={} n={n}", i + 1);
                }
            }
        }
    }

    #[test]
    fn classical_recurrence_matches_p1() {
        let classical = classical_partition_prefix(200);
        let p1 = pk_recurrence_prefix(1, 200).unwrap();
        assert_eq!(classical, p1);
    }

    #[test]
    fn compute_count_validates_k_presence() {
        assert!(matches!(
            compute_count(Family::Colored, None, 3, Method::Recurrence),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            compute_count(Family::Plane, Some(2), 3, Method::Recurrence),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            compute_count(Family::Plane, None, 3, Method::PartialBell),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn counter_memoizes_and_agrees() {
        let counter = Counter::new();
        let direct = pk_recurrence(3, 25).unwrap().value;
        assert_eq!(counter.recurrence(Family::Colored, 3, 25).unwrap(), direct);
        // shrink then regrow through the memo
        assert_eq!(
            counter.recurrence(Family::Colored, 3, 10).unwrap(),
            pk_recurrence(3, 10).unwrap().value
        );
        assert_eq!(
            counter.recurrence(Family::Colored, 3, 40).unwrap(),
            pk_recurrence(3, 40).unwrap().value
        );
        let via_count = counter
            .count(Family::Plane, None, 12, Method::Recurrence)
            .unwrap();
        assert_eq!(via_count.value, pp_recurrence(12).unwrap().value);
    }
}
