//! Cross-method agreement sweeps. Every counting route and both oracles are
//! run over a configurable range and compared exactly; independent work
//! units run data-parallel under the `parallel` feature, with a sequential
//! path kept for comparison and for feature-off builds.

use std::fmt;

use num_bigint::BigInt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::arith::{factorial, pentagonal_lambda};
use crate::bell::{exact_div, partial_bell_table, BellArgumentSequence, PartialBellTable};
use crate::counts::{
    classical_partition_prefix, oracle_series, pk_complete_bell_prefix, pk_determinant_prefix,
    pk_partial_bell_with_table, pk_recurrence_prefix, pp_complete_bell_prefix,
    pp_determinant_prefix, pp_recurrence_prefix, Family, Method,
};
use crate::enumerate::{oracle_enumerate_colored, oracle_enumerate_plane, MAX_ENUM_K, MAX_ENUM_N};
use crate::error::Result;
use crate::series::euler_product;

/// Sweep ranges: colored counts run over 1 ≤ k ≤ max_k, both families over
/// 0 ≤ n ≤ max_n.
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub max_n: u64,
    pub max_k: u64,
}

/// A single disagreement, with enough context to reproduce it.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub family: Family,
    pub k: Option<u64>,
    pub n: u64,
    pub left_method: String,
    pub right_method: String,
    pub left: BigInt,
    pub right: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "family={} k={k} n={}", self.family, self.n)?,
            None => write!(f, "family={} n={}", self.family, self.n)?,
        }
        write!(
            f,
            ": {} gives {}, {} gives {}",
            self.left_method, self.left, self.right_method, self.right
        )
    }
}

/// Outcome of one check family.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub checks: u64,
    pub mismatches: Vec<Mismatch>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "ok   {} ({} checks)", self.name, self.checks)
        } else {
            write!(
                f,
                "FAIL {} ({} checks, {} mismatches; first: {})",
                self.name,
                self.checks,
                self.mismatches.len(),
                self.mismatches[0]
            )
        }
    }
}

/// The whole sweep outcome, one report per check family.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub reports: Vec<CheckReport>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    pub fn total_checks(&self) -> u64 {
        self.reports.iter().map(|r| r.checks).sum()
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.reports.iter().find_map(|r| r.mismatches.first())
    }
}

enum Unit {
    ColoredMethods { k: u64 },
    PlaneMethods,
    ColoredEnumeration,
    PlaneEnumeration,
    Monotonicity,
    ClassicalReduction,
    PentagonalIdentity,
}

/// Run the full sweep, data-parallel when built with the `parallel` feature.
pub fn run_sweep(config: SweepConfig) -> Result<SweepReport> {
    run(config, true)
}

/// Run the full sweep on the current thread regardless of features; kept
/// callable so benchmarks can compare both executions.
pub fn run_sweep_serial(config: SweepConfig) -> Result<SweepReport> {
    run(config, false)
}

fn run(config: SweepConfig, parallel: bool) -> Result<SweepReport> {
    // one pentagonal table serves every k and n; read-only across workers
    let pent_args = BellArgumentSequence::pentagonal(config.max_n as usize);
    let pent_table = partial_bell_table(&pent_args, config.max_n as usize, config.max_n as usize)?;

    let mut units: Vec<Unit> = (1..=config.max_k)
        .map(|k| Unit::ColoredMethods { k })
        .collect();
    units.extend([
        Unit::PlaneMethods,
        Unit::ColoredEnumeration,
        Unit::PlaneEnumeration,
        Unit::Monotonicity,
        Unit::ClassicalReduction,
        Unit::PentagonalIdentity,
    ]);

    let results = map_units(parallel, units, |unit| run_unit(&unit, config, &pent_table));
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        reports.push(r?);
    }
    // merge the per-k colored reports into one summary line
    let mut merged: Vec<CheckReport> = Vec::new();
    let mut colored = CheckReport {
        name: "colored method agreement".into(),
        checks: 0,
        mismatches: Vec::new(),
    };
    for report in reports {
        if report.name == COLORED_UNIT_NAME {
            colored.checks += report.checks;
            colored.mismatches.extend(report.mismatches);
        } else {
            merged.push(report);
        }
    }
    merged.insert(0, colored);
    Ok(SweepReport { reports: merged })
}

#[cfg(feature = "parallel")]
fn map_units<T, U, F>(parallel: bool, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    if parallel {
        items.into_par_iter().map(f).collect()
    } else {
        items.into_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn map_units<T, U, F>(_parallel: bool, items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

const COLORED_UNIT_NAME: &str = "colored method agreement (per k)";

fn run_unit(
    unit: &Unit,
    config: SweepConfig,
    pent_table: &PartialBellTable,
) -> Result<CheckReport> {
    match unit {
        Unit::ColoredMethods { k } => colored_methods(*k, config.max_n, pent_table),
        Unit::PlaneMethods => plane_methods(config.max_n),
        Unit::ColoredEnumeration => colored_enumeration(config),
        Unit::PlaneEnumeration => plane_enumeration(config),
        Unit::Monotonicity => monotonicity(config),
        Unit::ClassicalReduction => classical_reduction(config.max_n),
        Unit::PentagonalIdentity => pentagonal_identity(),
    }
}

fn mismatch(
    family: Family,
    k: Option<u64>,
    n: u64,
    left_method: impl fmt::Display,
    right_method: impl fmt::Display,
    left: &BigInt,
    right: &BigInt,
) -> Mismatch {
    Mismatch {
        family,
        k,
        n,
        left_method: left_method.to_string(),
        right_method: right_method.to_string(),
        left: left.clone(),
        right: right.clone(),
    }
}

fn colored_methods(k: u64, max_n: u64, pent_table: &PartialBellTable) -> Result<CheckReport> {
    let reference = pk_recurrence_prefix(k, max_n)?;
    let routes: [(Method, Vec<BigInt>); 2] = [
        (Method::CompleteBell, pk_complete_bell_prefix(k, max_n)?),
        (Method::Determinant, pk_determinant_prefix(k, max_n)?),
    ];
    let series = oracle_series(Family::Colored, k, max_n as usize);

    let mut report = CheckReport {
        name: COLORED_UNIT_NAME.into(),
        checks: 0,
        mismatches: Vec::new(),
    };
    for n in 0..=max_n {
        let i = n as usize;
        let expected = &reference[i];
        for (method, values) in &routes {
            report.checks += 1;
            if &values[i] != expected {
                report.mismatches.push(mismatch(
                    Family::Colored,
                    Some(k),
                    n,
                    Method::Recurrence,
                    method,
                    expected,
                    &values[i],
                ));
            }
        }
        report.checks += 1;
        let pb = pk_partial_bell_with_table(k, n, pent_table)?;
        if &pb != expected {
            report.mismatches.push(mismatch(
                Family::Colored,
                Some(k),
                n,
                Method::Recurrence,
                Method::PartialBell,
                expected,
                &pb,
            ));
        }
        report.checks += 1;
        if series.coeff(i) != expected {
            report.mismatches.push(mismatch(
                Family::Colored,
                Some(k),
                n,
                Method::Recurrence,
                Method::OracleSeries,
                expected,
                series.coeff(i),
            ));
        }
    }
    Ok(report)
}

fn plane_methods(max_n: u64) -> Result<CheckReport> {
    let reference = pp_recurrence_prefix(max_n)?;
    let routes: [(Method, Vec<BigInt>); 2] = [
        (Method::CompleteBell, pp_complete_bell_prefix(max_n)?),
        (Method::Determinant, pp_determinant_prefix(max_n)?),
    ];
    let series = oracle_series(Family::Plane, 0, max_n as usize);

    let mut report = CheckReport {
        name: "plane method agreement".into(),
        checks: 0,
        mismatches: Vec::new(),
    };
    for n in 0..=max_n {
        let i = n as usize;
        let expected = &reference[i];
        for (method, values) in &routes {
            report.checks += 1;
            if &values[i] != expected {
                report.mismatches.push(mismatch(
                    Family::Plane,
                    None,
                    n,
                    Method::Recurrence,
                    method,
                    expected,
                    &values[i],
                ));
            }
        }
        report.checks += 1;
        if series.coeff(i) != expected {
            report.mismatches.push(mismatch(
                Family::Plane,
                None,
                n,
                Method::Recurrence,
                Method::OracleSeries,
                expected,
                series.coeff(i),
            ));
        }
    }
    Ok(report)
}

fn colored_enumeration(config: SweepConfig) -> Result<CheckReport> {
    let max_n = config.max_n.min(MAX_ENUM_N.min(10));
    let max_k = config.max_k.min(MAX_ENUM_K.min(3));
    let mut report = CheckReport {
        name: "colored enumeration agreement".into(),
        checks: 0,
        mismatches: Vec::new(),
    };
    for k in 1..=max_k {
        let reference = pk_recurrence_prefix(k, max_n)?;
        for n in 0..=max_n {
            report.checks += 1;
            let counted = oracle_enumerate_colored(k, n)?;
            if counted != reference[n as usize] {
                report.mismatches.push(mismatch(
                    Family::Colored,
                    Some(k),
                    n,
                    Method::OracleEnumeration,
                    Method::Recurrence,
                    &counted,
                    &reference[n as usize],
                ));
            }
        }
    }
    Ok(report)
}

fn plane_enumeration(config: SweepConfig) -> Result<CheckReport> {
    let max_n = config.max_n.min(MAX_ENUM_N.min(10));
    let reference = pp_recurrence_prefix(max_n)?;
    let mut report = CheckReport {
        name: "plane enumeration agreement".into(),
        checks: 0,
        mismatches: Vec::new(),
    };
    for n in 0..=max_n {
        report.checks += 1;
        let counted = oracle_enumerate_plane(n)?;
        if counted != reference[n as usize] {
            report.mismatches.push(mismatch(
                Family::Plane,
                None,
                n,
                Method::OracleEnumeration,
                Method::Recurrence,
                &counted,
                &reference[n as usize],
            ));
        }
    }
    Ok(report)
}

fn monotonicity(config: SweepConfig) -> Result<CheckReport> {
    let mut report = CheckReport {
        name: "monotone in k and n".into(),
        checks: 0,
        mismatches: Vec::new(),
    };
    let mut previous: Option<Vec<BigInt>> = None;
    for k in 1..=config.max_k {
        let prefix = pk_recurrence_prefix(k, config.max_n)?;
        for n in 1..prefix.len() {
            report.checks += 1;
            if prefix[n] < prefix[n - 1] {
                report.mismatches.push(mismatch(
                    Family::Colored,
                    Some(k),
                    n as u64,
                    format!("p_{k}({n})"),
                    format!("p_{k}({})", n - 1),
                    &prefix[n],
                    &prefix[n - 1],
                ));
            }
            if let Some(prev) = &previous {
                report.checks += 1;
                if prefix[n] <= prev[n] {
                    report.mismatches.push(mismatch(
                        Family::Colored,
                        Some(k),
                        n as u64,
                        format!("p_{k}({n})"),
                        format!("p_{}({n})", k - 1),
                        &prefix[n],
                        &prev[n],
                    ));
                }
            }
        }
        previous = Some(prefix);
    }
    Ok(report)
}

fn classical_reduction(max_n: u64) -> Result<CheckReport> {
    let classical = classical_partition_prefix(max_n);
    let p1 = pk_recurrence_prefix(1, max_n)?;
    let mut report = CheckReport {
        name: "p_1 matches classical pentagonal recurrence".into(),
        checks: 0,
        mismatches: Vec::new(),
    };
    for n in 0..=max_n as usize {
        report.checks += 1;
        if classical[n] != p1[n] {
            report.mismatches.push(mismatch(
                Family::Colored,
                Some(1),
                n as u64,
                "classical-pentagonal",
                Method::Recurrence,
                &classical[n],
                &p1[n],
            ));
        }
    }
    Ok(report)
}

fn pentagonal_identity() -> Result<CheckReport> {
    const ORDER: u64 = 40;
    let product = euler_product(ORDER as usize);
    let mut report = CheckReport {
        name: "Euler pentagonal identity".into(),
        checks: 0,
        mismatches: Vec::new(),
    };
    for i in 1..=ORDER {
        report.checks += 1;
        let normalized = exact_div(
            pentagonal_lambda(i).value,
            &factorial(i),
            "pentagonal identity",
        )?;
        if &normalized != product.coeff(i as usize) {
            report.mismatches.push(mismatch(
                Family::Colored,
                None,
                i,
                "pentagonal-lambda",
                "euler-product",
                &normalized,
                product.coeff(i as usize),
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let report = run_sweep(SweepConfig {
            max_n: 15,
            max_k: 2,
        })
        .unwrap();
        assert!(report.passed(), "{:#?}", report.reports);
        assert!(report.total_checks() > 100);
        assert_eq!(report.first_mismatch().map(|m| m.n), None);
    }

    #[test]
    fn serial_and_parallel_agree() {
        let config = SweepConfig {
            max_n: 12,
            max_k: 2,
        };
        let a = run_sweep(config).unwrap();
        let b = run_sweep_serial(config).unwrap();
        assert_eq!(a.passed(), b.passed());
        assert_eq!(a.total_checks(), b.total_checks());
        let names_a: Vec<&str> = a.reports.iter().map(|r| r.name.as_str()).collect();
        let names_b: Vec<&str> = b.reports.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names_a, names_b);
    }

    #[test]
    fn report_lines_render() {
        let report = run_sweep(SweepConfig { max_n: 8, max_k: 1 }).unwrap();
        for r in &report.reports {
            let line = r.to_string();
            assert!(line.starts_with("ok"), "{line}");
        }
    }
}
