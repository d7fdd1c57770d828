//! Acceptance suite: every release-gating requirement, one test per
//! criterion, each printing a single pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! All expected values are exact integers; there are no tolerances anywhere.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};

use partcount::arith::{factorial, pentagonal_lambda};
use partcount::bell::{
    complete_bell, dense_det_oracle, hessenberg_det, partial_bell_explicit, partial_bell_table,
    BellArgumentSequence, HessenbergSpec,
};
use partcount::counts::{
    classical_partition_prefix, compute_count, pk_recurrence, pk_recurrence_prefix, pp_recurrence,
};
use partcount::series::euler_product;
use partcount::verify::{run_sweep, SweepConfig};
use partcount::{Family, Method};

const P30_OF_200: &str = "23945275792616100703623332622769220026826156718318470749445535353589";
const PP_OF_700: &str = "1542248695905922088013690041381656661664744761954709483748320717869";

fn big(s: &str) -> BigInt {
    s.parse().expect("decimal literal")
}

fn report(criterion: &str, ok: bool) {
    println!("[{}] {criterion}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion failed: {criterion}");
}

#[test]
fn criterion_1_paper_golden_values() {
    let budget = Duration::from_secs(10);

    assert_eq!(pk_recurrence(2, 2).unwrap().value, BigInt::from(5));
    assert_eq!(pp_recurrence(3).unwrap().value, BigInt::from(6));

    let start = Instant::now();
    let p30 = pk_recurrence(30, 200).unwrap().value;
    let p30_time = start.elapsed();
    assert_eq!(p30, big(P30_OF_200));
    assert!(p30_time < budget, "p_30(200) took {p30_time:?}");

    let start = Instant::now();
    let pp700 = pp_recurrence(700).unwrap().value;
    let pp_time = start.elapsed();
    assert_eq!(pp700, big(PP_OF_700));
    assert!(pp_time < budget, "pp(700) took {pp_time:?}");

    report(
        &format!(
            "1. paper golden values bit-exact; p_30(200) in {p30_time:?}, pp(700) in {pp_time:?}"
        ),
        true,
    );
}

#[test]
fn criterion_2_worked_determinants() {
    let two_by_two = HessenbergSpec::new(vec![BigInt::from(2), BigInt::from(6)]);
    let det2 = hessenberg_det(&two_by_two);
    assert_eq!(det2, BigInt::from(10));
    assert_eq!(det2, factorial(2) * 5);
    assert_eq!(dense_det_oracle(&two_by_two.materialize()).unwrap(), det2);

    let three_by_three =
        HessenbergSpec::new(vec![BigInt::from(1), BigInt::from(5), BigInt::from(10)]);
    let det3 = hessenberg_det(&three_by_three);
    assert_eq!(det3, BigInt::from(36));
    assert_eq!(det3, factorial(3) * 6);
    assert_eq!(
        dense_det_oracle(&three_by_three.materialize()).unwrap(),
        det3
    );

    report("2. worked determinant examples reproduce exactly", true);
}

#[test]
fn criterion_3_cross_method_sweep() {
    let start = Instant::now();
    let sweep = run_sweep(SweepConfig {
        max_n: 60,
        max_k: 5,
    })
    .unwrap();
    let elapsed = start.elapsed();
    for check in &sweep.reports {
        assert!(check.passed(), "{check}");
    }
    assert!(
        elapsed < Duration::from_secs(120),
        "sweep took {elapsed:?}, budget is 2 minutes"
    );
    report(
        &format!(
            "3. cross-method agreement for k <= 5, n <= 60 ({} checks in {elapsed:?})",
            sweep.total_checks()
        ),
        true,
    );
}

#[test]
fn criterion_4_enumeration_agreement() {
    let mut checks = 0;
    for n in 0..=10u64 {
        let reference = compute_count(Family::Plane, None, n, Method::OracleEnumeration)
            .unwrap()
            .value;
        for method in [
            Method::Recurrence,
            Method::CompleteBell,
            Method::Determinant,
            Method::OracleSeries,
        ] {
            let got = compute_count(Family::Plane, None, n, method).unwrap().value;
            assert_eq!(got, reference, "plane n={n} {method}");
            checks += 1;
        }
    }
    for k in 1..=3u64 {
        for n in 0..=10u64 {
            let reference = compute_count(Family::Colored, Some(k), n, Method::OracleEnumeration)
                .unwrap()
                .value;
            for method in [
                Method::Recurrence,
                Method::PartialBell,
                Method::CompleteBell,
                Method::Determinant,
                Method::OracleSeries,
            ] {
                let got = compute_count(Family::Colored, Some(k), n, method)
                    .unwrap()
                    .value;
                assert_eq!(got, reference, "colored k={k} n={n} {method}");
                checks += 1;
            }
        }
    }
    report(
        &format!("4. brute-force enumeration equals every method ({checks} checks)"),
        true,
    );
}

#[test]
fn criterion_5_euler_pentagonal_identity() {
    let product = euler_product(40);
    for i in 1..=40u64 {
        let lambda = pentagonal_lambda(i).value;
        let coeff = product.coeff(i as usize);
        assert_eq!(&lambda, &(coeff * factorial(i)), "coefficient of q^{i}");
    }
    report(
        "5. Euler pentagonal product matches lambda_i / i! for i <= 40",
        true,
    );
}

/// Count set partitions of an n-set into l blocks by restricted growth
/// strings; the independent oracle for the Stirling specialization.
fn stirling_by_enumeration(n: usize, l: usize) -> u64 {
    fn rec(pos: usize, blocks: usize, n: usize, l: usize, assignment: &mut [usize]) -> u64 {
        if pos == n {
            return u64::from(blocks == l);
        }
        let mut count = 0;
        for b in 0..=blocks {
            assignment[pos] = b;
            count += rec(pos + 1, blocks.max(b + 1), n, l, assignment);
        }
        count
    }
    if n == 0 {
        return u64::from(l == 0);
    }
    rec(1, 1, n, l, &mut vec![0; n])
}

#[test]
fn criterion_6_bell_property_suite() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x9e3779b9);

    // edge rows, diagonal, and row sums up to n = 25 on random arguments
    let values: Vec<BigInt> = (0..25)
        .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
        .collect();
    let args = BellArgumentSequence::custom(values);
    let table = partial_bell_table(&args, 25, 25).unwrap();
    assert_eq!(table.entry(0, 0), &BigInt::one());
    for n in 1..=25usize {
        assert_eq!(table.entry(n, 1), args.x(n), "B_{{{n},1}}");
        assert_eq!(table.entry(n, n), &args.x(1).pow(n as u32), "B_{{{n},{n}}}");
        assert_eq!(
            table.row_sum(n),
            complete_bell(&args, n).unwrap(),
            "row sum at {n}"
        );
    }

    // explicit nested-sum formula against the recurrence up to n = 9
    for trial in 0..10 {
        let values: Vec<BigInt> = (0..9)
            .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
            .collect();
        let args = BellArgumentSequence::custom(values);
        let table = partial_bell_table(&args, 9, 9).unwrap();
        for n in 1..=9usize {
            for l in 1..=n {
                assert_eq!(
                    &partial_bell_explicit(&args, n, l).unwrap(),
                    table.entry(n, l),
                    "trial {trial}: B_{{{n},{l}}}"
                );
            }
        }
    }

    // Hessenberg expansion against dense cofactors, randomized c, n <= 8
    for _ in 0..40 {
        let n = rng.gen_range(1..=8);
        let c: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
            .collect();
        let spec = HessenbergSpec::new(c);
        assert_eq!(
            hessenberg_det(&spec),
            dense_det_oracle(&spec.materialize()).unwrap()
        );
    }

    // Stirling specialization at x = 1
    let ones = BellArgumentSequence::custom(vec![BigInt::one(); 8]);
    let table = partial_bell_table(&ones, 8, 8).unwrap();
    for n in 0..=8usize {
        for l in 0..=n {
            assert_eq!(
                table.entry(n, l),
                &BigInt::from(stirling_by_enumeration(n, l)),
                "S({n},{l})"
            );
        }
    }

    report(
        "6. Bell property suite (edges, row sums, explicit, determinant, Stirling)",
        true,
    );
}

#[test]
fn criterion_7_exact_division_invariant() {
    // every division by n or n! in every route over the full sweep ranges
    // must be exact; an inexact one surfaces as an InternalInconsistency
    // error from these calls
    let mut divisions = 0u64;
    let args = BellArgumentSequence::pentagonal(60);
    let pent = partial_bell_table(&args, 60, 60).unwrap();
    for k in 1..=5u64 {
        partcount::counts::pk_recurrence_prefix(k, 60).unwrap();
        partcount::counts::pk_complete_bell_prefix(k, 60).unwrap();
        partcount::counts::pk_determinant_prefix(k, 60).unwrap();
        divisions += 3 * 61;
        for n in 0..=60u64 {
            partcount::counts::pk_partial_bell_with_table(k, n, &pent).unwrap();
            divisions += 1;
        }
    }
    partcount::counts::pp_recurrence_prefix(60).unwrap();
    partcount::counts::pp_complete_bell_prefix(60).unwrap();
    partcount::counts::pp_determinant_prefix(60).unwrap();
    divisions += 3 * 61;
    report(
        &format!("7. no inexact division across {divisions} asserted divisions"),
        true,
    );
}

#[test]
fn criterion_8_classical_partition_reduction() {
    let classical = classical_partition_prefix(500);
    let p1 = pk_recurrence_prefix(1, 500).unwrap();
    assert_eq!(classical.len(), p1.len());
    for (n, (a, b)) in classical.iter().zip(&p1).enumerate() {
        assert_eq!(a, b, "p(n) vs p_1(n) at n={n}");
    }
    report(
        "8. p_1(n) matches the classical pentagonal recurrence for n <= 500",
        true,
    );
}
