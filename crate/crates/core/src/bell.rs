//! Exact partial and complete Bell polynomials over integer argument
//! sequences, evaluated by recurrence, by the explicit nested-sum formula,
//! and through the Hessenberg determinant representation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, pentagonal_lambda, DivisorSumTable};
use crate::error::{Error, Result};

/// The explicit nested-sum evaluator is test-only and capped here; the
/// nested sum is exponential in the number of parts.
pub const EXPLICIT_MAX_N: usize = 12;

/// How a Bell argument sequence was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// x_i = λ_i (pentagonal coefficients).
    Pentagonal,
    /// x_i = k·(i−1)!·σ(i).
    Colored(u64),
    /// x_i = (i−1)!·σ₂(i).
    Plane,
    Custom,
}

/// A finite sequence x₁..x_N of exact integers fed to the Bell evaluators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellArgumentSequence {
    values: Vec<BigInt>,
    provenance: Provenance,
}

impl BellArgumentSequence {
    /// λ₁..λ_len from the pentagonal classification.
    pub fn pentagonal(len: usize) -> Self {
        let values = (1..=len as u64)
            .map(|i| pentagonal_lambda(i).value)
            .collect();
        Self {
            values,
            provenance: Provenance::Pentagonal,
        }
    }

    /// x_i = k·(i−1)!·σ(i) over the whole divisor table.
    pub fn colored(k: u64, table: &DivisorSumTable) -> Self {
        let mut values = Vec::with_capacity(table.max_n());
        let mut fact = BigInt::one(); // (i-1)!
        for i in 1..=table.max_n() {
            if i > 1 {
                fact *= (i - 1) as u64;
            }
            values.push(&fact * k * table.sigma1(i));
        }
        Self {
            values,
            provenance: Provenance::Colored(k),
        }
    }

    /// x_i = (i−1)!·σ₂(i) over the whole divisor table.
    pub fn plane(table: &DivisorSumTable) -> Self {
        let mut values = Vec::with_capacity(table.max_n());
        let mut fact = BigInt::one();
        for i in 1..=table.max_n() {
            if i > 1 {
                fact *= (i - 1) as u64;
            }
            values.push(&fact * table.sigma2(i));
        }
        Self {
            values,
            provenance: Provenance::Plane,
        }
    }

    pub fn custom(values: Vec<BigInt>) -> Self {
        Self {
            values,
            provenance: Provenance::Custom,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// x_i, 1-based. Panics outside 1..=len.
    pub fn x(&self, i: usize) -> &BigInt {
        &self.values[i - 1]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// Triangular table of partial Bell values B_{n,l} for a fixed argument
/// sequence, with 0 ≤ l ≤ min(n, l_max) and 0 ≤ n ≤ n_max.
#[derive(Debug, Clone)]
pub struct PartialBellTable {
    n_max: usize,
    l_max: usize,
    rows: Vec<Vec<BigInt>>,
    args: BellArgumentSequence,
}

impl PartialBellTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    /// B_{n,l}. Panics outside the built triangle.
    pub fn entry(&self, n: usize, l: usize) -> &BigInt {
        assert!(
            n <= self.n_max && l <= self.l_max.min(n),
            "B_{{{n},{l}}} outside built table"
        );
        &self.rows[n][l]
    }

    /// Σ_{l} B_{n,l} over the stored row.
    pub fn row_sum(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }

    pub fn args(&self) -> &BellArgumentSequence {
        &self.args
    }
}

/// Fill the triangle by the recurrence
/// B_{n,l} = Σ_{i=1}^{n−l+1} C(n−1, i−1) x_i B_{n−i,l−1}
/// with base cases B_{0,0} = 1, B_{n,0} = 0 (n ≥ 1), B_{0,l} = 0 (l ≥ 1).
///
/// Zero arguments (pervasive for the pentagonal sequence) are skipped in
/// the inner sum.
pub fn partial_bell_table(
    args: &BellArgumentSequence,
    n_max: usize,
    l_max: usize,
) -> Result<PartialBellTable> {
    if args.len() < n_max {
        return Err(Error::Domain(format!(
            "argument sequence has {} values, table needs {n_max}",
            args.len()
        )));
    }
    let l_cap = l_max.min(n_max);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![BigInt::one()]);
    // C(n-1, .) row, advanced as n grows
    let mut binrow = vec![BigInt::one()];
    for n in 1..=n_max {
        let width = l_cap.min(n);
        let mut row = vec![BigInt::zero(); width + 1];
        for (l, slot) in row.iter_mut().enumerate().skip(1) {
            let mut sum = BigInt::zero();
            for i in 1..=(n - l + 1) {
                let x = args.x(i);
                if x.is_zero() {
                    continue;
                }
                // i <= n-l+1 keeps l-1 within row n-i of the triangle
                let b = &rows[n - i][l - 1];
                if b.is_zero() {
                    continue;
                }
                sum += &binrow[i - 1] * x * b;
            }
            *slot = sum;
        }
        rows.push(row);
        // advance binomial row from C(n-1, .) to C(n, .)
        let mut next = Vec::with_capacity(binrow.len() + 1);
        next.push(BigInt::one());
        for j in 1..binrow.len() {
            next.push(&binrow[j - 1] + &binrow[j]);
        }
        next.push(BigInt::one());
        binrow = next;
    }
    Ok(PartialBellTable {
        n_max,
        l_max: l_cap,
        rows,
        args: args.clone(),
    })
}

/// Evaluate B_{n,l} by the explicit nested-sum formula, literally:
/// an (l−1)-fold sum of binomial-weighted argument products divided by l!.
///
/// Capped at n ≤ [`EXPLICIT_MAX_N`]; this path exists for cross-checking
/// the recurrence, not as a production evaluator. The l = 1 case degenerates
/// to the single term x_n.
pub fn partial_bell_explicit(args: &BellArgumentSequence, n: usize, l: usize) -> Result<BigInt> {
    if n > EXPLICIT_MAX_N || l < 1 || l > n {
        return Err(Error::UnsupportedSize(format!(
            "explicit formula supports 1 <= l <= n <= {EXPLICIT_MAX_N}, got n={n}, l={l}"
        )));
    }
    if args.len() < n {
        return Err(Error::Domain(format!(
            "argument sequence has {} values, need {n}",
            args.len()
        )));
    }
    if l == 1 {
        return Ok(args.x(n).clone());
    }
    let depth = l - 1;
    let mut total = BigInt::zero();
    // alpha_0 = n; alpha_j runs over [depth - j + 1, alpha_{j-1} - 1];
    // each level contributes C(alpha_{j-1}, alpha_j) * x_{alpha_{j-1} - alpha_j},
    // the innermost an extra x_{alpha_depth}.
    fn descend(
        args: &BellArgumentSequence,
        level: usize,
        depth: usize,
        prev_alpha: usize,
        partial: &BigInt,
        total: &mut BigInt,
    ) {
        let low = depth - level + 1;
        for alpha in low..=(prev_alpha - 1) {
            let weight =
                crate::arith::binomial(prev_alpha as u64, alpha as u64).expect("alpha <= prev");
            let term = partial * weight * args.x(prev_alpha - alpha);
            if level == depth {
                *total += term * args.x(alpha);
            } else {
                descend(args, level + 1, depth, alpha, &term, total);
            }
        }
    }
    descend(args, 1, depth, n, &BigInt::one(), &mut total);
    exact_div(
        total,
        &factorial(l as u64),
        "explicit partial Bell prefactor",
    )
}

/// Complete Bell values B₀..B_n by the recurrence
/// B_{m+1} = Σ_{i=0}^{m} C(m,i) B_{m−i} x_{i+1}, with B₀ = 1.
pub fn complete_bell_prefix(args: &BellArgumentSequence, n: usize) -> Result<Vec<BigInt>> {
    if args.len() < n {
        return Err(Error::Domain(format!(
            "argument sequence has {} values, need {n}",
            args.len()
        )));
    }
    let mut values = Vec::with_capacity(n + 1);
    values.push(BigInt::one());
    let mut binrow = vec![BigInt::one()]; // C(m, .) while computing B_{m+1}
    for m in 0..n {
        let mut sum = BigInt::zero();
        for i in 0..=m {
            let x = args.x(i + 1);
            if x.is_zero() {
                continue;
            }
            sum += &binrow[i] * &values[m - i] * x;
        }
        values.push(sum);
        let mut next = Vec::with_capacity(binrow.len() + 1);
        next.push(BigInt::one());
        for j in 1..binrow.len() {
            next.push(&binrow[j - 1] + &binrow[j]);
        }
        next.push(BigInt::one());
        binrow = next;
    }
    Ok(values)
}

/// The n-th complete Bell polynomial value B_n(x₁..x_n).
pub fn complete_bell(args: &BellArgumentSequence, n: usize) -> Result<BigInt> {
    Ok(complete_bell_prefix(args, n)?.pop().expect("nonempty"))
}

/// Encodes the n×n upper-Hessenberg matrix with first-row generators
/// c₁..c_n: M[i][j] = c_{j−i+1} for j ≥ i, M[i][i−1] = −(i−1), zero below
/// the first subdiagonal (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HessenbergSpec {
    c: Vec<BigInt>,
}

impl HessenbergSpec {
    pub fn new(c: Vec<BigInt>) -> Self {
        Self { c }
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn generators(&self) -> &[BigInt] {
        &self.c
    }

    /// The dense matrix this spec encodes.
    pub fn materialize(&self) -> Vec<Vec<BigInt>> {
        let n = self.c.len();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if j + 1 >= i {
                    if j >= i {
                        *cell = self.c[j - i].clone();
                    } else {
                        *cell = -BigInt::from(i as u64); // subdiagonal -(i) at row i+1 (1-based -(i-1))
                    }
                }
            }
        }
        m
    }
}

/// Leading principal determinants D₀..D_n of the encoded matrix, by a
/// division-free last-column expansion:
/// D_j = Σ_{m=1}^{j} (j−1)!/(j−m)! · c_m · D_{j−m}, with the falling
/// weight built incrementally. O(n²) exact-integer operations.
pub fn hessenberg_det_prefix(spec: &HessenbergSpec) -> Vec<BigInt> {
    let n = spec.dim();
    let mut dets = Vec::with_capacity(n + 1);
    dets.push(BigInt::one());
    for j in 1..=n {
        let mut weight = BigInt::one(); // (j-1)!/(j-m)! at the current m
        let mut sum = BigInt::zero();
        for m in 1..=j {
            if m > 1 {
                weight *= (j - m + 1) as u64;
            }
            let c = &spec.generators()[m - 1];
            if c.is_zero() {
                continue;
            }
            sum += &weight * c * &dets[j - m];
        }
        dets.push(sum);
    }
    dets
}

/// Determinant of the encoded matrix. Requires dimension ≥ 1.
pub fn hessenberg_det(spec: &HessenbergSpec) -> BigInt {
    assert!(spec.dim() >= 1, "hessenberg_det needs dimension >= 1");
    hessenberg_det_prefix(spec).pop().expect("nonempty")
}

/// Dense determinant by cofactor expansion along the first row.
///
/// Test oracle for [`hessenberg_det`]; capped at 10×10.
pub fn dense_det_oracle(matrix: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Domain(
            "determinant oracle needs a square matrix".into(),
        ));
    }
    if n > 10 {
        return Err(Error::UnsupportedSize(format!(
            "determinant oracle capped at 10x10, got {n}x{n}"
        )));
    }
    fn expand(matrix: &[Vec<BigInt>]) -> BigInt {
        let n = matrix.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return matrix[0][0].clone();
        }
        let mut det = BigInt::zero();
        for col in 0..n {
            if matrix[0][col].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = matrix[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let cofactor = &matrix[0][col] * expand(&minor);
            if col % 2 == 0 {
                det += cofactor;
            } else {
                det -= cofactor;
            }
        }
        det
    }
    Ok(expand(matrix))
}

/// Divide exactly, flagging any remainder as an implementation bug.
pub(crate) fn exact_div(value: BigInt, divisor: &BigInt, what: &str) -> Result<BigInt> {
    use num_integer::Integer;
    let (q, r) = value.div_rem(divisor);
    if !r.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "division by {divisor} in {what} left remainder {r}"
        )));
    }
    Ok(q)
}
