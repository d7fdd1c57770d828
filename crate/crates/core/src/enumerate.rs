//! Brute-force enumeration oracles: generate every k-colored partition or
//! plane partition of small n and count them. Slow on purpose — these exist
//! to cross-check the formula paths, not to be fast.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Largest n either enumerator accepts.
pub const MAX_ENUM_N: u64 = 12;
/// Largest color count the colored enumerator accepts.
pub const MAX_ENUM_K: u64 = 4;

/// A plane partition as a ragged array of rows, non-increasing along every
/// row and down every column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePartitionDiagram {
    rows: Vec<Vec<u64>>,
}

impl PlanePartitionDiagram {
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn total(&self) -> u64 {
        self.rows.iter().flatten().sum()
    }

    /// Both monotonicity constraints, over every defined cell.
    pub fn is_valid(&self) -> bool {
        for (i, row) in self.rows.iter().enumerate() {
            if row.is_empty() || row.contains(&0) {
                return false;
            }
            if row.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
            if i > 0 {
                let above = &self.rows[i - 1];
                if row.len() > above.len() {
                    return false;
                }
                if row.iter().zip(above).any(|(lo, hi)| lo > hi) {
                    return false;
                }
            }
        }
        true
    }
}

/// A k-colored partition in canonical order: pairs (part, color) sorted by
/// non-increasing part, colors non-increasing within equal parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPartition {
    parts: Vec<(u64, u64)>,
}

impl ColoredPartition {
    pub fn parts(&self) -> &[(u64, u64)] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&(v, _)| v).sum()
    }

    pub fn is_canonical(&self, k: u64) -> bool {
        self.parts.iter().all(|&(v, c)| v >= 1 && c >= 1 && c <= k)
            && self.parts.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Generate every plane partition of n, row by row, each row dominated
/// entrywise by the one above it.
pub fn plane_partitions(n: u64) -> Result<Vec<PlanePartitionDiagram>> {
    if n > MAX_ENUM_N {
        return Err(Error::UnsupportedSize(format!(
            "plane enumeration window is n <= {MAX_ENUM_N}, got {n}"
        )));
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(PlanePartitionDiagram { rows: Vec::new() });
        return Ok(out);
    }
    let top_bound = vec![n; n as usize];
    let mut rows: Vec<Vec<u64>> = Vec::new();
    descend_rows(n, &top_bound, &mut rows, &mut out);
    Ok(out)
}

fn descend_rows(
    remaining: u64,
    bound: &[u64],
    rows: &mut Vec<Vec<u64>>,
    out: &mut Vec<PlanePartitionDiagram>,
) {
    if remaining == 0 {
        out.push(PlanePartitionDiagram { rows: rows.clone() });
        return;
    }
    let mut row = Vec::new();
    extend_row(remaining, bound, 0, u64::MAX, &mut row, rows, out);
}

// Grow the current row cell by cell; whenever the row is non-empty it may
// close and recurse into the next row with itself as the new bound.
fn extend_row(
    remaining: u64,
    bound: &[u64],
    col: usize,
    prev_in_row: u64,
    row: &mut Vec<u64>,
    rows: &mut Vec<Vec<u64>>,
    out: &mut Vec<PlanePartitionDiagram>,
) {
    if !row.is_empty() {
        rows.push(row.clone());
        descend_rows(remaining, &rows.last().unwrap().clone(), rows, out);
        rows.pop();
    }
    if col >= bound.len() {
        return;
    }
    let cap = prev_in_row.min(bound[col]).min(remaining);
    for v in (1..=cap).rev() {
        row.push(v);
        extend_row(remaining - v, bound, col + 1, v, row, rows, out);
        row.pop();
    }
}

/// Count plane partitions of n within the enumeration window.
pub fn oracle_enumerate_plane(n: u64) -> Result<BigInt> {
    let diagrams = plane_partitions(n)?;
    debug_assert!(diagrams.iter().all(PlanePartitionDiagram::is_valid));
    Ok(BigInt::from(diagrams.len()))
}

/// Generate every k-colored partition of n: pairs (part, color) chosen in
/// non-increasing lexicographic order, so each multiset appears once.
pub fn colored_partitions(k: u64, n: u64) -> Result<Vec<ColoredPartition>> {
    if n > MAX_ENUM_N || k > MAX_ENUM_K {
        return Err(Error::UnsupportedSize(format!(
            "colored enumeration window is n <= {MAX_ENUM_N}, k <= {MAX_ENUM_K}, got n={n}, k={k}"
        )));
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    descend_colored(k, n, n, k, &mut parts, &mut out);
    Ok(out)
}

fn descend_colored(
    k: u64,
    remaining: u64,
    max_part: u64,
    max_color_at_max: u64,
    parts: &mut Vec<(u64, u64)>,
    out: &mut Vec<ColoredPartition>,
) {
    if remaining == 0 {
        out.push(ColoredPartition {
            parts: parts.clone(),
        });
        return;
    }
    for v in (1..=max_part.min(remaining)).rev() {
        let color_cap = if v == max_part { max_color_at_max } else { k };
        for c in (1..=color_cap).rev() {
            parts.push((v, c));
            descend_colored(k, remaining - v, v, c, parts, out);
            parts.pop();
        }
    }
}

/// Count k-colored partitions of n within the enumeration window.
pub fn oracle_enumerate_colored(k: u64, n: u64) -> Result<BigInt> {
    let partitions = colored_partitions(k, n)?;
    debug_assert!(partitions.iter().all(|p| p.is_canonical(k)));
    Ok(BigInt::from(partitions.len()))
}
