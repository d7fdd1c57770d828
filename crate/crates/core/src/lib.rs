//! Exact counting of k-colored partitions p_k(n) and plane partitions pp(n).
//!
//! Four independent routes are implemented for each family — a partial-Bell
//! formula over pentagonal coefficients (colored only), a complete-Bell
//! formula over divisor-sum arguments, an upper-Hessenberg determinant, and
//! a normalized divisor-sum recurrence — plus two oracles (exact truncated
//! generating functions and brute-force enumeration) used to cross-validate
//! all of them. Every value is an arbitrary-precision integer; divisions by
//! n and n! are asserted exact at runtime.
//!
//! The `parallel` feature (on by default) runs verification sweeps
//! data-parallel via rayon; disabling it leaves a sequential fallback with
//! identical results.

pub mod arith;
pub mod bell;
pub mod counts;
pub mod enumerate;
pub mod error;
pub mod series;
pub mod verify;

pub use counts::{CountResult, Counter, Family, Method};
pub use error::{Error, Result};
