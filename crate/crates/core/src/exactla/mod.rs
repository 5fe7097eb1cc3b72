//! Exact arithmetic over a prime field and dense rank / kernel / solve.
//!
//! Every cohomology number in this crate is ultimately the rank of one of
//! these matrices.

mod field;
mod matrix;

pub use field::{is_prime, FieldSpec, PrimeField, DEFAULT_DEGREE_BOUND, DEFAULT_PRIME};
pub use matrix::Matrix;

/// Exact rank of `m`.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Columns form a basis of the right null space of `m`.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

/// Coordinates of `v` in the column basis of `span`, if `v` lies in the span.
pub fn solve_membership(span: &Matrix, v: &[u32]) -> crate::Result<Option<Vec<u32>>> {
    span.solve_membership(v)
}
