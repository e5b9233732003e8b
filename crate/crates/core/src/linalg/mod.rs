//! Exact dense linear algebra over `Q` and over `K`.

mod field;
pub mod integer;
mod matrix;

use num_rational::BigRational;

use crate::exponent_field::ExponentScalar;
pub use field::Field;
pub use matrix::{Matrix, Rref};

pub type QMatrix = Matrix<BigRational>;
pub type KMatrix = Matrix<ExponentScalar>;

/// Reduced row echelon form, rank and pivot columns.
pub fn rref<F: Field>(a: &Matrix<F>) -> Rref<F> {
    a.rref()
}

/// Rows span the right kernel of `a`.
pub fn kernel_basis<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    a.kernel_basis()
}

/// A particular solution of `a x = b`, `None` when the system is inconsistent.
pub fn solve_linear<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    a.solve(b)
}

/// Widens a rational matrix to `K`.
pub fn q_to_k(m: &QMatrix) -> KMatrix {
    m.map(ExponentScalar::from_rational)
}
