//! Exact arithmetic over ℚ(s) and exact linear algebra.

mod field;
mod lattice;
mod matrix;
mod parse;
mod poly;
mod rational;
mod scalar;
mod subspace;

pub use field::Field;
pub use lattice::{
    clear_rational_denominators, column_hnf, complete_to_unimodular, hnf_lattice, row_hnf, saturated_integer_basis,
    ColumnHnf, IntLattice, LatticeError,
};
pub use matrix::{axpy, coordinates, dot, scale_vec, Matrix, Rref};
pub use parse::ScalarParseError;
pub use poly::Poly;
pub use rational::{clear_denominators, embed, embed_vector, is_defined_over_q, monomial_components, q_decompose, rational_subspace};
pub use scalar::Scalar;
pub use subspace::{AmbientMismatch, Subspace, SubspaceOps};

pub type Rational = num_rational::BigRational;
pub type ScalarMatrix = Matrix<Scalar>;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses a rational literal such as `17/12` or `-3`.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarParseError> {
    let x = Scalar::parse(text)?;
    x.as_rational().ok_or_else(|| ScalarParseError::Syntax {
        text: text.to_string(),
        pos: 0,
        msg: "expected a rational number, found an expression in s".into(),
    })
}
