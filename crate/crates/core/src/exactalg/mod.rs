//! Exact scalars, polynomials, determinants and rational functions.

mod det;
mod poly;
mod ratfn;
mod scalar;
pub mod zpoly;
mod zquad;

pub use det::{bareiss, determinant, minor_expansion, poly_determinant, wronskian, wronskian_int, wronskian_matrix};
pub use poly::{common_denominator, Degree, Polynomial};
pub use ratfn::{log_derivative, RationalFunction};
pub use scalar::{int, join, lift, rat, rational_parts, split, QuadExt, Scalar};
pub use zpoly::ZPoly;
pub use zquad::{integer_fraction, quad_integer_fraction, rational_pair, PolyRing, ZQuadPoly};

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("scalar fields differ: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square: {rows} rows, a row of length {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("empty input")]
    Empty,
    #[error("the zero polynomial has no logarithmic derivative")]
    ZeroPolynomial,
}
