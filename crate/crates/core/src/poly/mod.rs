//! Dense multivariate and univariate polynomials over a [`FieldSpec`].
//!
//! [`FieldSpec`]: crate::field::FieldSpec

mod format;
mod monomial;
mod multi;
mod space;
mod uni;

pub use format::ParseError;
pub use monomial::{homogeneous_count, monomial_count, Monomial, MonomialTable};
pub use multi::{compose, Degree, MultiPoly};
pub use space::{MonicOriginalIter, UnivariateExactIter};
pub use uni::UniPoly;


use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("monomial degree {degree} exceeds cap {cap}")]
    DegreeExceeded { degree: u32, cap: u32 },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("result degree {degree} exceeds cap {cap}")]
    CapOverflow { degree: u32, cap: u32 },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operands have {0} and {1} variables")]
    VariableMismatch(usize, usize),
    #[error("{0} coefficients do not fit in memory")]
    TooLarge(String),
    #[error("invalid encoding: {0}")]
    Decode(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
