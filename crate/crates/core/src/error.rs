use thiserror::Error;

use crate::coefficients::FieldError;
use crate::parser::ParseDiagnostics;
use crate::poly::{Order, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseDiagnostics),
    #[error("degree cap {cap} exceeded while {context}")]
    DegreeCapExceeded { cap: u32, context: String },
    #[error("the quotient is not finite-dimensional")]
    InfiniteColength,
    #[error("ord(f) = {0}, but ord(f) >= 2 is required")]
    OrderTooSmall(Order),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
