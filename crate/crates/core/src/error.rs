use thiserror::Error;

/// Errors raised anywhere in the symbolic/numeric pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative radicand {0}")]
    InvalidRadicand(String),
    #[error("invalid interval: lower bound {lower} exceeds upper bound {upper}")]
    InvalidInterval { lower: String, upper: String },
    #[error("term with sigma power {0} cannot be rewritten (needs mu >= 2)")]
    NotRewritable(i32),
    #[error("term is not in a translatable class: {0}")]
    NotTranslatable(String),
    #[error("expression is not finite (divergent)")]
    NotFinite,
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("invalid problem specification: {0}")]
    InvalidSpec(String),
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("cannot parse number {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
