use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular to tolerance (smallest singular value {smin:.3e})")]
    Singular { smin: f64 },
    #[error("invalid root of unity: {0}")]
    Root(String),
    #[error("invalid tolerance: rel={rel}, abs={abs}")]
    Tolerance { rel: f64, abs: f64 },
    #[error("point is not on the curve: {0}")]
    OffCurve(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("generator {0} is not available in a Borel representation")]
    NotBorel(&'static str),
    #[error("twist exponent alpha={0} has 2*alpha integral")]
    IntegerTwist(f64),
    #[error("diagonal entry {0} is zero")]
    ZeroDiagonal(usize),
    #[error("dense dimension {0} exceeds the budget")]
    Budget(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
