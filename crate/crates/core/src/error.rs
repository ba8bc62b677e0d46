use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("truncation: coefficient of exponent {exp} requested but series known only through {order}")]
    Truncation { exp: i64, order: i64 },
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("radicand mismatch: {0} + {1}")]
    RadicandMismatch(String, String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("decomposition: {0}")]
    Decomposition(String),
    #[error("not exact: {0}")]
    NotExact(String),
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error("inconsistent: {0}")]
    Inconsistent(String),
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, MathError>;

impl MathError {
    pub fn pole(msg: impl Into<String>) -> Self {
        MathError::Pole(msg.into())
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, MathError::Pole(_))
    }
}
