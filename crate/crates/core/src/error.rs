use thiserror::Error;

/// Errors raised by the algebraic and analytic operations of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FueterError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid dimension n = {n}: {reason}")]
    InvalidDimension { n: usize, reason: &'static str },

    #[error("blade mask {mask:#b} uses generators beyond e_{n}")]
    InvalidMask { mask: u32, n: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point lies outside the region of validity: {0}")]
    Region(String),

    #[error("representation error: {0}")]
    Representation(String),

    #[error("series did not converge within {max_terms} terms")]
    NotConverged { max_terms: usize },

    #[error("non-intrinsic function: imaginary residue {residue:e} exceeds {tol:e}")]
    NonIntrinsic { residue: f64, tol: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FueterError>;
