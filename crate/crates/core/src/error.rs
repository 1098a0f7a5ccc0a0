use thiserror::Error;

use crate::wick::Signature;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("mode index {index} out of range for {d} modes")]
    ModeIndex { index: usize, d: usize },

    #[error("unsupported signature {0}")]
    UnsupportedSignature(Signature),

    #[error("product of {left} and {right} produces unsupported signature {result}")]
    UnsupportedProduct {
        left: Signature,
        right: Signature,
        result: Signature,
    },

    #[error("kernel is not skew-symmetric (max deviation {deviation:e})")]
    NotSkew { deviation: f64 },

    #[error("sector {sector} tensor is not symmetric (max deviation {deviation:e})")]
    NotSymmetric { sector: usize, deviation: f64 },

    #[error("creator degree {degree} exceeds guard band {guard}")]
    GuardExceeded { degree: usize, guard: usize },

    #[error("derivative order {order} exceeds cap {cap}")]
    DerivativeOrder { order: usize, cap: usize },

    #[error("bracket closure did not stabilize within {rounds} rounds (dimension {dim})")]
    NotClosed { rounds: usize, dim: usize },

    #[error("element is not in the span of the basis (residual {residual:e})")]
    OutsideSpan { residual: f64 },

    #[error("constraint `{constraint}` violated (residual {residual:e})")]
    Constraint { constraint: String, residual: f64 },
}
