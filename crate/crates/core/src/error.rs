use thiserror::Error;

use crate::jordan::AlgebraKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(AlgebraKind, AlgebraKind),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not invertible")]
    Singular,
    #[error("a real element is required")]
    NotReal,
    #[error("{op}: eigenvalue outside the domain ({detail})")]
    Domain { op: &'static str, detail: String },
    #[error("numerical defect: {0}")]
    Numerical(String),
    #[error("gamma function pole at {0}")]
    Pole(String),
    #[error("inadmissible pair: {0}")]
    Inadmissible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("integrand is not finite at node {0}")]
    NonFinite(usize),
    #[error("branch-unsafe configuration: {0}")]
    BranchUnsafe(String),
}

pub type Result<T> = std::result::Result<T, Error>;
