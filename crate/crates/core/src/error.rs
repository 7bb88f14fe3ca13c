//! Error type shared by every module.

use thiserror::Error;

use crate::diffring::DiffPoly;

/// Position-annotated parse failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{msg} (at offset {pos})")]
pub struct ParseError {
    pub msg: String,
    pub pos: usize,
}

impl ParseError {
    pub fn new(msg: impl Into<String>, pos: usize) -> Self {
        Self {
            msg: msg.into(),
            pos,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different rings")]
    RingMismatch,
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("negative exponent on '{0}', which is not an invertible order-0 variable")]
    InvalidExponent(String),
    /// No antiderivative inside the ring; carries the remainder that could not be integrated.
    #[error("not exact: remainder {remainder}")]
    NotExact { remainder: Box<DiffPoly> },
    #[error("substitution failed: {0}")]
    Substitution(String),
    #[error("reduction did not terminate after {passes} passes (inconsistent rules?)")]
    ReductionDiverged {
        passes: usize,
        partial: Box<DiffPoly>,
    },
    #[error("invalid rewrite rule: {0}")]
    InvalidRule(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("structural violation: {0}")]
    Structural(String),
    #[error("numeric: {0}")]
    Numeric(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
