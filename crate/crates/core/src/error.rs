use thiserror::Error;

/// Errors surfaced by the synthesis and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SprError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("lower bound of coefficient a{index} must be positive, got {value}")]
    NonPositiveBound { index: usize, value: String },

    #[error("family is not robustly stable: vertex {vertex} = {polynomial} is not Hurwitz")]
    NotRobustlyStable { vertex: String, polynomial: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A construction that should always succeed did not. Never expected in
    /// practice; reported instead of returning an unverified answer.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

impl SprError {
    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            SprError::InvalidInput(_) => "invalid_input",
            SprError::Parse(_) => "parse_error",
            SprError::NonPositiveBound { .. } => "nonpositive_bound",
            SprError::NotRobustlyStable { .. } => "not_robustly_stable",
            SprError::Precondition(_) => "precondition_failed",
            SprError::InternalContradiction(_) => "internal_contradiction",
        }
    }
}

pub type Result<T, E = SprError> = std::result::Result<T, E>;
