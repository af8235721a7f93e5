use thiserror::Error;

use crate::textio::SourceSpan;

pub type Result<T, E = OrdError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdError {
    /// Input lies outside the sublanguage an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition (validated input, irreducibility, ...) failed.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("syntax error at {span}: {message}")]
    Syntax { span: SourceSpan, message: String },
    #[error("format error: {0}")]
    Format(String),
    /// The comparator recursed past its configured depth guard.
    #[error("comparison depth limit {0} exceeded")]
    DepthExceeded(u32),
    /// Neither or both strict directions of the collapsing-term case analysis held.
    #[error("comparison case analysis not exhaustive: {0}")]
    NotExhaustive(String),
}

impl OrdError {
    pub fn domain(msg: impl Into<String>) -> Self {
        OrdError::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        OrdError::Precondition(msg.into())
    }
}
