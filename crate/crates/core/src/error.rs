use thiserror::Error;

/// Errors raised by net construction, firing and the transformations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown {kind} `{id}`")]
    NotFound { kind: &'static str, id: String },
    #[error("`{0}` is already declared")]
    Conflict(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("multiset difference undefined: left operand is not a sub-multiset of the right")]
    Domain,
    #[error("transition `{transition}` is not enabled{}", step.map(|s| format!(" at step {s}")).unwrap_or_default())]
    NotEnabled {
        transition: String,
        step: Option<usize>,
    },
    #[error("not a workflow net: {0}")]
    NotWorkflow(String),
    #[error("label `{0}` occurs on more than one transition")]
    Ambiguous(String),
    #[error("reserved type name `{0}`")]
    ReservedType(String),
}

impl Error {
    pub(crate) fn not_found(kind: &'static str, id: impl Into<String>) -> Self {
        Error::NotFound {
            kind,
            id: id.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
