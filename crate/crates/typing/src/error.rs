use horo_atoms::AtomError;
use horo_graph::GraphError;
use horo_group::GroupError;
use horo_proximal::ProximalError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypingError {
    #[error("insufficient radius: {0}")]
    Radius(String),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error("input: {0}")]
    Input(String),
}

impl From<GraphError> for TypingError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Radius(m) => TypingError::Radius(m),
            other => TypingError::Input(other.to_string()),
        }
    }
}

impl From<GroupError> for TypingError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Radius(m) => TypingError::Radius(m),
            GroupError::Input(m) => TypingError::Input(m),
        }
    }
}

impl From<AtomError> for TypingError {
    fn from(e: AtomError) -> Self {
        match e {
            AtomError::Radius(m) => TypingError::Radius(m),
            AtomError::Audit(m) => TypingError::Audit(m),
            AtomError::Input(m) => TypingError::Input(m),
        }
    }
}

impl From<ProximalError> for TypingError {
    fn from(e: ProximalError) -> Self {
        match e {
            ProximalError::Radius(m) => TypingError::Radius(m),
            ProximalError::Input(m) => TypingError::Input(m),
        }
    }
}
