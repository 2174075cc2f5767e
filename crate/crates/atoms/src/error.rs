use horo_graph::GraphError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtomError {
    #[error("insufficient radius: {0}")]
    Radius(String),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error("input: {0}")]
    Input(String),
}

impl From<GraphError> for AtomError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Radius(m) => AtomError::Radius(m),
            other => AtomError::Input(other.to_string()),
        }
    }
}
