use thiserror::Error;

use crate::Vid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("input format: {0}")]
    Input(String),
    #[error("insufficient radius: {0}")]
    Radius(String),
    #[error("vertex {0} is not in the ball")]
    UnknownVertex(Vid),
}

impl GraphError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        GraphError::Input(msg.into())
    }

    pub(crate) fn radius(msg: impl Into<String>) -> Self {
        GraphError::Radius(msg.into())
    }
}
