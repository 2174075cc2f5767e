use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("input: {0}")]
    Input(String),
    #[error("insufficient radius: {0}")]
    Radius(String),
}
