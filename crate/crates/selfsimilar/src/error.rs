use horo_group::GroupError;
use horo_typing::TypingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelfSimilarError {
    #[error("classification incomplete: {0}")]
    Incomplete(String),
    #[error("type graph must be expanded first: {0}")]
    MustExpand(String),
    #[error("code mismatch: {0}")]
    CodeMismatch(String),
    #[error("insufficient radius: {0}")]
    Radius(String),
    #[error("input: {0}")]
    Input(String),
}

impl From<GroupError> for SelfSimilarError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Radius(m) => SelfSimilarError::Radius(m),
            GroupError::Input(m) => SelfSimilarError::Input(m),
        }
    }
}

impl From<TypingError> for SelfSimilarError {
    fn from(e: TypingError) -> Self {
        match e {
            TypingError::Radius(m) => SelfSimilarError::Radius(m),
            TypingError::Audit(m) => SelfSimilarError::Incomplete(m),
            TypingError::Input(m) => SelfSimilarError::Input(m),
        }
    }
}
