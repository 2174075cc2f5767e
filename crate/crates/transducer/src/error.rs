use horo_group::GroupError;
use horo_selfsimilar::SelfSimilarError;
use horo_typing::TypingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransducerError {
    #[error("input rejected: {0}")]
    InputRejected(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("synthesis diverged: {0}")]
    Diverged(String),
    #[error("insufficient radius: {0}")]
    Radius(String),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error("type graph is not branching: {0}")]
    NotBranching(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<GroupError> for TransducerError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Radius(m) => TransducerError::Radius(m),
            GroupError::Input(m) => TransducerError::InputRejected(m),
        }
    }
}

impl From<TypingError> for TransducerError {
    fn from(e: TypingError) -> Self {
        match e {
            TypingError::Radius(m) => TransducerError::Radius(m),
            TypingError::Audit(m) => TransducerError::Audit(m),
            TypingError::Input(m) => TransducerError::Parse(m),
        }
    }
}

impl From<SelfSimilarError> for TransducerError {
    fn from(e: SelfSimilarError) -> Self {
        match e {
            SelfSimilarError::Radius(m) => TransducerError::Radius(m),
            SelfSimilarError::Input(m) => TransducerError::InputRejected(m),
            SelfSimilarError::MustExpand(m) | SelfSimilarError::CodeMismatch(m) => {
                TransducerError::NotBranching(m)
            }
            SelfSimilarError::Incomplete(m) => TransducerError::Audit(m),
        }
    }
}
