use horo_atoms::AtomError;
use horo_graph::GraphError;
use horo_group::GroupError;
use horo_proximal::ProximalError;
use horo_selfsimilar::SelfSimilarError;
use horo_transducer::TransducerError;
use horo_typing::TypingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("insufficient radius: {0}")]
    Radius(String),
    #[error("synthesis diverged: {0}")]
    Diverged(String),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Other(_) => 1,
            CliError::Input(_) => 2,
            CliError::Radius(_) => 3,
            CliError::Diverged(_) => 4,
            CliError::Audit(_) => 5,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Radius(m) => CliError::Radius(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Radius(m) => CliError::Radius(m),
            GroupError::Input(m) => CliError::Input(m),
        }
    }
}

impl From<AtomError> for CliError {
    fn from(e: AtomError) -> Self {
        match e {
            AtomError::Radius(m) => CliError::Radius(m),
            AtomError::Audit(m) => CliError::Audit(m),
            AtomError::Input(m) => CliError::Input(m),
        }
    }
}

impl From<ProximalError> for CliError {
    fn from(e: ProximalError) -> Self {
        match e {
            ProximalError::Radius(m) => CliError::Radius(m),
            ProximalError::Input(m) => CliError::Input(m),
        }
    }
}

impl From<TypingError> for CliError {
    fn from(e: TypingError) -> Self {
        match e {
            TypingError::Radius(m) => CliError::Radius(m),
            TypingError::Audit(m) => CliError::Audit(m),
            TypingError::Input(m) => CliError::Input(m),
        }
    }
}

impl From<SelfSimilarError> for CliError {
    fn from(e: SelfSimilarError) -> Self {
        match e {
            SelfSimilarError::Radius(m) => CliError::Radius(m),
            SelfSimilarError::Input(m) => CliError::Input(m),
            SelfSimilarError::Incomplete(m)
            | SelfSimilarError::MustExpand(m)
            | SelfSimilarError::CodeMismatch(m) => CliError::Audit(m),
        }
    }
}

impl From<TransducerError> for CliError {
    fn from(e: TransducerError) -> Self {
        match e {
            TransducerError::Radius(m) => CliError::Radius(m),
            TransducerError::Diverged(m) => CliError::Diverged(m),
            TransducerError::InputRejected(m)
            | TransducerError::Parse(m)
            | TransducerError::AlphabetMismatch(m) => CliError::Input(m),
            TransducerError::Audit(m) | TransducerError::NotBranching(m) => CliError::Audit(m),
        }
    }
}
