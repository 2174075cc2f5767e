//! Pipelines from a ball of a graph to the transducers of its boundary
//! action, as used by the `horo` binary.

mod config;
mod error;
mod pipeline;
pub mod verify;

pub use config::RunConfig;
pub use error::CliError;
pub use pipeline::{build, run_pipeline, tree, Artifact, Ball, Command, Format, Outcome, Typed};
