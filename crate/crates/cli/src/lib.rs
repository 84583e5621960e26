//! Shared pieces of the `spectile` command-line tool: set-literal parsing and
//! the serializable report schemata. The binary in `main.rs` wires these to
//! the library crate; integration tests reuse the schema types to check that
//! emitted JSON round-trips byte-identically.

pub mod literal;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid set literal: {0}")]
    Literal(String),
    #[error("invalid flag value: {0}")]
    Flag(String),
    #[error(transparent)]
    Core(#[from] spectile::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
}
