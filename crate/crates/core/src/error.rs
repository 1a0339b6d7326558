use std::path::PathBuf;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {row}:{col} is outside the {m}x{n} {variant} graph")]
    InvalidVertex {
        row: usize,
        col: usize,
        m: usize,
        n: usize,
        variant: &'static str,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("infeasible full-row plan: {0}")]
    InfeasiblePlan(String),

    #[error("oracle refused: {0}")]
    OracleLimit(String),

    #[error("inconsistent solver tables: {0}")]
    InconsistentTables(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("solver emitted an invalid tour for {cell}: {detail}")]
    InvalidResult { cell: String, detail: String },

    #[error("algorithm {algorithm} requires a two_sided instance")]
    RequiresTwoSided { algorithm: &'static str },
}
