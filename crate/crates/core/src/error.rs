use thiserror::Error;

/// Errors raised by the algebra, variety and correspondence layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator count mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator count {0} exceeds the supported maximum of 64")]
    TooManyGenerators(usize),

    #[error("element is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: usize },

    #[error("class lives on {found}, expected {expected}")]
    VarietyMismatch { expected: String, found: String },

    #[error("matrix of size {rows}x{cols} does not fit a map {source_dim} -> {target_dim}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        source_dim: usize,
        target_dim: usize,
    },

    #[error("not an isogeny: {0}")]
    NotAnIsogeny(String),

    #[error("orientation must list all {0} generators")]
    BadOrientation(usize),

    #[error("{0}")]
    Unsupported(String),

    #[error("conflicting values at {slot}: {existing} [{existing_trace}] vs {proposed} [{proposed_trace}]")]
    RuleConflict {
        slot: String,
        existing: String,
        existing_trace: String,
        proposed: String,
        proposed_trace: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
