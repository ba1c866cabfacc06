use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CatError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CatError {
    #[error("empty initial distribution")]
    EmptyDistribution,

    #[error("lattice point ({i}, {j}) outside [0, {n})^2")]
    PointOutOfRange { i: usize, j: usize, n: usize },

    #[error("qubit count per register must be at least 2, got {0}")]
    RegisterTooSmall(usize),

    #[error("register layout too large: {0} qubits")]
    LayoutTooLarge(usize),

    #[error("duplicate qubit index {0} in gate")]
    DuplicateQubit(usize),

    #[error("qubit index {qubit} out of range for {total} qubits")]
    QubitOutOfRange { qubit: usize, total: usize },

    #[error("register size mismatch: {0}")]
    RegisterMismatch(String),

    #[error("workspace not cleared (probability {mass:e} outside work = 0)")]
    WorkspaceNotCleared { mass: f64 },

    #[error("states have different register layouts")]
    LayoutMismatch,

    #[error("coarse-graining level n_g = {n_g} outside 1..={n_q}")]
    CoarseLevel { n_g: usize, n_q: usize },

    #[error("lattice too small for smile (n_q = {0}, need at least 4)")]
    LatticeTooSmall(usize),

    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("norm drift {drift:e} at t = {t} exceeds {limit:e}")]
    NormDrift { t: usize, drift: f64, limit: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl CatError {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        CatError::Config {
            field: field.to_owned(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CatError::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by user-supplied configuration or input files.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            CatError::Config { .. }
                | CatError::Parse { .. }
                | CatError::EmptyDistribution
                | CatError::PointOutOfRange { .. }
                | CatError::RegisterTooSmall(_)
                | CatError::LayoutTooLarge(_)
                | CatError::CoarseLevel { .. }
                | CatError::LatticeTooSmall(_)
        )
    }

    /// Short machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            CatError::Io { .. } | CatError::Csv { .. } => "io",
            CatError::NormDrift { .. } => "numerical",
            e if e.is_config_error() => "config",
            _ => "runtime",
        }
    }
}
