//! Error type shared by all toolkit stages.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid argument: {0}")]
    InvalidInput(String),
    #[error("solver did not converge: relative residual {residual:.3e} after {iterations} iterations")]
    SolverDiverged { iterations: usize, residual: f64 },
    #[error("unstable wave-solver configuration: {0}")]
    UnstableConfig(String),
    #[error("incomplete measurement data: {0}")]
    IncompleteData(String),
    #[error("phantom violates the sigma = 1 boundary band: {0}")]
    PhantomSupport(String),
    #[error("singular 3x3 system (|det| = {0:.3e})")]
    SingularSystem(f64),
    #[error("spectral consistency violation: {0}")]
    SpectralConsistency(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad file format: {0}")]
    Format(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config error: {0}")]
    Config(String),
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with the pipeline stage it came from.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
