//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by basis construction, model building, evolution and
/// the experiment layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("layout must contain at least one subsystem")]
    EmptyLayout,

    #[error("boson subsystems require cutoff >= 1")]
    BosonCutoffZero,

    #[error("subsystem index {index} out of range (layout has {count})")]
    SubsystemIndex { index: usize, count: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid state specification: {0}")]
    InvalidState(String),

    #[error("state excitation {excitation} exceeds layout cap {cap}")]
    ExcitationExceedsCap { excitation: usize, cap: usize },

    #[error("density matrix invariant violated: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid network configuration: {0}")]
    InvalidConfig(String),

    #[error("invariant violated during evolution at step {step}: {what}")]
    InvariantViolation { step: usize, what: String },

    #[error("nonfinite value encountered at step {step}")]
    NonFinite { step: usize },

    #[error("superoperator guard exceeded: dim^2 = {dim_sq} > {guard}")]
    GuardExceeded { dim_sq: usize, guard: usize },

    #[error("empty series")]
    EmptySeries,

    #[error("no interior maximum in bracket [{lo}, {hi}]")]
    NoInteriorMaximum { lo: f64, hi: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown figure id: {0}")]
    UnknownFigure(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code category: 2 config, 3 physics/invariant, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::UnknownFigure(_) | Error::Json(_) => 2,
            Error::Io(_) => 4,
            _ => 3,
        }
    }
}
