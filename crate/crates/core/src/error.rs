//! Error type shared across the simulator.
//!
//! Every fallible routine returns [`ModelError`].  Errors are split into
//! two families for process-exit purposes: *input* errors (bad calibration
//! or scenario files, invalid horizons) and *simulation* errors (solver
//! breakdowns, audit failures, degenerate runtime state).

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, ModelError>;

/// All failure modes of the simulator.
#[derive(Debug, Error)]
pub enum ModelError {
    /// A calibration or scenario file could not be parsed at all.
    #[error("syntax error in {file} at line {line}: {message}")]
    Syntax {
        file: String,
        line: usize,
        message: String,
    },

    /// A file parsed but its content does not match the expected shape.
    #[error("schema error in {location}: {message}")]
    Schema { location: String, message: String },

    /// A value parsed but violates a documented range or consistency rule.
    #[error("range error: {field} = {value} must satisfy {constraint}")]
    Range {
        field: String,
        value: f64,
        constraint: String,
    },

    /// The input–output matrix is non-productive: its spectral radius is
    /// at or above one, so demand cannot be met by finite output.
    #[error("input-output matrix is not productive (spectral radius estimate {rho:.6} >= 1)")]
    SingularEconomy { rho: f64 },

    /// The fixed-point output solver failed to reach tolerance.
    #[error("output solver did not converge after {iterations} iterations (relative residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    /// A component id that is not part of the accounting registry.
    #[error("unknown welfare component `{0}`")]
    UnknownComponent(String),

    /// The same component appeared twice while assembling an index.
    #[error("duplicate welfare component `{component}` while assembling {index}")]
    DuplicateComponent { component: String, index: String },

    /// An index definition requires a component that was never computed.
    #[error("missing welfare component `{component}` required by {index}")]
    MissingComponent { component: String, index: String },

    /// An environmental cost has no unit cost in the calibration.
    #[error("no unit cost calibrated for `{0}`")]
    MissingUnitCost(String),

    /// The emission target for a year is not positive, so the controller
    /// gap is undefined.
    #[error("carbon target for year {year} is not positive ({value})")]
    ZeroTarget { year: i32, value: f64 },

    /// A time-use profile is unusable (entries negative or the weekly
    /// total is wrong).
    #[error("degenerate time-use profile for {0}: {1}")]
    DegenerateProfile(String, String),

    /// The stock-flow audit found non-zero total net lending.
    #[error("stock-flow audit failed in {year}: net lending across agents sums to {residual:.6e}, tolerance {tolerance:.6e}")]
    Inconsistency {
        year: i32,
        residual: f64,
        tolerance: f64,
    },

    /// Trajectories built from different calibrations were compared.
    #[error("calibration fingerprint mismatch: {left} vs {right}")]
    FingerprintMismatch { left: String, right: String },

    /// A requested simulation horizon is malformed or unsupported.
    #[error("invalid horizon {start}:{end}: {message}")]
    BadHorizon {
        start: i32,
        end: i32,
        message: String,
    },

    /// Underlying file-system failure.
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl ModelError {
    /// Process exit code the CLI maps this error to: `2` for input
    /// errors, `3` for simulation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            ModelError::Syntax { .. }
            | ModelError::Schema { .. }
            | ModelError::Range { .. }
            | ModelError::SingularEconomy { .. }
            | ModelError::DegenerateProfile(..)
            | ModelError::MissingUnitCost(..)
            | ModelError::BadHorizon { .. }
            | ModelError::FingerprintMismatch { .. }
            | ModelError::Io { .. } => 2,
            ModelError::NonConvergence { .. }
            | ModelError::UnknownComponent(..)
            | ModelError::DuplicateComponent { .. }
            | ModelError::MissingComponent { .. }
            | ModelError::ZeroTarget { .. }
            | ModelError::Inconsistency { .. } => 3,
        }
    }

    /// Wraps an IO error with the path it occurred on.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        ModelError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<crate::num::KernelError> for ModelError {
    fn from(err: crate::num::KernelError) -> Self {
        match err {
            crate::num::KernelError::NonConvergence {
                iterations,
                residual,
            } => ModelError::NonConvergence {
                iterations,
                residual,
            },
            crate::num::KernelError::Domain(message) => ModelError::Schema {
                location: "numerical kernel".into(),
                message,
            },
        }
    }
}
