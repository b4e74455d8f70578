//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by matrix construction, model building, ensemble runs and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "matrix is not Hermitian: entry ({i},{j}) = {re}{im:+}i differs from the conjugate of \
         entry ({j},{i}) by {delta:.3e} (tolerance {tol:.1e})"
    )]
    NotHermitian {
        i: usize,
        j: usize,
        re: f64,
        im: f64,
        delta: f64,
        tol: f64,
    },

    #[error("matrix entry ({i},{j}) is not finite")]
    NonFiniteEntry { i: usize, j: usize },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("product dimension {dim} exceeds the configured maximum {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error("eigensolver failed to converge on a {dim}x{dim} matrix")]
    EigenSolver { dim: usize },

    #[error("subsystem slot {slot} out of range for {len} subsystems")]
    SlotOutOfRange { slot: usize, len: usize },

    #[error("subsystem {subsystem} has no term matrix of order {order}")]
    MissingTerm { subsystem: usize, order: usize },

    #[error("inverse temperature must be non-negative, got beta = {beta}")]
    NegativeBeta { beta: f64 },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("unknown keys in run spec: {}", .0.join(", "))]
    UnknownKeys(Vec<String>),

    #[error("no eigenvalue falls inside the histogram range [{lo}, {hi}]")]
    EmptyHistogramRange { lo: f64, hi: f64 },

    #[error("time grid spans {decades:.2} decades; diagnostics require at least {required}")]
    GridTooShort { decades: f64, required: f64 },

    #[error("argument modulus {modulus:.3e} exceeds the supported maximum {max:.1e}")]
    ArgumentTooLarge { modulus: f64, max: f64 },

    #[error("exponential envelope overflows f64 at Re z = {re:.3e}; use the scaled variant")]
    EnvelopeOverflow { re: f64 },

    #[error("checkpoint spec hash mismatch: expected {expected}, found {found}")]
    SpecHashMismatch { expected: String, found: String },

    #[error("corrupt checkpoint file: {detail}")]
    CorruptCheckpoint { detail: String },

    #[error("cannot merge: realization index sets overlap (e.g. index {index})")]
    MergeOverlap { index: u64 },

    #[error("cannot merge: time grids differ at point {index}")]
    GridMismatch { index: usize },

    #[error("{failed} of {total} realizations failed (allowed at most {allowed})")]
    TooManyFailures {
        failed: usize,
        total: usize,
        allowed: usize,
    },

    #[error("plot series '{label}' has no positive data points for log axes")]
    EmptySeries { label: String },

    #[error("joint-state protocol limited to dimension {max}, got {dim}")]
    JointStateTooLarge { dim: usize, max: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("export parse error: {0}")]
    ExportParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
