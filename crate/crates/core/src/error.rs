use thiserror::Error;

/// Everything that can go wrong while building or evaluating the machine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// The inter-site coupling vanished where a closed form divides by g².
    /// `alpha_limit` is the value the scaling factor tends to as g → 0.
    #[error("coupling g = 0: scaling factor undefined (alpha -> {alpha_limit})")]
    ZeroCoupling { alpha_limit: f64 },

    #[error("unsupported statistics: {0}")]
    UnsupportedStatistics(String),

    /// Current denominator |γ_L(1+(ε_L−ε_a)n_L) + γ_R(1+(ε_R−ε_a)n_R)| fell
    /// below tolerance, typically oscillator subsystems driven by hot qubit baths.
    #[error("current denominator {denominator:e} vanishes: steady state does not exist")]
    DivergentDenominator { denominator: f64 },

    #[error("contrast undefined: forward and swapped currents coincide ({0:e})")]
    UndefinedContrast(f64),

    #[error("mode inversion: omega_minus = {0} <= 0 (requires g < omega)")]
    ModeInversion(f64),

    #[error("conductance has a single maximum; no peak splitting")]
    NoSplit,

    #[error("hilbert dimension {vectorized} exceeds cap {cap} (set QTM_DIM_CAP to override)")]
    DimensionCap { vectorized: usize, cap: usize },

    #[error("oscillator truncation {dim} too small: thermal tail weight {tail:e} > 1e-10")]
    TruncationTooSmall { dim: usize, tail: f64 },

    #[error("steady state is degenerate: null space dimension {0}")]
    DegenerateSteadyState(usize),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("state is not stationary: heat balance |Q_L + Q_R| = {imbalance:e}")]
    NotStationary { imbalance: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a density matrix: {0}")]
    InvalidState(String),

    #[error("collision step is not unitary: deviation {0:e}")]
    NonUnitary(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
