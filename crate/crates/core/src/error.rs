use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("invalid subsystem selection: {0}")]
    BadSubsystem(String),
    #[error("not a density matrix: {0}")]
    InvalidDensity(String),
    #[error("invalid simplex coefficients: {0}")]
    InvalidCoefficients(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("kinetic energy must be positive, got {0}")]
    NonPositiveEnergy(f64),
    #[error("four-momentum is off shell: k·k = {mass_squared}")]
    OffShell { mass_squared: f64 },
    #[error("matrix is not a proper rotation (defect {defect:e})")]
    NotRotation { defect: f64 },
    #[error("boost direction must be a nonzero finite 3-vector")]
    BadDirection,
    #[error("unknown MUB convention `{0}`")]
    UnknownConvention(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("fixture corrupt: {0}")]
    FixtureCorrupt(String),
    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
