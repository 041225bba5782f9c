use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised anywhere in the estimation and detection pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {func}({arg}) requires {requirement}")]
    Domain {
        func: &'static str,
        arg: f64,
        requirement: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point set must contain at least one point")]
    EmptyPointSet,

    #[error("flat buffer of length {len} is not a multiple of dimension {dim}")]
    RaggedData { len: usize, dim: usize },

    #[error("k = {k} out of range [{min}, {max}]")]
    KOutOfRange { k: usize, min: usize, max: usize },

    #[error("split fraction {0} must lie strictly inside (0, 1)")]
    InvalidFraction(f64),

    #[error("splitting {n} points at fraction {fraction} leaves an empty part")]
    EmptySplitPart { n: usize, fraction: f64 },

    #[error("series has {len} samples, need at least {min}")]
    SeriesTooShort { len: usize, min: usize },

    #[error("degenerate neighborhood: zero k-NN radius at query index {index}")]
    DegenerateNeighborhood { index: usize },

    #[error("Renyi order {0} must lie strictly inside (0, 1)")]
    InvalidAlpha(f64),

    #[error("only {got} calibration windows, need at least {need}")]
    TooFewWindows { got: usize, need: usize },

    #[error("series of {len} samples is shorter than one window of {window_len}")]
    TooShort { len: usize, window_len: usize },

    #[error("invalid detector config: {0}")]
    InvalidConfig(String),

    #[error("anomaly index {index} out of range for series of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate anomaly index {0}")]
    DuplicateIndex(usize),

    #[error("scores must contain both an anomalous and a normal class")]
    SingleClass,

    #[error("zero-variance sample")]
    ZeroVariance,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("file not found: {0}")]
    FileNotFound(String),

    #[error("row {row}: cannot parse {content:?} as a number")]
    Parse { row: usize, content: String },

    #[error("column {column} missing on row {row}")]
    MissingColumn { row: usize, column: usize },

    #[error("no data rows in input")]
    EmptyFile,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
