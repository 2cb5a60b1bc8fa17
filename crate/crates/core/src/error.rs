use thiserror::Error;

/// Error type shared by all modules of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("distribution has no entries")]
    EmptyDistribution,

    #[error("probability at index {index} is {value}; entries must be strictly positive")]
    NonPositiveProbability { index: usize, value: f64 },

    #[error("probability at index {index} is {value}; entries may not exceed 1")]
    ProbabilityAboveOne { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, outside tolerance {tolerance} around 1")]
    SumOutOfTolerance { sum: f64, tolerance: f64 },

    /// Two probabilities closer than the degeneracy tolerance; the Stotland
    /// excess entropy diverges for repeated probabilities.
    #[error(
        "probabilities at indices {first} and {second} differ by {gap:e}, \
         below the degeneracy tolerance {tolerance:e}; excess entropy diverges"
    )]
    DegenerateDistribution {
        first: usize,
        second: usize,
        gap: f64,
        tolerance: f64,
    },

    #[error("level count must be at least 1")]
    ZeroLevelCount,

    #[error("sigma must be strictly positive, got {value}")]
    NonPositiveSigma { value: f64 },

    #[error("shell principal index must be at least 1")]
    InvalidShellIndex,

    #[error("unknown shell label `{token}`")]
    UnknownShell { token: String },

    #[error("occupation probability for {shell} is {value}; must lie in [0, 1]")]
    OccupationOutOfRange { shell: String, value: f64 },

    #[error("occupation probability {value} must lie in [0, 1]")]
    ProbabilityOutOfRange { value: f64 },

    #[error(
        "record {nucleus} ({case}): occupations carry {total:.4} protons, expected {expected}"
    )]
    InconsistentRecord {
        nucleus: String,
        case: String,
        total: f64,
        expected: f64,
    },

    #[error("record has no occupied shells")]
    NoOccupiedShells,

    #[error("proton number {z} outside the supported range 1..={max}")]
    UnsupportedProtonNumber { z: u32, max: u32 },

    #[error("line {line}: field `{field}`: {message}")]
    DatasetParse {
        line: usize,
        field: &'static str,
        message: String,
    },

    #[error("JSON: {0}")]
    Json(String),

    #[error("radial grid needs at least 2 points, got {found}")]
    GridTooShort { found: usize },

    #[error("radial grid must be strictly increasing at index {index}")]
    GridNotIncreasing { index: usize },

    #[error("density sample at index {index} is {value}; samples must be finite and nonnegative")]
    InvalidDensitySample { index: usize, value: f64 },

    #[error("density integrates to {integral}, outside tolerance {tolerance} around 1")]
    NotNormalized { integral: f64, tolerance: f64 },

    #[error(
        "expected one position-space and one momentum-space density, got {first} and {second}"
    )]
    SpaceTagMismatch {
        first: &'static str,
        second: &'static str,
    },

    #[error("log-linear fit needs at least 2 distinct Z values, got {distinct}")]
    FitUnderdetermined { distinct: usize },

    #[error("fit abscissa Z must be at least 1")]
    InvalidFitAbscissa,
}

pub type Result<T> = std::result::Result<T, Error>;
