//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by state construction, probability kernels and validation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("squeezing parameter {index} is negative ({value})")]
    NegativeSqueezing { index: usize, value: f64 },

    #[error("{what}: expected dimension {expected}, got {actual}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("mode count must be even for pairwise beamsplitters, got {0}")]
    OddModeCount(usize),

    #[error("transmission matrix is not physical: largest singular value {0} exceeds 1")]
    NonPhysicalTransmission(f64),

    #[error("covariance matrix is not symmetric: relative deviation {0}")]
    NotSymmetric(f64),

    #[error("covariance matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("covariance violates the uncertainty bound: min eigenvalue {0}")]
    UncertaintyViolation(f64),

    #[error("Husimi matrix of {state} is numerically singular")]
    SingularHusimi { state: String },

    #[error("subset determinant not positive; input matrix is unphysical")]
    UnphysicalSubsetDeterminant,

    #[error(
        "exact Torontonian of {clicks} clicks exceeds the hard cap of {cap}; \
         use the phase-space estimator for grouped click quantities"
    )]
    TorontonianSizeCap { clicks: usize, cap: usize },

    #[error("probability {value} for pattern {pattern} is outside [0, 1] beyond tolerance")]
    ProbabilityOutOfRange { value: f64, pattern: String },

    #[error("mode index {index} out of range for {modes} modes")]
    ModeIndexOutOfRange { index: usize, modes: usize },

    #[error("duplicate mode index {0}")]
    DuplicateModeIndex(usize),

    #[error("sample set is empty")]
    EmptySampleSet,

    #[error("pattern has {actual} bits, expected {expected}")]
    PatternLength { expected: usize, actual: usize },

    #[error("cumulant order {0} unsupported (orders 1..=4 available)")]
    UnsupportedCumulantOrder(usize),

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("sample count {count} not divisible by group count {groups}")]
    GroupDivisibility { count: usize, groups: usize },

    #[error("need at least two groups for an uncertainty estimate, got {0}")]
    TooFewGroups(usize),

    #[error("squashed sampler only covers the SQUA hypothesis; use exact_sample for SQUE")]
    SamplerHypothesis,

    #[error("exact sampling capped at {cap} modes (2^M table), got M = {modes}")]
    ExactSampleCap { modes: usize, cap: usize },

    #[error(
        "rejection sampling exhausted {attempts} attempts with {collected}/{requested} \
         samples at click count {clicks}"
    )]
    RejectionCapExceeded {
        attempts: u64,
        collected: usize,
        requested: usize,
        clicks: usize,
    },

    #[error("pattern click count {actual} does not match sector {expected}")]
    SectorMismatch { expected: usize, actual: usize },

    #[error("sector C = {clicks}: sample counts differ ({left} vs {right})")]
    SectorLengthMismatch {
        clicks: usize,
        left: usize,
        right: usize,
    },

    #[error(
        "grouped probability estimate for C = {clicks} is not positive ({value}); \
         increase the phase-space sample count"
    )]
    NonPositiveGroupedProbability { clicks: usize, value: f64 },

    #[error("non-finite log-probability for pattern {pattern}")]
    NonFiniteLogProb { pattern: String },

    #[error("mean click number is zero; click/photon relation undefined")]
    ZeroMeanClicks,

    #[error("{0}")]
    InvalidInput(String),
}
