//! Threshold-detector Gaussian boson sampling toolkit.
//!
//! Builds Gaussian input hypotheses (squeezed ground truth and classical
//! "squashed" adversary), propagates them through a lossy interferometer,
//! computes exact click-pattern probabilities through the Torontonian,
//! estimates grouped click-number distributions with a positive-P phase-space
//! Monte Carlo, draws classical samples, and runs the cumulant, Bayesian and
//! HOG validation tests on sample sets.
//!
//! The numeric kernel (Cholesky determinants, subset sums, Monte Carlo
//! accumulators) is generic over the real scalar via [`scalar::RealScalar`],
//! instantiated at `f64` for the fast path and at the double-double type
//! [`dd::Dd`] for the extended-precision path.

pub mod acceptance;
pub mod clickstats;
pub mod dd;
pub mod error;
pub mod gaussian;
pub mod phasespace;
pub mod sampler;
pub mod scalar;
pub mod seeding;
pub mod torontonian;
pub mod validation;

pub use error::Error;

/// Complex double precision scalar.
pub type C64 = num_complex::Complex<f64>;
/// Complex double-double (~106-bit significand) scalar.
pub type CDd = num_complex::Complex<dd::Dd>;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
