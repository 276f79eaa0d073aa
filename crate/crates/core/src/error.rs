use thiserror::Error;

/// Errors raised by geometry, growth, measure and scan routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("alpha must be in (0, 0.5), got {alpha}")]
    AngleOutOfRange { alpha: f64 },

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("point coincides with the center of inversion")]
    SingularInversion,

    #[error("polygon needs at least 3 sides, got {0}")]
    TooFewSides(usize),

    #[error("side angles must sum to 1, got {sum}")]
    AngleSum { sum: f64 },

    #[error("side index {index} out of range for {n} sides")]
    SideIndex { index: usize, n: usize },

    #[error("vertex cycle is not strictly ordered in the positive direction")]
    VertexOrder,

    #[error("body would have {sides} boundary sides, cap is {cap}")]
    DepthLimit { sides: u128, cap: usize },

    #[error("boundary arc {arc:e} is below the precision guard {guard:e}")]
    ArcUnderflow { arc: f64, guard: f64 },

    #[error("quadrature resolution {cells} below minimum {min}")]
    ResolutionTooLow { cells: usize, min: usize },

    #[error("input vector is empty")]
    EmptyInput,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("totals differ: {left} vs {right}")]
    TotalMismatch { left: f64, right: f64 },

    #[error("grid step too coarse: {step} (must be at most 1/100)")]
    StepTooCoarse { step: f64 },

    #[error("grid step {step} does not divide the unit interval")]
    StepNotDivisor { step: f64 },

    #[error("lattice has {points} points, limit is {limit}")]
    LatticeTooLarge { points: u128, limit: u128 },

    #[error("side count {n} outside supported range {min}..={max}")]
    UnsupportedSideCount { n: usize, min: usize, max: usize },

    #[error("tolerance {0} is below the supported minimum 1e-12")]
    ToleranceTooSmall(f64),

    #[error("no convergence after {iterations} iterations (best value {best_value})")]
    NoConvergence {
        iterations: usize,
        best_point: Vec<f64>,
        best_value: f64,
    },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
