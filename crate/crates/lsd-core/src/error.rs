//! Shared error type for the numerical core.

use thiserror::Error;

/// Errors raised by the numerical core.
///
/// Domain violations (non-positive energies, invalid couplings) are hard
/// errors rather than clamps: the deformation is only defined on the
/// positive spectrum, and silent clamping would mask modeling mistakes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("energy must be positive, got {0} (the deformation needs E > 0 for the logarithm)")]
    NonPositiveEnergy(f64),

    #[error("reference scale e_star must be positive and finite, got {0}")]
    InvalidEStar(f64),

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("spectrum must contain at least one level")]
    EmptySpectrum,

    #[error("spectrum energies must be strictly increasing: level {index} has energy {energy} after {previous}")]
    UnorderedSpectrum {
        index: usize,
        energy: f64,
        previous: f64,
    },

    #[error("duplicate level index {0} in spectrum")]
    DuplicateLevelIndex(usize),

    #[error("grid needs x_min < x_max, got [{x_min}, {x_max}]")]
    InvalidGridBounds { x_min: f64, x_max: f64 },

    #[error("grid needs at least 3 interior points, got {0}")]
    GridTooCoarse(usize),

    #[error("potential is not finite at grid point x = {x} (index {index})")]
    NonFinitePotential { x: f64, index: usize },

    #[error("tridiagonal matrix needs {expected} off-diagonal entries for dimension {dimension}, got {got}")]
    TridiagonalShape {
        dimension: usize,
        expected: usize,
        got: usize,
    },

    #[error("requested {requested} eigenvalues from a matrix of dimension {dimension}")]
    EigenCountOutOfRange { requested: usize, dimension: usize },

    #[error("shifted eigenvalue {value} at level {index} is not positive; increase the energy shift (the deformation requires E > 0)")]
    NonPositiveShiftedEigenvalue { index: usize, value: f64 },

    #[error("two-level model is degenerate: E1 = E2 = {0}")]
    DegenerateTwoLevel(f64),

    #[error("quartic coupling lambda must be positive, got {0}")]
    InvalidQuarticCoupling(f64),

    #[error("inverse-square strength alpha must lie in (0, 1/4), got {0}")]
    AlphaOutOfRange(f64),

    #[error("confining strength beta1 must be positive, got {0}")]
    InvalidConfiningStrength(f64),

    #[error("inner cutoff epsilon_wall must be positive, got {0}")]
    InvalidEpsilonWall(f64),

    #[error("grid x_min {x_min} does not match the model's epsilon_wall {epsilon_wall}")]
    WallMismatch { x_min: f64, epsilon_wall: f64 },

    #[error("harmonic curvature must be positive for a potential bounded below, got {0}")]
    UnboundedPotential(f64),

    #[error("levels_requested must be at least 1")]
    NoLevelsRequested,

    #[error("grid too small: classical turning point {turning_point} of the top requested level exceeds 0.75 * x_max = {limit}; widen the grid")]
    GridTooSmall { turning_point: f64, limit: f64 },

    #[error("amplitude count {amplitudes} does not match spectrum size {levels}")]
    AmplitudeCountMismatch { amplitudes: usize, levels: usize },

    #[error("state norm^2 = {0} is not 1 within 1e-12; normalize the amplitudes first")]
    NotNormalized(f64),

    #[error("state has zero norm; cannot normalize")]
    ZeroNorm,

    #[error("level index {index} out of range for spectrum of size {size}")]
    LevelIndexOutOfRange { index: usize, size: usize },

    #[error("indices m and n must differ: the diagonal element is not a coherence")]
    DiagonalPair,

    #[error("window support must satisfy 0 < e_min < e_max, got [{e_min}, {e_max}]")]
    InvalidWindowSupport { e_min: f64, e_max: f64 },

    #[error("window amplitude must be finite and non-negative, got {0}")]
    InvalidWindowAmplitude(f64),

    #[error("quadrature tolerance must lie in (0, 1), got {0}")]
    InvalidTolerance(f64),

    #[error("quadrature tolerance unachievable within the node budget: achieved error estimate {achieved:.3e}, requested {requested:.3e}")]
    ToleranceUnachievable { achieved: f64, requested: f64 },

    #[error("beta grid must be strictly increasing and positive: entry {index} is {value}")]
    InvalidBetaGrid { index: usize, value: f64 },

    #[error("beta grid is empty after excluding entries whose stationary energy falls inside the window support")]
    EmptyBetaGridAfterExclusion,

    #[error("envelope time constant T2 must be positive, got {0}")]
    InvalidT2(f64),

    #[error("decay rate gamma must be finite and non-negative, got {0}")]
    InvalidGamma(f64),

    #[error("noise amplitude must lie in [0, 1), got {0}")]
    InvalidNoiseAmplitude(f64),

    #[error(
        "time grid must be positive, finite, and strictly ascending: entry {index} is {value}"
    )]
    InvalidTimeGrid { index: usize, value: f64 },

    #[error("trace length {values} does not match time grid length {times}")]
    TraceLengthMismatch { times: usize, values: usize },

    #[error("trace value at t = {t} is not finite or not positive: {value}")]
    InvalidTraceValue { t: f64, value: f64 },

    #[error("envelope fit needs at least 3 usable points, found {0}")]
    TooFewFitPoints(usize),

    #[error("calibration envelope C_std is zero or negative at t = {t}")]
    InvalidCalibrationEnvelope { t: f64 },

    #[error("averaging window must be positive, got {0}")]
    InvalidAveragingWindow(f64),

    #[error("level pair is degenerate: |G(E_m) - G(E_n)| = 0, no dephasing scale to fit against")]
    DegenerateGPair,

    #[error("platform '{name}': {message}")]
    InvalidPlatformSpec { name: String, message: String },

    #[error("platform '{name}': |log(E/E_star) + 1| vanishes, the splitting approximation degenerates; set log_factor_override")]
    DegenerateLogFactor { name: String },

    #[error("measurement precision delta_omega must be positive, got {0}")]
    InvalidPrecision(f64),

    #[error("linear fit needs at least 2 points, got {0}")]
    TooFewPointsForFit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
