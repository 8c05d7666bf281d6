use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial coefficient {index} is not finite ({value})")]
    NonFiniteCoefficient { index: usize, value: f64 },

    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("invalid interval [{lo}, {hi}] or tolerance {tol}")]
    InvalidInterval { lo: f64, hi: f64, tol: f64 },

    #[error("root isolation did not terminate within {limit} bisection steps near x = {near}")]
    RootIsolation { limit: usize, near: f64 },

    #[error("invalid well shape: {0}")]
    InvalidShape(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("window {window} is too small: V' still changes sign at x = {x}")]
    WindowTooSmall { window: f64, x: f64 },

    #[error("degenerate minimum at x = {x}: harmonic approximation is undefined")]
    DegenerateMinimum { x: f64 },

    #[error("no real extremum pair (discriminant {discriminant} < 0)")]
    NoRealExtremum { discriminant: f64 },

    #[error("|epsilon| = {epsilon} exceeds the perturbative limit {limit}; use the numeric stationary points or the cubic locus instead")]
    PerturbationTooLarge { epsilon: f64, limit: f64 },

    #[error("origin is not a well (V''(0) = {curvature})")]
    OriginNotAWell { curvature: f64 },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("requested {requested} levels but the grid only has {available} unknowns")]
    TooManyLevels { requested: usize, available: usize },

    #[error("inverse iteration for level {level} (E = {energy}) did not converge after {iterations} iterations, residual {residual:e}")]
    NoConvergence {
        level: usize,
        energy: f64,
        iterations: usize,
        residual: f64,
    },

    #[error("domain half-width {half_width} too small: V(±L) = {boundary_value} < 2 E = {required}")]
    DomainTooSmall {
        half_width: f64,
        boundary_value: f64,
        required: f64,
    },

    #[error("no crossing in bracket [{lo}, {hi}] (residuals {r_lo:e}, {r_hi:e})")]
    NoCrossing { lo: f64, hi: f64, r_lo: f64, r_hi: f64 },

    #[error("labels unresolved at delta = {delta} for (m = {m}, n = {n})")]
    LabelsUnresolved { m: usize, n: usize, delta: f64 },

    #[error("Newton iteration did not converge in {iterations} iterations; last residuals {residuals:?}")]
    NewtonFailed {
        iterations: usize,
        residuals: Vec<f64>,
    },

    #[error("no root of the locus equation for epsilon = {epsilon}, alpha = {alpha}")]
    NoLocusRoot { epsilon: f64, alpha: f64 },
}
