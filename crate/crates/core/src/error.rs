use crate::C64;
use thiserror::Error;

/// Errors raised by the geometry, summation and decomposition routines.
#[derive(Debug, Clone, PartialEq, Error, serde::Serialize)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("region U is not contained in V (witness {point})")]
    NotContained { point: C64 },

    #[error("Huygens distance {distance} is below the required {required}")]
    HuygensTooSmall { distance: f64, required: f64 },

    #[error("clearance {clearance} at {point} on sheet {sheet} is below {required}")]
    MarginViolated {
        sheet: usize,
        point: C64,
        clearance: f64,
        required: f64,
    },

    #[error(
        "point lies within {distance} of pole {pole} on sheet {sheet} (removed radius {radius})"
    )]
    PoleProximity {
        sheet: usize,
        pole: C64,
        distance: f64,
        radius: f64,
    },

    #[error("tolerance {tol} not reached after {terms} terms (tail bound {tail_bound})")]
    TolUnreachable {
        terms: usize,
        tail_bound: f64,
        tol: f64,
    },

    #[error("a (c, alpha)-Diophantine radius function and a norm certificate are required")]
    DiophantineRequired,

    #[error("the sequence does not expose a simple-pole decomposition")]
    SimplePolesRequired,

    #[error("quadrature did not converge after {doublings} doublings (last change {change:e})")]
    NonConvergent { doublings: usize, change: f64 },

    #[error("insufficient data: need {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("C|z| = {value} is not below 1")]
    OutOfRegime { value: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("pole epsilon_{index} is zero")]
    ZeroPole { index: usize },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NotContained { .. } => "not_contained",
            Error::HuygensTooSmall { .. } => "huygens_too_small",
            Error::MarginViolated { .. } => "margin_violated",
            Error::PoleProximity { .. } => "pole_proximity",
            Error::TolUnreachable { .. } => "tol_unreachable",
            Error::DiophantineRequired => "diophantine_required",
            Error::SimplePolesRequired => "simple_poles_required",
            Error::NonConvergent { .. } => "non_convergent",
            Error::InsufficientData { .. } => "insufficient_data",
            Error::OutOfRegime { .. } => "out_of_regime",
            Error::HypothesisViolated(_) => "hypothesis_violated",
            Error::ZeroPole { .. } => "zero_pole",
            Error::Config(_) => "config",
        }
    }
}
