use thiserror::Error;

/// Errors raised by the transform, summability and cipher layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrftError {
    #[error("order {alpha} is within {distance:e} rad of a multiple of pi; cot/csc are numerically unusable")]
    NearSingularOrder { alpha: f64, distance: f64 },

    #[error("operation needs a generic order, got a special angle ({kind})")]
    SpecialAngle { kind: &'static str },

    #[error("requested grid [{lo}, {hi}] is not covered by the source samples [{src_lo}, {src_hi}]")]
    GridMismatch {
        lo: f64,
        hi: f64,
        src_lo: f64,
        src_hi: f64,
    },

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid quadrature spec: {0}")]
    InvalidQuadrature(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("weight is singular at t = {0}")]
    SingularPoint(f64),

    #[error("weight vanishes at t = {0}; the grid must stay inside the weight support")]
    ZeroWeight(f64),

    #[error("offset M = {given} is below 1 + sup|u| = {required}")]
    OffsetTooSmall { given: f64, required: f64 },

    #[error("key has no multiplier order (beta)")]
    MissingBeta,

    #[error("bad fast-transform plan: {0}")]
    BadPlan(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FrftError>;
