use thiserror::Error;

use crate::expr::{DiffError, EvalError, IntervalError, ParseError};
use crate::ineq::TheoremId;
use crate::quad::QuadError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("no built-in extremal function for {0}")]
    NoExtremal(TheoremId),
    #[error("geometric mean undefined: f(a)·f(b) = {product} is not positive")]
    GeometricMeanUndefined { product: f64 },
    #[error("need {lo} <= x < y <= {hi}, got x = {x}, y = {y}")]
    InvalidPoints { x: f64, y: f64, lo: f64, hi: f64 },
    #[error("lambda must lie in [0, 1], got {0}")]
    InvalidLambda(f64),
    #[error("f is not positive on the interval (min {min})")]
    NotPositive { min: f64 },
    #[error("f is not strictly monotone (f' ranges over [{min_slope}, {max_slope}])")]
    NotMonotone { min_slope: f64, max_slope: f64 },
    #[error("value {value} is outside the range [{lo}, {hi}] of f")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("trial {trial}: rejection cap of {cap} exceeded")]
    RejectionCap { trial: u64, cap: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
