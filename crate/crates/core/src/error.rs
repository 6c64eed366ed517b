use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gamma pole at argument {0}")]
    Pole(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("parameter mismatch: {0} vs {1}")]
    ParameterMismatch(String, String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("interpolation mismatch at entry ({i},{j}), n = {n}")]
    InterpolationMismatch { i: usize, j: usize, n: usize },
    #[error("series mismatch at order {order}, entry ({i},{j})")]
    SeriesMismatch { order: usize, i: usize, j: usize },
    #[error("root finder did not converge after {0} iterations")]
    ConvergenceFailure(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degree {0} exceeds the supported cap of {1}")]
    DegreeCap(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
