use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-invertible series: constant term is zero")]
    NonInvertible,
    #[error("composition requires an inner series with zero constant term")]
    NonzeroInnerConstant,
    #[error("logarithm requires constant term 1, found {0}")]
    LogConstantTerm(String),
    #[error("exponential requires constant term 0, found {0}")]
    ExpConstantTerm(String),
    #[error("reversion requires f(0) = 0 and f'(0) != 0")]
    NotRevertible,
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("c-table key ({a}, {b}) lies outside the index set b >= 1, b+1 <= a <= 2b")]
    KeyOutsideIndexSet { a: i64, b: i64 },
    #[error("c-table key ({a}, {b}) exceeds max_b = {max_b}")]
    KeyAboveMaxB { a: i64, b: i64, max_b: i64 },
    #[error("row sum c_{b} = {row_sum} exceeds C3^b b! = {bound}")]
    RowSumBound { b: usize, row_sum: String, bound: String },
    #[error("negative power s^{power} survived in alpha_{n}: corrupted c-table")]
    NegativePowerSurvived { n: usize, power: i64 },
    #[error("zero coefficient a_{0} breaks the sign-run encoding")]
    ZeroCoefficient(usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quadrature did not reach tolerance {tol:e}: estimate {estimate} with error {error:e}")]
    Quadrature { tol: f64, estimate: f64, error: f64 },
    #[error("root bracket failure at t = {0}")]
    Bracket(f64),
    #[error("approximant pole at t = {0} on the integration contour")]
    PoleOnContour(f64),
    #[error("power iteration did not converge after {iterations} iterations (last change {last_change:e})")]
    NoConvergence { iterations: usize, last_change: f64, trace: Vec<f64> },
    #[error("coefficient source violation at n = {n}: {reason}")]
    SourceViolation { n: usize, reason: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
