use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes at t = 0; no power series expansion")]
    PoleAtOrigin,
    #[error("Fano index {0} outside the supported range 3..=19")]
    IndexOutOfRange(u32),
    #[error("invalid singularity [{r},{a}]: {reason}")]
    InvalidSingularity { r: i64, a: i64, reason: String },
    #[error("cannot parse basket {input:?}: {reason}")]
    BasketSyntax { input: String, reason: String },
    #[error("Riemann-Roch formula only holds for n > -f (n = {n}, f = {f})")]
    DegreeOutOfRange { n: i64, f: u32 },
    #[error("series order {order} is below the required {needed}")]
    OrderTooSmall { order: usize, needed: usize },
    #[error("series must start with constant term 1")]
    BadPrefix,
    #[error("non-integral value where an integer is required: {0}")]
    NonIntegral(String),
    #[error("could not absorb residual denominator {residual} (degrees so far {degrees:?})")]
    AbsorptionFailed { residual: String, degrees: Vec<u32> },
    #[error("candidate fails stage {0}")]
    StageFailed(&'static str),
    #[error("malformed fixture or record: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by user input, as opposed to internal limits.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::IndexOutOfRange(_)
                | Error::InvalidSingularity { .. }
                | Error::BasketSyntax { .. }
                | Error::DegreeOutOfRange { .. }
                | Error::OrderTooSmall { .. }
                | Error::StageFailed(_)
                | Error::NonIntegral(_)
        )
    }
}
