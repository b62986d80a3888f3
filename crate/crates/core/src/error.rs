use thiserror::Error;

/// Errors raised across the engine.
///
/// Verification failures are not errors: certification and identity checks
/// return records describing the failure instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(char),
    #[error("irreducible factor of degree {degree} remains: {factor}")]
    NonLinearRemainder { degree: usize, factor: String },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("elimination is singular: {0}")]
    DegenerateElimination(String),
    #[error("derivative coefficient vanishes identically for this shift")]
    ZeroQ,
    #[error("degenerate shift: {0}")]
    DegenerateShift(String),
    #[error("family is not admissible: {0}")]
    NotAdmissible(String),
    #[error("series diverges at every sample point")]
    SeriesDiverges,
    #[error("Clausen shape mismatch: c(t) - a(t) - b(t) = {0}, expected 1/2")]
    ClausenShapeMismatch(String),
    #[error("term is not Gosper-summable")]
    NotGosperSummable,
    #[error("no recurrence of order <= {0} found")]
    NoRecurrenceFound(usize),
    #[error("term family is not proper hypergeometric: {0}")]
    NotProper(String),
    #[error("too many symbolic parameters for reconstruction: {0}")]
    TooManyParameters(String),
    #[error("pole of Gamma at non-positive integer {0}")]
    PoleAtNonPositiveInteger(String),
    #[error("series diverges (|z| >= 1 and non-terminating)")]
    Divergent,
    #[error("lower parameter {0} is a non-positive integer")]
    LowerParamPole(String),
    #[error("{0} is not an odd prime")]
    NotPrime(i64),
    #[error("infinite product cannot be truncated: {0}")]
    NonTruncatable(String),
    #[error("summand q-order does not grow: {0}")]
    NonTerminatingOrder(String),
    #[error("series factor is not invertible: {0}")]
    NonInvertible(String),
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
