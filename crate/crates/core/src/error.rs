use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("singular matrix (pivot {pivot})")]
    Singular { pivot: usize },
    #[error("{what} is singular (index {index})")]
    SingularAt { what: &'static str, index: usize },
    #[error("need {needed} moments, have {have}")]
    Length { needed: usize, have: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("polynomial is not HTM: {0}")]
    NotHtm(String),
    #[error("continued fraction level {level} is singular at the evaluation point")]
    Evaluation { level: usize },
    #[error("certificate unavailable: {0}")]
    CertificateUnavailable(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("root finder did not converge after {iterations} iterations (max residual {residual:e})")]
    Numerical { iterations: usize, residual: f64 },
    #[error("completion inapplicable: {0}")]
    Inapplicable(String),
    #[error("completed moments are not Stieltjes positive: H{kind},{index} fails")]
    MomentsNotPositive { kind: usize, index: usize, hankel: Vec<Vec<String>> },
    #[error("cannot parse number {text:?} at character {position}: {msg}")]
    Grammar { text: String, position: usize, msg: String },
    #[error("{0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn with_text(self, full: &str) -> Error {
        match self {
            Error::Grammar { position, msg, .. } => Error::Grammar { text: full.to_string(), position, msg },
            e => e,
        }
    }
}
