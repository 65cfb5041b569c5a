use thiserror::Error;

use crate::matroids::AxiomViolation;
use crate::scalar::ScalarParseError;

/// Every failure the library can report.
///
/// Infeasible and unbounded LPs are *not* errors; they are statuses on
/// [`crate::lp::LpSolution`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("zero denominator in rational {0:?}")]
    ZeroDenominator(String),

    #[error("malformed rational {0:?}")]
    BadRational(String),

    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: String },

    #[error("assignment graph is not bipartite: {0}")]
    NotBipartite(String),

    #[error("matroid violates its axioms: {0}")]
    MatroidAxioms(AxiomViolation),

    #[error("generic packing matrix entry at row {row}, column {col} is not 0/1")]
    NonBinaryMatrix { row: usize, col: usize },

    #[error("{what} has size {size}, above the configured bound {bound}; raise the bound explicitly to proceed")]
    BoundExceeded { what: &'static str, size: usize, bound: usize },

    #[error("no finite search bound: {0}")]
    UnboundedSearch(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code for diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed-input",
            Error::ZeroDenominator(_) => "zero-denominator",
            Error::BadRational(_) => "bad-rational",
            Error::NegativeWeight { .. } => "negative-weight",
            Error::NotBipartite(_) => "not-bipartite",
            Error::MatroidAxioms(_) => "matroid-axioms",
            Error::NonBinaryMatrix { .. } => "non-binary-matrix",
            Error::BoundExceeded { .. } => "bound-exceeded",
            Error::UnboundedSearch(_) => "unbounded-search",
            Error::Contract(_) => "contract",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    /// Resource errors map to a distinct process exit code.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. } | Error::UnboundedSearch(_))
    }

    pub(crate) fn check_bound(what: &'static str, size: usize, bound: usize) -> Result<()> {
        if size > bound {
            Err(Error::BoundExceeded { what, size, bound })
        } else {
            Ok(())
        }
    }
}

impl From<ScalarParseError> for Error {
    fn from(e: ScalarParseError) -> Self {
        match e {
            ScalarParseError::ZeroDenominator(s) => Error::ZeroDenominator(s),
            ScalarParseError::Malformed(s) => Error::BadRational(s),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
