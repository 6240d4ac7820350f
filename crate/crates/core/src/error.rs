use crate::Point;
use std::fmt;

/// Errors produced by carrier, path, chain and integration routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),

    #[error("parameter intervals differ: [{}, {}] vs [{}, {}]", .left.0, .left.1, .right.0, .right.1)]
    MismatchedDomains { left: (f64, f64), right: (f64, f64) },

    #[error("segments do not join: gap {gap:e} at breakpoint {index}")]
    Discontinuous { index: usize, gap: f64 },

    #[error(
        "containment not certified: minimum clearance {min_clearance:e} at net resolution {resolution:e} \
         (required margin above {required:e})"
    )]
    ContainmentNotCertified {
        /// Smallest `dist_to_complement` over the net points.
        min_clearance: f64,
        resolution: f64,
        required: f64,
    },

    #[error("homotopy end slice t={t} disagrees with the supplied path by {discrepancy:e}")]
    EndpointMismatch { t: f64, discrepancy: f64 },

    #[error("chain link {link}: sampled distance {sampled_lower:e} exceeds the certified bound {analytic:e}")]
    CertificateViolation {
        link: usize,
        sampled_lower: f64,
        analytic: f64,
    },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("evaluation at {point} is within {distance:e} of singularity {singularity}")]
    NearSingularity {
        point: Point,
        singularity: Point,
        distance: f64,
    },

    #[error("quadrature on segment {segment} stopped at error estimate {estimate:e} (allocated {allocated:e})")]
    ToleranceNotReached {
        segment: usize,
        estimate: f64,
        allocated: f64,
    },

    #[error("chain member {index}: {source}")]
    ChainMember { index: usize, source: Box<Error> },

    #[error("winding integral {value} is not close to an integer")]
    NonIntegerWinding { value: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax error in a function expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<&'static str>,
    pub found: Option<char>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: expected ", self.position)?;
        match self.expected.as_slice() {
            [] => f.write_str("nothing")?,
            [one] => f.write_str(one)?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        match self.found {
            Some(c) => write!(f, ", found '{c}'"),
            None => f.write_str(", found end of input"),
        }
    }
}

impl std::error::Error for ParseError {}

impl Error {
    /// Whether the error means a hypothesis (containment, analyticity, endpoints)
    /// could not be certified, as opposed to a malformed request.
    pub fn is_refusal(&self) -> bool {
        match self {
            Error::ContainmentNotCertified { .. } | Error::NearSingularity { .. } | Error::EndpointMismatch { .. } => {
                true
            }
            Error::ChainMember { source, .. } => source.is_refusal(),
            _ => false,
        }
    }
}
