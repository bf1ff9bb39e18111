use thiserror::Error;

use crate::face::Face;

/// Errors raised by complex construction, parsing and the retriangulation operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed face: vertex {vertex} appears more than once")]
    RepeatedVertex { vertex: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("face {0} is not a face of the complex")]
    FaceNotPresent(Face),

    #[error("vertex {0} is not a vertex of the complex")]
    VertexNotPresent(u32),

    #[error("face {0} is not a facet of the complex")]
    NotAFacet(Face),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: isize, found: isize },

    #[error("face {0} of the proposed subcomplex is not a face of the complex")]
    NotASubcomplex(Face),

    #[error("not a homology ball: {reason} (at face {face})")]
    NotABall { face: Face, reason: String },

    #[error("link of vertex {vertex} is not a stacked sphere: {reason}")]
    NotStacked { vertex: u32, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("input too large: {what} is {size}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("catalog entry {entry}: {message}")]
    Expectation { entry: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for the errors that come from unreadable or malformed input rather than
    /// from an operation's preconditions.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::RepeatedVertex { .. } | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
