//! Shared error type for the whole crate.

use std::fmt;

/// Errors raised by field construction, group queries, design validation and
/// the census drivers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not prime.
    NotPrime(u64),
    /// Extension degree must be at least 1.
    BadDegree(u64),
    /// A size or search bound was exceeded; the message names the bound.
    BoundExceeded(String),
    /// Operands belong to different fields (or are malformed for this field).
    FieldMismatch,
    /// Division by zero / inverse of zero in a field.
    DivisionByZero,
    /// Multiplicative order of zero is undefined.
    ZeroElement,
    /// No element of the requested multiplicative order exists.
    NoSuchOrder { order: u64, q: u64 },
    /// A point index is outside `0..degree`.
    PointOutOfRange { point: u32, degree: u32 },
    /// A permutation image list is not a bijection.
    NotAPermutation,
    /// Permutations or groups of different degrees were mixed.
    DegreeMismatch { expected: u32, got: u32 },
    /// An operation needed a nonempty point set.
    EmptySet,
    /// Parameters fail a stated precondition; the message says which.
    InvalidParameter(String),
    /// The subgroup kind does not exist for this `q` (side conditions fail).
    NoSuchSubgroup(String),
    /// Block list failed design validation.
    BadBlock(String),
    /// Some t-subset is covered the wrong number of times.
    CoverageMismatch {
        t_subset: Vec<u32>,
        count: u64,
        lambda: u64,
    },
    /// The group is not an automorphism group of the design.
    NotAutomorphismGroup,
    /// File or stream parsing failed.
    Parse(String),
    /// Underlying I/O failure.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{} is not prime", p),
            Error::BadDegree(e) => write!(f, "extension degree {} is invalid", e),
            Error::BoundExceeded(msg) => write!(f, "bound exceeded: {}", msg),
            Error::FieldMismatch => write!(f, "field element does not belong to this field"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroElement => write!(f, "zero has no multiplicative order"),
            Error::NoSuchOrder { order, q } => {
                write!(f, "no element of order {} in GF({})", order, q)
            }
            Error::PointOutOfRange { point, degree } => {
                write!(f, "point {} out of range for degree {}", point, degree)
            }
            Error::NotAPermutation => write!(f, "image list is not a permutation"),
            Error::DegreeMismatch { expected, got } => {
                write!(f, "degree mismatch: expected {}, got {}", expected, got)
            }
            Error::EmptySet => write!(f, "point set must be nonempty"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {}", msg),
            Error::NoSuchSubgroup(msg) => write!(f, "no such subgroup: {}", msg),
            Error::BadBlock(msg) => write!(f, "bad block list: {}", msg),
            Error::CoverageMismatch {
                t_subset,
                count,
                lambda,
            } => write!(
                f,
                "t-subset {:?} lies in {} blocks, expected {}",
                t_subset, count, lambda
            ),
            Error::NotAutomorphismGroup => {
                write!(f, "group does not preserve the block set")
            }
            Error::Parse(msg) => write!(f, "parse error: {}", msg),
            Error::Io(msg) => write!(f, "io error: {}", msg),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
