use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::HalfPlane;
use crate::parse::ParseRationalError;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every way an input can violate an invariant. Messages name the invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    TooFewVertices {
        count: usize,
    },
    DuplicateVertex {
        first: usize,
        second: usize,
    },
    /// Vertex `vertex` is a convex combination of the other vertices.
    NotConvexPosition {
        vertex: usize,
    },
    /// A point that must lie in the polygon does not; the half-plane
    /// contains the whole polygon but not the point.
    OutsidePolygon {
        position: Option<usize>,
        witness: HalfPlane,
    },
    EmptyTail,
    TailIndexOutOfRange {
        position: usize,
        index: usize,
        vertices: usize,
    },
    /// Vertices that never occur in the periodic tail, so their weight
    /// sequences cannot diverge.
    MissingTailVertices {
        missing: Vec<usize>,
    },
    AssignmentLength {
        expected: usize,
        found: usize,
    },
    AssignmentIndexOutOfRange {
        position: usize,
        index: usize,
    },
    NotTwoPointSet,
    InvalidDecomposition {
        position: usize,
        reason: &'static str,
    },
    DiagonalOutOfRange {
        index: usize,
    },
    NotDoublyStochastic {
        reason: String,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    NotProjection {
        which: &'static str,
        idempotence: f64,
        hermiticity: f64,
    },
    RadicandTooLarge,
    Parse(ParseRationalError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooFewVertices { count } => {
                write!(f, "vertex set needs at least 2 points, got {count}")
            }
            Error::DuplicateVertex { first, second } => {
                write!(f, "vertices must be pairwise distinct: {first} and {second} coincide")
            }
            Error::NotConvexPosition { vertex } => write!(
                f,
                "vertices must be in convex position: vertex {vertex} lies in the convex hull of the others"
            ),
            Error::OutsidePolygon { position: Some(n), witness } => write!(
                f,
                "sequence value {n} lies outside the polygon (separating half-plane {witness})"
            ),
            Error::OutsidePolygon { position: None, witness } => {
                write!(f, "point lies outside the polygon (separating half-plane {witness})")
            }
            Error::EmptyTail => write!(f, "the periodic tail must be nonempty"),
            Error::TailIndexOutOfRange { position, index, vertices } => write!(
                f,
                "tail entry {position} is vertex index {index}, but there are only {vertices} vertices"
            ),
            Error::MissingTailVertices { missing } => write!(
                f,
                "every vertex must occur in the tail (diverging weight condition); missing {missing:?}"
            ),
            Error::AssignmentLength { expected, found } => {
                write!(f, "assignment covers {found} head terms, expected {expected}")
            }
            Error::AssignmentIndexOutOfRange { position, index } => {
                write!(f, "assignment entry {position} is out-of-range vertex index {index}")
            }
            Error::NotTwoPointSet => write!(f, "operation requires the vertex set {{0, 1}}"),
            Error::InvalidDecomposition { position, reason } => {
                write!(f, "invalid X-decomposition at head term {position}: {reason}")
            }
            Error::DiagonalOutOfRange { index } => {
                write!(f, "diagonal entry {index} lies outside [0, 1]")
            }
            Error::NotDoublyStochastic { reason } => {
                write!(f, "matrix is not doubly stochastic: {reason}")
            }
            Error::NotSquare { rows, cols } => write!(f, "expected a square matrix, got {rows}x{cols}"),
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotProjection { which, idempotence, hermiticity } => write!(
                f,
                "{which} is not a projection (|P^2-P|_F = {idempotence:e}, |P-P*|_F = {hermiticity:e})"
            ),
            Error::RadicandTooLarge => {
                write!(f, "exact square root needs a factorization beyond 64-bit cofactors")
            }
            Error::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl From<ParseRationalError> for Error {
    fn from(e: ParseRationalError) -> Self {
        Error::Parse(e)
    }
}

impl core::error::Error for Error {}
