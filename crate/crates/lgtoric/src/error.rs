//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by geometric constructions and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input points do not affinely span rank 3.
    #[error("degenerate input: points do not span a 3-dimensional polytope")]
    DegenerateInput,

    /// Integer arithmetic would overflow 64 bits. Never silent.
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    /// Operation requires a reflexive polytope.
    #[error("polytope is not reflexive: {0}")]
    NotReflexive(String),

    /// The two polytopes handed in as a dual pair are not polar duals.
    #[error("invalid dual pair: {0}")]
    InvalidPair(String),

    /// Point is interior or outside; no boundary face contains it.
    #[error("point {0:?} is not on the boundary")]
    NotOnBoundary([i64; 3]),

    /// A 2-face handed to the triangulator was not actually 2-dimensional.
    #[error("degenerate face: expected a 2-dimensional face")]
    DegenerateFace,

    /// Parameter outside the domain of a closed formula.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An internal consistency check failed. Indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Errors produced while parsing census input files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    /// Header line of a matrix block is not `rows cols [comment]`.
    #[error("line {line}: malformed header: {text:?}")]
    MalformedHeader { line: usize, text: String },

    /// A matrix block does not contain rows x cols integers.
    #[error("line {line}: matrix shape mismatch: {detail}")]
    MatrixShapeMismatch { line: usize, detail: String },

    /// A matrix entry is not an integer.
    #[error("line {line}: non-integer entry {text:?}")]
    NonInteger { line: usize, text: String },

    /// Neither matrix dimension equals 3.
    #[error("line {line}: neither matrix dimension is 3 (got {rows}x{cols})")]
    WrongDimension {
        line: usize,
        rows: usize,
        cols: usize,
    },

    /// Structured input does not match the expected schema.
    #[error("schema error: {0}")]
    SchemaError(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
