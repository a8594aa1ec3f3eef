//! Error type shared by every module of the engine.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by the engine. Algebraic undefinedness is not an error:
/// it is the absorbing element `Omega` of the semialgebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label must be a nonempty identifier without separators: {0:?}")]
    BadLabel(String),
    #[error("boundary word needs at least two labels, got {0}")]
    ShortWord(usize),
    #[error("cyclically adjacent labels coincide in {0}")]
    AdjacentRepeat(String),
    #[error("boundary word {0} visits the vertex {1} twice")]
    RepeatedVertex(String, String),
    #[error("vertex needs distinct labels, got ({0},{0})")]
    DegenerateVertex(String),
    #[error("Maslov index {maslov} not allowed for arity {arity}")]
    InvalidMaslov { arity: usize, maslov: u32 },
    #[error("point {point} does not lie on vertex {vertex}")]
    PointMismatch { point: String, vertex: String },
    #[error("incomplete decoration: {0}")]
    IncompleteDecoration(String),
    #[error("vertex {0} is not a flow-in vertex")]
    MissingFlowIn(String),
    #[error("expected formal dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported query: {0}")]
    Unsupported(String),
    #[error("contributing domain is not an embedded polygon: {0}")]
    NonEmbeddedDomain(String),
    #[error("malformed end: {0}")]
    MalformedEnd(String),
    #[error("duplicate end: {0}")]
    DuplicateEnd(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent cell complex: {0}")]
    InconsistentComplex(String),
    #[error("closure escaped word length {max}: produced a word of length {len}")]
    ClosureEscape { len: usize, max: usize },
    #[error("boundary of a closure element is undefined (Omega)")]
    OmegaInClosure,
    #[error("n_w stratum {found} exceeds the bound {bound}")]
    StratumBound { found: u32, bound: u32 },
    #[error("U-degree {found} exceeds the bound {bound}")]
    UDegree { found: u32, bound: u32 },
    #[error("ambiguous slot insertion: {0}")]
    AmbiguousSlot(String),
    #[error("not a chained generator word: {0}")]
    NotAGeneratorWord(String),
    #[error("relation is ill-formed: profiles do not match")]
    IllFormedRelation,
    #[error("io error: {0}")]
    Io(String),
}
