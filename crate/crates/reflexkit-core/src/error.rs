//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by polytope construction and invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("pairing requires one point in N and one in M, got two points in the same lattice")]
    SameAmbient,

    #[error("zero vector has no primitive form")]
    ZeroVector,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("input vectors are linearly dependent")]
    SingularInput,

    #[error("point set spans only {dim} of {ambient} dimensions")]
    LowerDimensional { dim: usize, ambient: usize },

    #[error("operation requires a simplicial polytope; facet {facet} has {vertices} vertices")]
    NotSimplicial { facet: usize, vertices: usize },

    #[error("origin is not strictly interior to the polytope")]
    OriginNotInterior,

    #[error("polytope is not reflexive; facets at lattice distance > 1: {offending:?}")]
    NotReflexive { offending: Vec<usize> },

    #[error("{0} is not a facet normal of the dual polytope")]
    NotDualVertex(String),

    #[error("invalid wall: {0}")]
    InvalidWall(String),

    #[error("vertex {vertex} lies on facet {facet}")]
    VertexOnFacet { vertex: usize, facet: usize },

    #[error("equality hypothesis fails: {0}")]
    EqualityHypothesisFails(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A machine-checked consequence of the verified theorems failed. On
    /// valid inputs this indicates a bug, never a property of the input.
    #[error("theorem violation (this is a bug): {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
