use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
    #[error("expected a polynomial of total degree 1")]
    NotLinear,

    #[error("maximal face {face} references vertex {index}, but only {count} vertices exist")]
    VertexIndexOutOfRange { face: usize, index: usize, count: usize },
    #[error("vertex {vertex} has {found} coordinates, expected {expected}")]
    CoordinateLength { vertex: usize, expected: usize, found: usize },
    #[error("maximal face {0} is empty")]
    EmptyFace(usize),
    #[error("maximal face {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("maximal faces {first} and {second} are identical")]
    DuplicateFace { first: usize, second: usize },
    #[error("maximal face {inner} is contained in maximal face {outer}")]
    NestedFace { inner: usize, outer: usize },
    #[error("maximal face {0} is not affinely independent")]
    AffinelyDependent(usize),
    #[error("maximal faces {first} and {second} intersect in a set that is not a common face")]
    NotSimplicial { first: usize, second: usize },

    #[error("complex is not pure")]
    NotPure,
    #[error("maximal faces have no common vertex")]
    EmptyMedialFace,
    #[error("complex has dimension {dim} but ambient dimension {ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("simplices to join share a vertex")]
    NotDisjoint,
    #[error("join is affinely dependent")]
    DegenerateJoin,
    #[error("face is not a facet of the complex")]
    NotAFacet,

    #[error("polynomial of degree {degree} exceeds Bernstein degree {max}")]
    DegreeOverflow { degree: u32, max: u32 },
    #[error("invalid input for standard orange: {0}")]
    InvalidStandardInput(String),
    #[error("layer decomposition mismatch: {0}")]
    SetMismatch(String),
    #[error("projected orange has {0} facet-connected components; lifting needs exactly one")]
    NotFacetConnected(usize),
    #[error("cardinality mismatch: lifted set has {lifted} points, expected {expected}")]
    CardinalityMismatch { lifted: usize, expected: usize },
    #[error("point {0} is not a domain point of the complex")]
    UnknownDomainPoint(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
