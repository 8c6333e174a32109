use thiserror::Error;

use crate::homology::Class;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("multiplication is not defined on the angle group Q/Z")]
    MulOnAngleQ,
    #[error("unsupported coefficient ring {0} for {1}")]
    UnsupportedRing(String, &'static str),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: i64, got: i64 },
    #[error("differential does not square to zero at degree {0}")]
    NotAComplex(i64),
    #[error("not a chain map: commutation fails at degree {0}")]
    InvalidChainMap(i64),
    #[error("not a homotopy: h∂+∂h ≠ f−g at degree {0}")]
    InvalidHomotopy(i64),
    #[error("square does not commute at degree {0}")]
    NonCommutingSquare(i64),
    #[error("simplicial map does not send simplex {0:?} to a simplex")]
    InvalidSimplicialMap(Vec<String>),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("inconsistent intersections: face {0:?} of a declared intersection is missing")]
    InconsistentIntersections(Vec<String>),
    #[error("cover maps differ")]
    CoverMismatch,
    #[error("not a cocycle")]
    NotACocycle,
    #[error("cochain pair is not relatively closed")]
    NotClosed,
    #[error("map is not isotropic: pullback of omega is nonzero")]
    NotIsotropic,
    #[error("class is nontrivial: {0}")]
    NontrivialClass(Class),
    #[error("not a coboundary, although the Bockstein class vanishes: the obstruction comes from rational cohomology")]
    RationalObstruction,
    #[error("class has a free component and is not in the image of the Bockstein map")]
    NotTorsion,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
