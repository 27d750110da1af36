use alloc::vec::Vec;

/// Errors raised by the algebraic kernels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero has no primitive direction")]
    ZeroVector,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("not a lattice basis")]
    NotALatticeBasis,
    #[error("not strongly convex")]
    NotStronglyConvex,
    #[error("not a face")]
    NotAFace,
    #[error("cone is not in the fan")]
    ConeNotInFan,
    #[error("ray index {index} out of range")]
    RayIndexOutOfRange { index: usize },
    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("sublattice basis is not saturated")]
    NotSaturated,
    #[error("character must be primitive and nonzero")]
    ImprimitiveCharacter,
    #[error("division remainder nonzero")]
    DivisionRemainder,
    #[error("quotient rings differ")]
    QuotientMismatch,
    #[error("v is not generic for this cone")]
    NotGeneric,
    #[error("GKM description requires a complete fan")]
    NotComplete,
    #[error("restrictions disagree modulo the ideal of cone {cone}; star not strongly connected")]
    IllDefinedRestriction { cone: usize },
    #[error("tuple is not a member: violated edges {violations:?}")]
    NotMember { violations: Vec<(usize, usize)> },
    #[error("component count {found} does not match {expected} maximal cones")]
    ComponentCount { expected: usize, found: usize },
    #[error("cellular/GKM inconsistency at cone {cone}")]
    Inconsistent { cone: usize },
    #[error("solver exhausted at cone {cone}")]
    SolverExhausted { cone: usize },
    #[error("not in the span (cone {cone})")]
    NotInSpan { cone: usize },
    #[error("invalid basis: {0}")]
    InvalidBasis(&'static str),
}
