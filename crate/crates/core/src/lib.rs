//! Exact kernels for cellular toric varieties.
//!
//! The crate works entirely over the integers: lattice normal forms,
//! rational polyhedral cones and fans, Bialynicki-Birula cellularity
//! certificates, and three presentations of the torus-equivariant K-ring
//! of a complete cellular toric variety (congruence tuples, piecewise
//! Laurent polynomials, and a triangular module basis).
//!
//! Indices of maximal cones are 0-based throughout the API.

#![no_std]

extern crate alloc;

pub mod basis;
pub mod cellular;
pub mod cone;
mod error;
pub mod fan;
pub mod gkm;
pub mod lattice;
pub mod laurent;
pub mod plp;

pub use basis::{
    construct_basis, construct_basis_with, coordinates, euler_class_at, structure_constants,
    upward_neighbors, ExtensionStrategy, KBasis, StructureConstants,
};
pub use cellular::{
    bb_order, certify_cellular, distinguished_face, is_generic, CellularCertificate, OrderOutcome,
    Rejection,
};
pub use cone::Cone;
pub use error::Error;
pub use fan::{Fan, StarFan, Violation, Wall};
pub use gkm::{build_gkm, GkmEdge, GkmGraph, KClass, Membership};
pub use lattice::{LatticeMatrix, LatticeVector, QuotientLattice, SmithForm};
pub use laurent::{euler, LaurentPoly, QuotientRingElem};
pub use plp::{PlpFunction, PlpReport};

pub use num_bigint::BigInt;

pub type Result<T, E = Error> = core::result::Result<T, E>;
