//! Exact polyhedral computation.
//!
//! Polyhedra carry an inequality description ([`HRep`]), a generator
//! description ([`VRep`]), or both; conversions run the double description
//! method in [`dd`]. All arithmetic is exact.

pub mod dd;
pub mod linalg;
pub mod lp;
mod polyhedron;
mod reps;

use thiserror::Error;

pub use dd::{h_to_v, v_to_h};
pub use polyhedron::{ConeInclusion, Escape, LinearMin, Polyhedron};
pub use reps::{lex_cmp, Generator, HRep, Row, VRep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("operation is undefined for the empty polyhedron")]
    EmptyPolyhedron,
    #[error("argument is not a cone with apex at the origin")]
    NotACone,
}

/// `inner ⊆ outer` for two cones, with a violating generator on failure.
pub fn cone_contains(inner: &Polyhedron, outer: &Polyhedron) -> Result<ConeInclusion, GeometryError> {
    inner.cone_contains_in(outer)
}
