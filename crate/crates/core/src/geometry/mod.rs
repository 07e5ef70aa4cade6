//! Three-dimensional lattice polytopes: hulls, normal fans, lattice width and
//! integral unimodular affine equivalence.

mod fan;
mod iua;
mod point;
mod polytope;
mod width;

pub use fan::{normal_fan, Cone, NormalFan};
pub use iua::{iua_equivalent, UnimodularAffineMap};
pub use point::{det3, LatticePoint3};
pub use polytope::{Edge, Facet, Hull, LatticePolytope};
pub use width::{lattice_width, width_along};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("polytope has no points")]
    Empty,
    #[error("polytope is {dim}-dimensional; a 3-dimensional one is required")]
    Degenerate { dim: usize },
    #[error("matrix has determinant {0}, expected ±1")]
    NotUnimodular(i64),
    #[error("malformed input: {0}")]
    Malformed(String),
}
