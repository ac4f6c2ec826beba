//! Rational polyhedral cones and fans over integer lattices.

pub mod cone;
pub(crate) mod dd;
pub mod fan;
pub mod lattice;

pub use cone::{Cone, FaceLattice};
pub use fan::{is_subdivision, simplicialize, star_subdivision, Fan};
pub use lattice::LatticeVector;
