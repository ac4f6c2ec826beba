//! Monomial ideals, Newton polytopes and their normal fans.

pub mod closure;
pub mod faces;
pub mod monomial;
pub mod polytope;

pub use closure::{integral_closure, valuation_ideal};
pub use faces::{all_faces, face_initial_ideal, supporting_faces, PolytopeFace};
pub use monomial::{minimalize, Monomial, MonomialIdeal, MonomialValuation};
pub use polytope::{exceptional_rays, exceptional_rays_of, newton_polytope, normal_fan, Facet, NewtonPolytope, NormalFan};
