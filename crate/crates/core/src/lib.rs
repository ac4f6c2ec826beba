//! Exact computations for cobordant blow-ups of monomial centers.

pub mod cobord;
pub mod error;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod polyhedra;
pub mod singular;

pub use error::{Error, Result};
