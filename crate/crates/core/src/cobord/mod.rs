//! Cobordant blow-up presentations of monomial centers.

pub mod complex;
pub mod presentation;
pub mod rees;
pub mod transform;

pub use complex::{dual_valuation_complex, initial_by_valuations, weighted_normal_bundle, GradedPresentation, ValuationFaceComplex};
pub use presentation::{
    full_cobordization, multi_weighted, quotient_type, stable_locus, weighted_cobordant, CobordPresentation,
    PresentationKind, QuotientReport, WeakCenter, WeightedCenter, MAX_PRESENTATION_DIM,
};
pub use rees::{ratio, simple_cobordant, ReesPresentation};
pub use transform::{strict_transform_monomial, substitute_back, transform, weak_transform_ideal, IdealTransform, TransformResult};
