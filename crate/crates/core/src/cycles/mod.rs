//! Zero cycles, their norm laws, and the Hilbert–Chow and Chow-form
//! constructions.

pub mod ambient;
pub mod chow;
pub mod cocycle;
pub mod cycle;
pub mod json;
pub mod module;
pub mod pair;
pub mod point;

pub use ambient::Ambient;
pub use cycle::Cycle;
pub use pair::{descend, pairs_equivalent, pushforward, pushforward_morphism, sum_cycles, CyclePair};
pub use point::Point;
pub use module::{functor_law_roundtrip, norm_module, tensor_compatibility, BModule, NormFunctor, RoundTrip};
pub use cocycle::{norm_cocycle, BaseCocycle, Cocycle, Overlap, TripleOverlap};
pub use chow::{chow_determines_cycle, chow_form, chow_multiplicativity_check, projectively_equal, ChowComparison, GradedAlgebra, ProjectiveCycle};
