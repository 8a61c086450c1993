//! Perturbation experiments, genericity sampling and the two
//! demonstrations: non-openness of weak regularity and nonexistence of
//! Pareto points without regularity.

mod demos;
mod equivalence;
mod genericity;
mod stability;

pub use demos::{nonexistence_demo, weak_nonopen_demo, CurvePoint, NonexistenceReport, NonopenRow, WeakNonopenReport};
pub use equivalence::{equivalence_check, nonpositive_form, random_nonpositive_forms, EquivalenceRecord};
pub use genericity::{genericity_sample, matrix_rank, GenericityEntry, GenericityReport};
pub use stability::{lower_order_invariance_check, random_lower_order, random_same_degree, stability_probe, Flip, InvarianceRecord, StabilityRecord};
