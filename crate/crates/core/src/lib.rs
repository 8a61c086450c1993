//! Regularity analysis and existence of Pareto solutions for polynomial
//! vector optimization problems `min f(x)` over `x ∈ K`, where
//! `f = (f_1, ..., f_q)` is polynomial and `K` is a closed set.
//!
//! The central question is whether the recession problems built from the
//! leading forms of `f` on an asymptotic cone have bounded solution sets.
//! When they do, sublevel sets are bounded and a weighted-sum minimization
//! over growing balls produces a Pareto candidate, which is then checked by
//! brute force.

pub mod config;
pub mod error;
pub mod experiments;
pub mod poly;
pub mod problem;
pub mod regularity;
pub mod report;
pub mod search;
pub mod sets;
pub mod solver;

pub use config::{Config, SamplerConfig, Tolerances};
pub use error::{Error, Result};
pub use poly::{Monomial, PolyError, Polynomial, VectorObjective};
pub use problem::{load_problem, parse_problem, Problem, ProblemFile, ProblemSpec};
pub use regularity::{relative_regularity_report, RegularityReport, Trichotomy, TrichotomyTag, Verdicts};
pub use report::{to_canonical_json, Report};
pub use sets::{Cone, FeasibleSet, PolyhedralCone, SChoice};
pub use solver::{existence_pipeline, solve_scalarized, verify_pareto, PipelineResult, SolveResult, SolveStatus, VerifyVerdict};
