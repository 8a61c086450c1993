//! Existence of Pareto solutions: compact minimization, scalarization
//! over truncated balls, descent-direction checks and brute-force
//! verification.

mod compact;
mod descent;
mod pipeline;
mod scalarized;
mod verify;

pub use compact::{minimize_in_box, minimize_on_compact, CompactMin};
pub use descent::{descent_direction_check, sample_set, DescentCheck, DescentOptions};
pub use pipeline::{existence_pipeline, solve_weights, PipelineResult, PipelineRoute, CERTIFIED};
pub use scalarized::{solve_scalarized, Iterate, SolveResult, SolveStatus};
pub use verify::{domination_tolerance, verification_grid, verify_pareto, VerifyVerdict};
