//! Brute-force Pareto verification on a grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::VectorObjective;
use crate::sets::sphere::lex_cmp;
use crate::sets::{bounds_grid, FeasibleSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyVerdict {
    /// No grid point improves the candidate in the `(≤, ≠)` order.
    StrictPareto,
    /// Some point is at least as good everywhere and better somewhere, but
    /// none is better in every component.
    WeakParetoOnly { witness: Vec<f64> },
    /// Some point is better in every component.
    Dominated { witness: Vec<f64> },
    /// The box does not contain the candidate.
    Unknown,
}

impl VerifyVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            VerifyVerdict::StrictPareto => "strict_pareto",
            VerifyVerdict::WeakParetoOnly { .. } => "weak_pareto_only",
            VerifyVerdict::Dominated { .. } => "dominated",
            VerifyVerdict::Unknown => "unknown",
        }
    }
}

/// `τ_dom = tol·(1 + max_i |f_i(x*)|)`.
pub fn domination_tolerance(values: &[f64], tol: f64) -> f64 {
    tol * (1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}

/// Points per axis for verification grids: the configured density, capped
/// so the grid has at most about four million points.
pub fn verification_grid(n: usize, configured: usize) -> usize {
    let cap = (4.0e6f64).powf(1.0 / n.max(1) as f64).floor() as usize;
    configured.min(cap).max(2)
}

/// Scans the feasible grid points of the box for improvers of `candidate`.
/// A `Dominated` witness maximizes the smallest improvement; a weak-only
/// witness maximizes the total improvement.
pub fn verify_pareto(candidate: &[f64], k: &FeasibleSet, f: &VectorObjective, bounds: &[(f64, f64)], per_axis: usize, tol: f64) -> Result<VerifyVerdict> {
    if candidate.len() != k.dim() || bounds.len() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: candidate.len().min(bounds.len()) });
    }
    if !k.is_feasible(candidate) {
        return Err(Error::Infeasible(candidate.to_vec()));
    }
    if !bounds.iter().zip(candidate).all(|(&(lo, hi), &c)| c >= lo && c <= hi) {
        return Ok(VerifyVerdict::Unknown);
    }
    let fc = f.eval_unchecked(candidate);
    let tau = domination_tolerance(&fc, tol);
    let grid = bounds_grid(bounds, per_axis);
    // (point, min improvement, total improvement, weakly improving)
    let improvers: Vec<(&Vec<f64>, f64, f64)> = grid
        .par_iter()
        .filter_map(|y| {
            if !k.is_feasible(y) {
                return None;
            }
            let fy = f.eval_unchecked(y);
            let gains: Vec<f64> = fc.iter().zip(&fy).map(|(c, v)| c - v).collect();
            let no_worse = gains.iter().all(|g| *g >= -tau);
            let better = gains.iter().any(|g| *g > tau);
            (no_worse && better).then(|| (y, gains.iter().copied().fold(f64::INFINITY, f64::min), gains.iter().sum()))
        })
        .collect();
    let best = |key: fn(&(&Vec<f64>, f64, f64)) -> f64, pool: &[&(&Vec<f64>, f64, f64)]| {
        pool.iter().max_by(|a, b| key(a).total_cmp(&key(b)).then_with(|| lex_cmp(b.0, a.0))).map(|t| t.0.clone())
    };
    let strong: Vec<&(&Vec<f64>, f64, f64)> = improvers.iter().filter(|t| t.1 > tau).collect();
    if let Some(w) = best(|t| t.1, &strong) {
        return Ok(VerifyVerdict::Dominated { witness: w });
    }
    let all: Vec<&(&Vec<f64>, f64, f64)> = improvers.iter().collect();
    if let Some(w) = best(|t| t.2, &all) {
        return Ok(VerifyVerdict::WeakParetoOnly { witness: w });
    }
    Ok(VerifyVerdict::StrictPareto)
}
