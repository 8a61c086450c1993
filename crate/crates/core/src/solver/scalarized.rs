//! Weighted-sum minimization over growing balls intersected with a
//! sublevel set, with minimal-norm selection and an interior stopping rule.

use serde::{Deserialize, Serialize};

use super::compact::minimize_in_box;
use super::verify::{verification_grid, verify_pareto, VerifyVerdict};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, VectorObjective};
use crate::search::{compass, CompassOptions};
use crate::sets::sphere::{dist, lex_cmp, norm};
use crate::sets::{sublevel_set, FeasibleSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Iterate {
    pub radius: f64,
    pub x: Vec<f64>,
    /// Optimal value of the truncated problem.
    pub value: f64,
    pub norm: f64,
    /// `‖x‖ ≤ radius − margin`.
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolveStatus {
    ParetoFound { x_star: Vec<f64>, value: Vec<f64>, scalar_value: f64, lambda_used: Vec<f64>, verification: VerifyVerdict },
    Inconclusive { reason: String },
    /// Points with strictly decreasing values and no limit in the search region.
    NonexistenceEvidence { descent_curve: Vec<(Vec<f64>, Vec<f64>)> },
}

impl SolveStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SolveStatus::ParetoFound { .. } => "pareto_found",
            SolveStatus::Inconclusive { .. } => "inconclusive",
            SolveStatus::NonexistenceEvidence { .. } => "nonexistence_evidence",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub iterates: Vec<Iterate>,
    /// Stopping rule in force, echoed for the report.
    pub stopping_rule: String,
}

impl SolveResult {
    pub fn inconclusive(reason: impl Into<String>) -> Self {
        SolveResult { status: SolveStatus::Inconclusive { reason: reason.into() }, iterates: vec![], stopping_rule: String::new() }
    }

    pub fn is_found(&self) -> bool {
        matches!(self.status, SolveStatus::ParetoFound { .. })
    }
}

fn stopping_rule(cfg: &Config) -> String {
    format!(
        "stop at two consecutive ball minimizers with norm <= radius - {} lying within {} of each other",
        cfg.tolerances.interior_margin, cfg.tolerances.stabilization
    )
}

/// Minimal-norm point of `{x ∈ S ∩ rB : g(x) ≤ level}` reachable from `x0`.
fn shrink_norm(g: &Polynomial, s: &FeasibleSet, r: f64, level: f64, x0: &[f64], step: f64) -> Vec<f64> {
    let obj = |x: &[f64]| if norm(x) <= r && s.is_feasible(x) && g.eval_unchecked(x) <= level { norm(x) } else { f64::INFINITY };
    let opts = CompassOptions { step, min_step: step * 1e-12, max_evals: 4000, diagonals: x0.len() <= 4 };
    let res = compass(obj, x0, opts, |_| false);
    if res.value <= norm(x0) { res.x } else { x0.to_vec() }
}

/// Minimizes `Σ λ_i f_i` over `K_x̄ ∩ rB` for each radius of the ball
/// schedule. Among candidates within `near_optimal·(1 + |best|)` of the
/// best value the one of least norm is kept, then pushed towards the
/// origin inside that band. Two consecutive interior iterates within the
/// stabilization distance yield a Pareto candidate, which is checked
/// against a brute-force domination scan around it.
pub fn solve_scalarized(k: &FeasibleSet, f: &VectorObjective, xbar: &[f64], lambda: &[f64], cfg: &Config) -> Result<SolveResult> {
    if lambda.len() != f.len() || lambda.iter().any(|l| !l.is_finite() || *l <= 0.0) {
        return Err(Error::BadWeights("scalarization weights must be strictly positive, one per objective".into()));
    }
    let s = sublevel_set(k, f, xbar)?;
    let g = f.weighted_sum(lambda)?;
    let n = k.dim();
    let tol = &cfg.tolerances;
    let mut iterates: Vec<Iterate> = Vec::new();
    let mut prev = xbar.to_vec();
    let mut found: Option<Vec<f64>> = None;
    for &r in &cfg.sampler.ball_schedule {
        let ball = s.within_ball(r);
        let bounds = vec![(-r, r); n];
        let per_axis = cfg.sampler.solver_grid;
        let starts: Vec<Vec<f64>> = [xbar.to_vec(), prev.clone()].into_iter().filter(|x| norm(x) <= r).collect();
        let res = match minimize_in_box(&g, &ball, &bounds, &starts, per_axis) {
            Ok(res) => res,
            Err(Error::NoFeasibleSample) => continue,
            Err(e) => return Err(e),
        };
        let best = res.value;
        let level = best + tol.near_optimal * (1.0 + best.abs());
        let pick = res
            .candidates
            .iter()
            .filter(|c| c.1 <= level)
            .min_by(|a, b| norm(&a.0).total_cmp(&norm(&b.0)).then_with(|| lex_cmp(&a.0, &b.0)))
            .map(|c| c.0.clone())
            .expect("best candidate lies in its own band");
        let cell = 2.0 * r / (per_axis.max(2) - 1) as f64;
        let x = shrink_norm(&g, &ball, r, level, &pick, cell);
        let nx = norm(&x);
        let it = Iterate { radius: r, value: best, norm: nx, interior: nx <= r - tol.interior_margin, x };
        let stable = iterates.last().is_some_and(|p| p.interior && it.interior && dist(&p.x, &it.x) <= tol.stabilization);
        prev = it.x.clone();
        iterates.push(it);
        if stable {
            found = Some(prev.clone());
            break;
        }
    }
    let rule = stopping_rule(cfg);
    let Some(x_star) = found else {
        return Ok(SolveResult { status: SolveStatus::Inconclusive { reason: "minimizers escape to the boundary".into() }, iterates, stopping_rule: rule });
    };
    let hw = cfg.sampler.oracle_half_width;
    let bounds: Vec<(f64, f64)> = x_star.iter().map(|c| (c - hw, c + hw)).collect();
    let verification = verify_pareto(&x_star, k, f, &bounds, verification_grid(n, cfg.sampler.oracle_grid), tol.domination)?;
    if let VerifyVerdict::Dominated { witness } = &verification {
        let reason = format!("candidate {x_star:?} is dominated by {witness:?}");
        return Ok(SolveResult { status: SolveStatus::Inconclusive { reason }, iterates, stopping_rule: rule });
    }
    let status = SolveStatus::ParetoFound { value: f.eval_unchecked(&x_star), scalar_value: g.eval_unchecked(&x_star), lambda_used: lambda.to_vec(), verification, x_star };
    Ok(SolveResult { status, iterates, stopping_rule: rule })
}
