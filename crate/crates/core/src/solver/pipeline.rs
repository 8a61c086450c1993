//! Existence pipeline: regularity report, certification or descent route,
//! then the scalarized solve.

use serde::{Deserialize, Serialize};

use super::descent::{descent_direction_check, DescentCheck, DescentOptions};
use super::scalarized::{solve_scalarized, SolveResult};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::VectorObjective;
use crate::regularity::{default_lambdas, report_on_slice, section_bounded_probe, sphere_pareto_oracle, ClassifierOptions, OracleOutcome, ParetoMode, RegularityReport, SectionProbe, SphereSlice};
use crate::sets::sphere::lex_cmp;
use crate::sets::{s_infinity, sublevel_set, FeasibleSet, RayProbe, SChoice};

/// Most descent directions tested on the non-regular route.
const MAX_DESCENT_DIRECTIONS: usize = 8;

pub const CERTIFIED: &str = "existence certified by relative regularity and section-boundedness";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineRoute {
    /// Regular and section-bounded.
    Certified,
    /// Not regular; every recession direction passed the descent check.
    Descent,
    /// No route applied; the solve was not attempted.
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineResult {
    pub report: RegularityReport,
    pub section: SectionProbe,
    pub route: PipelineRoute,
    pub certification: Option<String>,
    pub descent_checks: Vec<DescentCheck>,
    pub solve: SolveResult,
}

/// First strictly positive weight vector of the list, else uniform weights.
pub fn solve_weights(lambdas: &[Vec<f64>], q: usize) -> Vec<f64> {
    lambdas.iter().find(|l| l.len() == q && l.iter().all(|x| *x > 0.0)).cloned().unwrap_or_else(|| vec![1.0 / q as f64; q])
}

/// Whether the regularity verdicts together with the per-index section
/// probe meet one of the existence hypotheses.
fn certified(report: &RegularityReport, section: &SectionProbe) -> bool {
    let bounded = |i: usize| section.per_index.iter().any(|p| p.index == i && p.bounded);
    let zero = report.lambda_results.iter().any(|r| r.trichotomy.is_regular() && r.index_set.iter().all(|&i| bounded(i)));
    let strong = report.verdicts.relatively_strongly_regular && section.per_index.iter().any(|p| p.bounded);
    let weak = report.verdicts.relatively_weakly_regular && section.bounded;
    zero || strong || weak
}

/// Runs the regularity report for `choice`, then either certifies
/// existence and solves, or tries the descent route on the recession
/// directions of the weak problem, or gives up with the failed hypothesis.
pub fn existence_pipeline(k: &FeasibleSet, f: &VectorObjective, xbar: &[f64], choice: &SChoice, lambdas: &[Vec<f64>], cfg: &Config) -> Result<PipelineResult> {
    if f.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: f.dim() });
    }
    let lambdas = if lambdas.is_empty() { default_lambdas(f.len()) } else { lambdas.to_vec() };
    for l in &lambdas {
        crate::regularity::validate_lambda(l, f.len())?;
    }
    let opts = ClassifierOptions::from_config(cfg);
    let cone = s_infinity(k, f, choice, &RayProbe::from_config(&cfg.sampler))?;
    let slice = SphereSlice::new(cone, cfg.sampler.sphere_resolution_deg)?;
    let report = report_on_slice(f, choice, &slice, &lambdas, &opts)?;
    let all: Vec<usize> = (0..f.len()).collect();
    let section = section_bounded_probe(f, k, xbar, &all, cfg)?;
    let weights = solve_weights(&lambdas, f.len());
    let finish = |route, certification, descent_checks, solve| Ok(PipelineResult { report: report.clone(), section: section.clone(), route, certification, descent_checks, solve });

    if report.verdicts.any() {
        if certified(&report, &section) {
            let solve = solve_scalarized(k, f, xbar, &weights, cfg)?;
            return finish(PipelineRoute::Certified, Some(CERTIFIED.to_string()), vec![], solve);
        }
        return finish(PipelineRoute::None, None, vec![], SolveResult::inconclusive("regular, but section-boundedness failed"));
    }

    let forms = f.leading_forms();
    let directions = match sphere_pareto_oracle(&forms, &slice, opts.tol_rel, ParetoMode::Weak)? {
        OracleOutcome::Directions { directions } => directions,
        OracleOutcome::Unknown => return finish(PipelineRoute::None, None, vec![], SolveResult::inconclusive("recession directions could not be sampled")),
    };
    let taus: Vec<f64> = forms.components().iter().map(|p| opts.tol_rel * (1.0 + p.coeff_norm())).collect();
    let mut limit_dirs: Vec<(f64, Vec<f64>)> = directions
        .into_iter()
        .filter_map(|v| {
            let fv = forms.eval_unchecked(&v);
            fv.iter().zip(&taus).all(|(a, t)| *a <= *t).then(|| (fv.iter().map(|a| a * a).sum::<f64>().sqrt(), v))
        })
        .collect();
    limit_dirs.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| lex_cmp(&a.1, &b.1)));
    limit_dirs.truncate(MAX_DESCENT_DIRECTIONS);
    let s = sublevel_set(k, f, xbar)?;
    let dopts = DescentOptions::from_config(cfg);
    let mut checks = Vec::with_capacity(limit_dirs.len());
    for (_, v) in &limit_dirs {
        let c = descent_direction_check(k, &s, f, v, &[xbar.to_vec()], &dopts);
        let failed = !c.passed;
        checks.push(c);
        if failed {
            let reason = format!("descent-direction condition failed for direction {v:?}");
            return finish(PipelineRoute::None, None, checks, SolveResult::inconclusive(reason));
        }
    }
    let solve = solve_scalarized(k, f, xbar, &weights, cfg)?;
    finish(PipelineRoute::Descent, None, checks, solve)
}
