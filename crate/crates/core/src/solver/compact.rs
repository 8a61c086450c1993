//! Global minimization of a polynomial over a feasible set inside a box.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::search::{compass, nelder_mead, CompassOptions};
use crate::sets::sphere::lex_cmp;
use crate::sets::{bounds_grid, FeasibleSet};

#[derive(Debug, Clone, PartialEq)]
pub struct CompactMin {
    pub x: Vec<f64>,
    pub value: f64,
    /// Every feasible point evaluated (grid, starts and refined points),
    /// sorted by value then lexicographically.
    pub candidates: Vec<(Vec<f64>, f64)>,
}

/// Starting points refined after the grid pass, besides caller starts.
const REFINE_STARTS: usize = 5;

fn in_box(bounds: &[(f64, f64)], x: &[f64]) -> bool {
    bounds.iter().zip(x).all(|(&(lo, hi), &xi)| xi >= lo && xi <= hi)
}

/// Dense grid on the box, then local refinement from the best feasible grid
/// points and from every feasible caller start. Refinement runs a
/// Nelder-Mead search on a penalized objective followed by feasibility
/// repair, and a compass search that only accepts feasible points.
pub fn minimize_in_box(g: &Polynomial, k: &FeasibleSet, bounds: &[(f64, f64)], starts: &[Vec<f64>], per_axis: usize) -> Result<CompactMin> {
    let n = k.dim();
    if bounds.len() != n || g.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: if g.dim() != n { g.dim() } else { bounds.len() } });
    }
    let grid = bounds_grid(bounds, per_axis.max(2));
    let cell = bounds.iter().map(|(lo, hi)| (hi - lo) / (per_axis.max(2) - 1) as f64).fold(f64::INFINITY, f64::min);
    let scored: Vec<(f64, f64)> = grid.par_iter().map(|x| (k.violation(x), g.eval_unchecked(x))).collect();
    let mut candidates: Vec<(Vec<f64>, f64)> = grid.iter().zip(&scored).filter(|(_, s)| s.0 == 0.0).map(|(x, s)| (x.clone(), s.1)).collect();
    let good_starts: Vec<Vec<f64>> = starts.iter().filter(|x| x.len() == n && in_box(bounds, x) && k.is_feasible(x)).cloned().collect();
    candidates.extend(good_starts.iter().map(|x| (x.clone(), g.eval_unchecked(x))));
    if candidates.is_empty() {
        let mut order: Vec<usize> = (0..grid.len()).collect();
        order.sort_by(|&a, &b| scored[a].0.total_cmp(&scored[b].0).then(a.cmp(&b)));
        for &i in order.iter().take(REFINE_STARTS) {
            if let Some(x) = k.repair(&grid[i], cell, 4000) {
                if in_box(bounds, &x) {
                    candidates.push((x.clone(), g.eval_unchecked(&x)));
                }
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::NoFeasibleSample);
    }
    sort_candidates(&mut candidates);
    let mut seeds: Vec<Vec<f64>> = candidates.iter().take(REFINE_STARTS).map(|c| c.0.clone()).collect();
    seeds.extend(good_starts);
    let refined: Vec<(Vec<f64>, f64)> = seeds.par_iter().flat_map_iter(|x0| local_refine(g, k, bounds, x0, cell)).collect();
    candidates.extend(refined);
    sort_candidates(&mut candidates);
    let (x, value) = candidates[0].clone();
    Ok(CompactMin { x, value, candidates })
}

fn sort_candidates(c: &mut [(Vec<f64>, f64)]) {
    c.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| lex_cmp(&a.0, &b.0)));
}

/// Feasible local improvements of `x0`.
fn local_refine(g: &Polynomial, k: &FeasibleSet, bounds: &[(f64, f64)], x0: &[f64], cell: f64) -> Vec<(Vec<f64>, f64)> {
    let n = x0.len();
    let barrier = |x: &[f64]| if in_box(bounds, x) && k.is_feasible(x) { g.eval_unchecked(x) } else { f64::INFINITY };
    let polish = |x: &[f64]| {
        let opts = CompassOptions { step: cell, min_step: cell * 1e-10, max_evals: 3000, diagonals: n <= 4 };
        let r = compass(barrier, x, opts, |_| false);
        (r.value.is_finite()).then_some((r.x, r.value))
    };
    let mut out = Vec::new();
    if let Some(p) = polish(x0) {
        out.push(p);
    }
    let g0 = g.eval_unchecked(x0).abs();
    let mu = 1e6 * (1.0 + g0);
    let penalty = |x: &[f64]| if in_box(bounds, x) { g.eval_unchecked(x) + mu * k.violation(x) } else { f64::INFINITY };
    let nm = nelder_mead(penalty, x0, cell, 400 * n, 1e-14);
    if let Some(y) = k.repair(&nm.x, cell * 1e-3, 2000) {
        if in_box(bounds, &y) {
            if let Some(p) = polish(&y) {
                out.push(p);
            }
        }
    }
    out
}

/// [`minimize_in_box`] on the box `[-r, r]^n` without extra starts.
pub fn minimize_on_compact(g: &Polynomial, k: &FeasibleSet, radius: f64, per_axis: usize) -> Result<CompactMin> {
    let bounds = vec![(-radius, radius); k.dim()];
    minimize_in_box(g, k, &bounds, &[], per_axis)
}
