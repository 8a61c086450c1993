//! Numerical test of boundedness from below on a sublevel set.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::VectorObjective;
use crate::sets::{sublevel_set, FeasibleSet};
use crate::solver::minimize_in_box;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionIndex {
    /// Zero-based component index.
    pub index: usize,
    /// `(r, min f_i over K_x̄ ∩ box(x̄, r))` per radius.
    pub minima: Vec<(f64, f64)>,
    pub bounded: bool,
    /// Minimizer at the largest radius when the minima diverge.
    pub witness: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionProbe {
    pub index_set: Vec<usize>,
    pub bounded: bool,
    pub per_index: Vec<SectionIndex>,
}

/// A sequence of box minima diverges when each of the last two radius steps
/// lowers the minimum by more than `0.5·(1 + |previous|)`.
fn diverges(minima: &[(f64, f64)]) -> bool {
    let drops: Vec<bool> = minima.windows(2).map(|w| w[0].1 - w[1].1 > 0.5 * (1.0 + w[0].1.abs())).collect();
    drops.len() >= 2 && drops[drops.len() - 2..].iter().all(|d| *d)
}

/// Whether each `f_i`, `i ∈ index_set`, looks bounded below on `K_x̄`,
/// judged from minima over growing boxes centred at `x̄`.
pub fn section_bounded_probe(f: &VectorObjective, k: &FeasibleSet, xbar: &[f64], index_set: &[usize], cfg: &Config) -> Result<SectionProbe> {
    if index_set.is_empty() || index_set.iter().any(|&i| i >= f.len()) {
        return Err(Error::Config("index set must be a nonempty subset of the objective indices".into()));
    }
    let s = sublevel_set(k, f, xbar)?;
    let per_axis = cfg.sampler.solver_grid;
    let mut per_index = Vec::with_capacity(index_set.len());
    for &i in index_set {
        let fi = f.component(i);
        let mut minima = Vec::new();
        let mut start = xbar.to_vec();
        let mut last_x = xbar.to_vec();
        for &r in &cfg.sampler.section_radii {
            let bounds: Vec<(f64, f64)> = xbar.iter().map(|c| (c - r, c + r)).collect();
            let res = minimize_in_box(fi, &s, &bounds, &[xbar.to_vec(), start.clone()], per_axis)?;
            minima.push((r, res.value));
            start = res.x.clone();
            last_x = res.x;
        }
        let bounded = !diverges(&minima);
        per_index.push(SectionIndex { index: i, minima, bounded, witness: (!bounded).then_some(last_x) });
    }
    Ok(SectionProbe { index_set: index_set.to_vec(), bounded: per_index.iter().all(|p| p.bounded), per_index })
}
