//! Numerical probes of behaviour at infinity: ray membership in an
//! asymptotic cone and boundedness of a set.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sphere::{angle, dist, lex_cmp, norm, normalize, sphere_grid};
use super::FeasibleSet;
use crate::config::SamplerConfig;
use crate::error::{Error, Result};
use crate::search::{compass, CompassOptions};

/// Settings for the ray test `v ∈ K_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct RayProbe {
    pub scales: Vec<f64>,
    pub tol: f64,
    pub budget: usize,
}

impl RayProbe {
    pub fn new(scales: Vec<f64>, tol: f64, budget: usize) -> Self {
        RayProbe { scales, tol, budget }
    }

    pub fn from_config(cfg: &SamplerConfig) -> Self {
        RayProbe { scales: cfg.ray_scales.clone(), tol: cfg.ray_tolerance, budget: cfg.ray_budget }
    }

    /// The scales a direction must pass: the upper half of the schedule.
    /// Small scales are not asymptotic and would reject rays that the set
    /// only approaches logarithmically.
    pub fn required_scales(&self) -> &[f64] {
        &self.scales[self.scales.len() / 2..]
    }

    /// Point `y` with `t·y ∈ K` and `‖y − v‖ ≤ tol`, if the search finds one.
    pub fn search_at(&self, k: &FeasibleSet, v: &[f64], t: f64) -> Option<Vec<f64>> {
        let tv: Vec<f64> = v.iter().map(|vi| t * vi).collect();
        if k.is_feasible(&tv) {
            return Some(v.to_vec());
        }
        let mut x = vec![0.0; v.len()];
        let phi = |y: &[f64]| {
            for (xj, yj) in x.iter_mut().zip(y) {
                *xj = t * yj;
            }
            k.violation(&x) + (dist(y, v) - self.tol).max(0.0)
        };
        let opts = CompassOptions { step: self.tol / 2.0, min_step: self.tol * 1e-12, max_evals: self.budget, diagonals: v.len() <= 4 };
        let res = compass(phi, v, opts, |val| val <= 0.0);
        (res.value <= 0.0 && dist(&res.x, v) <= self.tol).then_some(res.x)
    }

    /// Unit representative of `v` inside the sampled cone: the repaired
    /// point at the largest scale, normalized. `None` when some required
    /// scale fails.
    pub fn project(&self, k: &FeasibleSet, v: &[f64]) -> Option<Vec<f64>> {
        let mut rep = None;
        for &t in self.required_scales().iter().rev() {
            let y = self.search_at(k, v, t)?;
            if rep.is_none() {
                rep = Some(y);
            }
        }
        normalize(&rep?)
    }
}

/// Numerical test of `v ∈ K_∞`: for each required scale `t`, a point of
/// `K` within normalized distance `tol` of `t·v` must be found. Only the
/// direction of `v` matters.
pub fn ray_in_cone(k: &FeasibleSet, v: &[f64], scales: &[f64], tol: f64) -> bool {
    normalize(v).is_some_and(|u| RayProbe::new(scales.to_vec(), tol, 500).project(k, &u).is_some())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundedVerdict {
    /// No feasible point was found on the shell of this radius.
    Bounded { radius: f64 },
    UnboundedWitness { direction: Vec<f64> },
    Unknown,
}

fn shell_resolution(n: usize) -> f64 {
    match n {
        1 | 2 => 5.0,
        3 => 15.0,
        _ => 30.0,
    }
}

/// Looks for feasible points of norm at least `r` for each radius in the
/// schedule, starting a local search from every direction of a coarse
/// sphere grid.
pub fn bounded_probe(k: &FeasibleSet, radii: &[f64]) -> Result<BoundedVerdict> {
    if radii.is_empty() {
        return Err(Error::Config("box schedule must be nonempty".into()));
    }
    let n = k.dim();
    let dirs = sphere_grid(n, shell_resolution(n))?;
    let mut chosen: Vec<Vec<f64>> = Vec::new();
    for &r in radii {
        let found: Vec<Vec<f64>> = dirs
            .par_iter()
            .filter_map(|u| {
                let x0: Vec<f64> = u.iter().map(|ui| r * ui).collect();
                let phi = |x: &[f64]| k.violation(x) + (r - norm(x)).max(0.0) / r;
                let opts = CompassOptions { step: 0.05 * r, min_step: 1e-12 * r, max_evals: 300, diagonals: n <= 4 };
                let res = compass(phi, &x0, opts, |v| v <= 0.0);
                (res.value <= 0.0).then(|| normalize(&res.x)).flatten()
            })
            .collect();
        if found.is_empty() {
            return Ok(BoundedVerdict::Bounded { radius: r });
        }
        let pick = match chosen.last() {
            Some(prev) => found.iter().min_by(|a, b| angle(a, prev).total_cmp(&angle(b, prev)).then(lex_cmp(a, b))),
            None => found.iter().min_by(|a, b| lex_cmp(a, b)),
        };
        chosen.push(pick.expect("nonempty").clone());
    }
    match chosen.as_slice() {
        [.., a, b] if angle(a, b) <= 0.1 => Ok(BoundedVerdict::UnboundedWitness { direction: b.clone() }),
        _ => Ok(BoundedVerdict::Unknown),
    }
}
