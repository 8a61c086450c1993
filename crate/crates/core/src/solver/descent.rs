//! Sampled test of a uniform descent direction on a sublevel set.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verify::domination_tolerance;
use crate::config::Config;
use crate::poly::VectorObjective;
use crate::sets::sphere::{normalize, sort_dedup};
use crate::sets::{box_grid, FeasibleSet};

/// Half-width of the box sampled for points of `S`.
const SAMPLE_RADIUS: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentCheck {
    pub direction: Vec<f64>,
    pub passed: bool,
    /// Smallest step that worked for every sample.
    pub step: Option<f64>,
    pub samples: usize,
    /// The check is a finite surrogate for a statement about all of `S`.
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentOptions {
    pub steps: Vec<f64>,
    pub budget: usize,
    pub tol: f64,
}

impl DescentOptions {
    pub fn from_config(cfg: &Config) -> Self {
        DescentOptions { steps: cfg.sampler.descent_steps.clone(), budget: cfg.sampler.descent_budget, tol: cfg.tolerances.domination }
    }
}

fn per_axis(n: usize) -> usize {
    match n {
        1 => 101,
        2 => 25,
        3 => 9,
        _ => 5,
    }
}

/// Points of `s`: box-grid points repaired into `s`, plus `anchors`,
/// deduplicated and thinned evenly to at most `budget`.
pub fn sample_set(s: &FeasibleSet, anchors: &[Vec<f64>], budget: usize) -> Vec<Vec<f64>> {
    let grid = box_grid(s.dim(), SAMPLE_RADIUS, per_axis(s.dim()));
    let mut pts: Vec<Vec<f64>> = grid.par_iter().filter_map(|x| if s.is_feasible(x) { Some(x.clone()) } else { s.repair(x, 0.5, 300) }).collect();
    pts.extend(anchors.iter().filter(|a| s.is_feasible(a)).cloned());
    let pts = sort_dedup(pts, 1e-9);
    if pts.len() <= budget {
        return pts;
    }
    (0..budget).map(|i| pts[i * pts.len() / budget].clone()).collect()
}

/// Whether some step `t` moves every sample `x ∈ S` to a point `x − t·v`
/// of `K` with `f(x − t·v) ≤ f(x)` componentwise, at tolerance
/// `tol·(1 + max_i |f_i(x)|)`.
pub fn descent_direction_check(k: &FeasibleSet, s: &FeasibleSet, f: &VectorObjective, v: &[f64], anchors: &[Vec<f64>], opts: &DescentOptions) -> DescentCheck {
    let label = "sampled evidence".to_string();
    let Some(v) = normalize(v) else {
        return DescentCheck { direction: v.to_vec(), passed: false, step: None, samples: 0, label };
    };
    let samples = sample_set(s, anchors, opts.budget);
    let holds = |t: f64| {
        samples.par_iter().all(|x| {
            let y: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a - t * b).collect();
            if !k.is_feasible(&y) {
                return false;
            }
            let fx = f.eval_unchecked(x);
            let tau = domination_tolerance(&fx, opts.tol);
            f.eval_unchecked(&y).iter().zip(&fx).all(|(a, b)| *a <= b + tau)
        })
    };
    let step = opts.steps.iter().copied().find(|&t| holds(t));
    DescentCheck { direction: v, passed: step.is_some(), step, samples: samples.len(), label }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::sets::expr::{parse_constraint, parse_expr};
    use crate::sets::{sublevel_set, Constraint};

    fn linear() -> VectorObjective {
        VectorObjective::new(vec![Polynomial::var(2, 0), Polynomial::var(2, 1)]).unwrap()
    }

    fn opts() -> DescentOptions {
        DescentOptions::from_config(&Config::for_dim(2))
    }

    #[test]
    fn linear_translation_signs() {
        let k = FeasibleSet::whole_space(2);
        let f = linear();
        let s = sublevel_set(&k, &f, &[0.0, 0.0]).unwrap();
        let up = descent_direction_check(&k, &s, &f, &[1.0, 1.0], &[], &opts());
        assert!(up.passed);
        assert_eq!(up.step, Some(1e-3));
        let down = descent_direction_check(&k, &s, &f, &[-1.0, -1.0], &[], &opts());
        assert!(!down.passed);
        assert_eq!(down.label, "sampled evidence");
    }

    #[test]
    fn constant_along_line() {
        // f ≡ 0 on the line x1 = x2, which contains every translate.
        let mut cs = Vec::new();
        cs.extend(parse_constraint("x1 = x2", 2).unwrap().into_iter().map(Constraint::Expr));
        let k = FeasibleSet::system(2, cs).unwrap();
        let f = VectorObjective::new(vec![parse_expr("x1 - x2", 2).unwrap().to_polynomial(2).unwrap(), parse_expr("x2 - x1", 2).unwrap().to_polynomial(2).unwrap()]).unwrap();
        let s = sublevel_set(&k, &f, &[1.0, 1.0]).unwrap();
        let c = descent_direction_check(&k, &s, &f, &[1.0, 1.0], &[vec![1.0, 1.0]], &opts());
        assert!(c.passed, "{c:?}");
        assert!(c.samples > 1);
    }

    #[test]
    fn vertical_direction_in_exp_example() {
        let mut cs = Vec::new();
        for c in ["x1 >= 0", "exp(x1) - x1 >= 0"] {
            cs.extend(parse_constraint(c, 2).unwrap().into_iter().map(Constraint::Expr));
        }
        let k = FeasibleSet::system(2, cs).unwrap();
        let f = VectorObjective::new(vec![parse_expr("x1^3", 2).unwrap().to_polynomial(2).unwrap(), Polynomial::var(2, 0)]).unwrap();
        let s = sublevel_set(&k, &f, &[1.0, 0.0]).unwrap();
        for v in [[0.0, 1.0], [0.0, -1.0]] {
            assert!(descent_direction_check(&k, &s, &f, &v, &[], &opts()).passed);
        }
        assert!(!descent_direction_check(&k, &s, &f, &[1.0, 0.0], &[], &opts()).passed);
    }

    #[test]
    fn thinning_respects_budget() {
        let s = FeasibleSet::whole_space(2);
        assert_eq!(sample_set(&s, &[], 100).len(), 100);
        assert_eq!(sample_set(&s, &[], 10_000).len(), 625);
    }
}
