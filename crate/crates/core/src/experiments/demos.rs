//! Two fixed demonstrations: a weakly regular problem with non-regular
//! problems arbitrarily close to it, and a problem whose grid candidates
//! are all dominated by points further out.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::Result;
use crate::poly::{Polynomial, VectorObjective};
use crate::regularity::{relative_regularity_report, ParetoVerdict};
use crate::sets::sphere::lex_cmp;
use crate::sets::{bounds_grid, FeasibleSet, SChoice};
use crate::solver::{domination_tolerance, verify_pareto, SolveStatus, VerifyVerdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonopenRow {
    pub label: String,
    /// Perturbation index `n`, absent for the base problem.
    pub n: Option<u32>,
    pub objective: Vec<String>,
    pub s_choice: SChoice,
    pub cone_samples: usize,
    pub strict_class: ParetoVerdict,
    pub weakly_regular: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakNonopenReport {
    pub experiment: String,
    pub rows: Vec<NonopenRow>,
    pub base_weakly_regular: bool,
    pub variants_not_weakly_regular: bool,
}

impl WeakNonopenReport {
    pub fn reproduced(&self) -> bool {
        self.base_weakly_regular && self.variants_not_weakly_regular
    }
}

/// `f = (x1, x2)` on `{x1 ≥ 0}` against `fⁿ = (x2, x1 − x2/n)`.
///
/// The base problem is classified with `S` the sublevel set at the origin
/// and with `S = K`. The sublevel set of `fⁿ` at the origin is `{0}`, so
/// the variants use `S = K`, whose cone is the half-plane.
pub fn weak_nonopen_demo(cfg: &Config) -> Result<WeakNonopenReport> {
    let k = FeasibleSet::polyhedron(2, vec![vec![-1.0, 0.0]], vec![0.0])?;
    let sublevel = SChoice::SublevelCone { basepoint: vec![0.0, 0.0] };
    let x1 = Polynomial::var(2, 0);
    let x2 = Polynomial::var(2, 1);
    let base = VectorObjective::new(vec![x1.clone(), x2.clone()])?;
    let mut problems = vec![(None, base.clone(), sublevel), (None, base, SChoice::WholeSetCone)];
    for n in [10u32, 100, 1000] {
        problems.push((Some(n), VectorObjective::new(vec![x2.clone(), x1.sub(&x2.scale(1.0 / n as f64))?])?, SChoice::WholeSetCone));
    }
    let mut rows = Vec::with_capacity(problems.len());
    for (n, f, choice) in problems {
        let r = relative_regularity_report(&k, &f, &choice, &[], cfg)?;
        rows.push(NonopenRow {
            label: format!("{} ({})", n.map_or_else(|| "base".to_string(), |n| format!("n = {n}")), choice.cli_name()),
            n,
            objective: f.components().iter().map(|p| p.to_string()).collect(),
            s_choice: choice,
            cone_samples: r.cone.samples,
            weakly_regular: r.verdicts.relatively_weakly_regular,
            strict_class: r.strict_class,
        });
    }
    Ok(WeakNonopenReport {
        experiment: "weak_nonopen".into(),
        base_weakly_regular: rows.iter().filter(|r| r.n.is_none()).all(|r| r.weakly_regular),
        variants_not_weakly_regular: rows.iter().filter(|r| r.n.is_some()).all(|r| !r.weakly_regular),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: Vec<f64>,
    pub value: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonexistenceReport {
    pub experiment: String,
    pub candidate_box: Vec<(f64, f64)>,
    pub escape_box: Vec<(f64, f64)>,
    /// Grid points of the candidate box not dominated within it.
    pub candidates: usize,
    /// Candidates with a strict dominator in the escape box.
    pub dominated: usize,
    pub fraction: f64,
    pub undominated: Vec<Vec<f64>>,
    /// Successive strict dominators from the best candidate.
    pub descent_curve: Vec<CurvePoint>,
}

impl NonexistenceReport {
    pub fn status(&self) -> SolveStatus {
        SolveStatus::NonexistenceEvidence { descent_curve: self.descent_curve.iter().map(|p| (p.x.clone(), p.value.clone())).collect() }
    }
}

/// Longest chain followed by the descent curve.
const MAX_CURVE: usize = 50;

fn strictly_better(a: &[f64], b: &[f64], tau: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| *x < y - tau)
}

/// Filters the candidate grid to points no other candidate strictly
/// dominates, then looks for a strict dominator of each on the escape
/// grid. A chain of best dominators from the candidate with the least
/// value sum shows the values decreasing without a limit point.
pub fn nonexistence_demo(k: &FeasibleSet, f: &VectorObjective, candidate_box: &[(f64, f64)], escape_box: &[(f64, f64)], grid: (usize, usize), tol: f64) -> Result<NonexistenceReport> {
    let pts: Vec<(Vec<f64>, Vec<f64>)> = bounds_grid(candidate_box, grid.0).into_iter().filter(|x| k.is_feasible(x)).map(|x| (f.eval_unchecked(&x), x)).map(|(v, x)| (x, v)).collect();
    let nondominated: Vec<&(Vec<f64>, Vec<f64>)> = pts
        .par_iter()
        .filter(|(_, v)| {
            let tau = domination_tolerance(v, tol);
            !pts.iter().any(|(_, w)| strictly_better(w, v, tau))
        })
        .collect();
    let verdicts = nondominated.par_iter().map(|(x, _)| verify_pareto(x, k, f, escape_box, grid.1, tol)).collect::<Result<Vec<_>>>()?;
    let dominated = verdicts.iter().filter(|v| matches!(v, VerifyVerdict::Dominated { .. })).count();
    let undominated: Vec<Vec<f64>> = nondominated.iter().zip(&verdicts).filter(|(_, v)| !matches!(v, VerifyVerdict::Dominated { .. })).map(|(c, _)| c.0.clone()).collect();

    let mut descent_curve = Vec::new();
    let start = nondominated.iter().min_by(|a, b| a.1.iter().sum::<f64>().total_cmp(&b.1.iter().sum::<f64>()).then_with(|| lex_cmp(&a.0, &b.0)));
    if let Some((x0, v0)) = start {
        descent_curve.push(CurvePoint { x: x0.clone(), value: v0.clone() });
        let mut x = x0.clone();
        while descent_curve.len() < MAX_CURVE {
            match verify_pareto(&x, k, f, escape_box, grid.1, tol)? {
                VerifyVerdict::Dominated { witness } => {
                    descent_curve.push(CurvePoint { value: f.eval_unchecked(&witness), x: witness.clone() });
                    x = witness;
                }
                _ => break,
            }
        }
    }
    let candidates = nondominated.len();
    Ok(NonexistenceReport {
        experiment: "nonexistence".into(),
        candidate_box: candidate_box.to_vec(),
        escape_box: escape_box.to_vec(),
        candidates,
        dominated,
        fraction: if candidates == 0 { 0.0 } else { dominated as f64 / candidates as f64 },
        undominated,
        descent_curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::expr::parse_expr;

    fn poly(s: &str) -> Polynomial {
        parse_expr(s, 2).unwrap().to_polynomial(2).unwrap()
    }

    #[test]
    fn weak_regularity_is_not_open() {
        let r = weak_nonopen_demo(&Config::for_dim(2)).unwrap();
        assert!(r.reproduced(), "{r:#?}");
        assert_eq!(r.rows.len(), 5);
        assert!(r.rows[..2].iter().all(|row| row.strict_class.tag.name() == "empty"));
        assert!(r.rows[2..].iter().all(|row| row.strict_class.tag.name() == "unbounded"));
        // The unbounded witness is the negative vertical axis for every n.
        for row in &r.rows[2..] {
            let w = row.strict_class.tag.witness().unwrap();
            assert!(w[0].abs() < 1e-9 && (w[1] + 1.0).abs() < 1e-9, "{w:?}");
        }
    }

    #[test]
    fn escaping_minimizers_dominate_every_candidate() {
        let f = VectorObjective::new(vec![poly("(x1^4*x2^4 - 1)^2 + 2*x1^4"), poly("(x1^2*x2^2 - 1)^2 + 4*x1^2")]).unwrap();
        let k = FeasibleSet::whole_space(2);
        let r = nonexistence_demo(&k, &f, &[(0.0, 2.0); 2], &[(0.0, 20.0); 2], (41, 201), 1e-6).unwrap();
        assert!(r.candidates > 0);
        assert_eq!(r.fraction, 1.0);
        assert!(r.descent_curve.len() >= 2);
        assert!(r.descent_curve.windows(2).all(|w| w[1].value.iter().zip(&w[0].value).all(|(a, b)| a < b)));
    }

    #[test]
    fn self_scan_finds_nothing() {
        let f = VectorObjective::new(vec![poly("(x1^4*x2^4 - 1)^2 + 2*x1^4"), poly("(x1^2*x2^2 - 1)^2 + 4*x1^2")]).unwrap();
        let k = FeasibleSet::whole_space(2);
        let r = nonexistence_demo(&k, &f, &[(0.0, 2.0); 2], &[(0.0, 2.0); 2], (41, 41), 1e-6).unwrap();
        assert_eq!(r.dominated, 0);
        assert_eq!(r.descent_curve.len(), 1);
    }

    #[test]
    fn pareto_point_survives() {
        let f = VectorObjective::new(vec![poly("x1^2 + x2^2"), poly("(x1 - 1)^2 + x2^2")]).unwrap();
        let r = nonexistence_demo(&FeasibleSet::whole_space(2), &f, &[(-1.0, 2.0); 2], &[(-5.0, 5.0); 2], (31, 101), 1e-6).unwrap();
        assert!(r.fraction < 1.0);
    }
}
