//! Feasible sets, sublevel sets and asymptotic cones.
//!
//! A set is either a polyhedron `{Ax ≤ b}` or a list of constraints
//! `g_i(x) ≤ 0`, where each `g_i` is an expression tree or a polynomial.
//! Algorithms test feasibility with a tolerance scaled by the magnitude of
//! the terms involved, so points far from the origin are judged fairly.

pub mod cone;
pub mod expr;
pub mod probe;
pub mod sphere;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VectorObjective};
use crate::search::{compass, CompassOptions};
use expr::Expr;

pub use cone::{s_infinity, Cone, PolyhedralCone, SChoice};
pub use probe::{bounded_probe, ray_in_cone, BoundedVerdict, RayProbe};

/// Relative feasibility slack: `g(x) ≤ FEAS_REL·(1 + |terms of g at x|)`.
pub const FEAS_REL: f64 = 1e-9;

/// One constraint `g(x) ≤ 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    Expr(Expr),
    Poly(Polynomial),
}

impl Constraint {
    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            Constraint::Expr(e) => e.eval(x),
            Constraint::Poly(p) => p.eval_unchecked(x),
        }
    }

    /// Upper bound on the size of the terms summed in `value`.
    pub fn magnitude(&self, x: &[f64]) -> f64 {
        match self {
            Constraint::Expr(e) => e.eval_abs(x),
            Constraint::Poly(p) => p.eval_abs_unchecked(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

impl Polyhedron {
    fn row_constraint(&self, i: usize, dim: usize) -> Constraint {
        let mut terms: Vec<(Vec<u32>, f64)> = Vec::with_capacity(dim + 1);
        for (j, &aij) in self.a[i].iter().enumerate() {
            let mut e = vec![0; dim];
            e[j] = 1;
            terms.push((e, aij));
        }
        terms.push((vec![0; dim], -self.b[i]));
        Constraint::Poly(Polynomial::from_terms(dim, terms).expect("consistent dimension"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SetBody {
    Polyhedron(Polyhedron),
    System(Vec<Constraint>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibleSet {
    dim: usize,
    body: SetBody,
}

impl FeasibleSet {
    /// `{x : Ax ≤ b}`; errors if the dimensions disagree or no feasible
    /// point is found.
    pub fn polyhedron(dim: usize, a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
        }
        if let Some(row) = a.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
        }
        if a.iter().flatten().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::Config("polyhedron data must be finite".into()));
        }
        let set = FeasibleSet { dim, body: SetBody::Polyhedron(Polyhedron { a, b }) };
        set.require_nonempty()?;
        Ok(set)
    }

    pub fn whole_space(dim: usize) -> Self {
        FeasibleSet { dim, body: SetBody::Polyhedron(Polyhedron { a: vec![], b: vec![] }) }
    }

    /// `{x : g_i(x) ≤ 0 for all i}`; errors if no feasible point is found.
    pub fn system(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        for c in &constraints {
            match c {
                Constraint::Expr(e) => {
                    if let Some(j) = e.max_var() {
                        if j >= dim {
                            return Err(Error::DimensionMismatch { expected: dim, found: j + 1 });
                        }
                    }
                }
                Constraint::Poly(p) => {
                    if p.dim() != dim {
                        return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
                    }
                }
            }
        }
        let set = FeasibleSet { dim, body: SetBody::System(constraints) };
        set.require_nonempty()?;
        Ok(set)
    }

    fn require_nonempty(&self) -> Result<()> {
        match self.find_feasible_point() {
            Some(_) => Ok(()),
            None => Err(Error::EmptySet),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn body(&self) -> &SetBody {
        &self.body
    }

    pub fn as_polyhedron(&self) -> Option<&Polyhedron> {
        match &self.body {
            SetBody::Polyhedron(p) => Some(p),
            SetBody::System(_) => None,
        }
    }

    pub fn num_constraints(&self) -> usize {
        match &self.body {
            SetBody::Polyhedron(p) => p.b.len(),
            SetBody::System(c) => c.len(),
        }
    }

    /// `(g_i(x), magnitude_i(x))` for every constraint.
    fn for_each_constraint(&self, x: &[f64], mut visit: impl FnMut(f64, f64) -> bool) {
        match &self.body {
            SetBody::Polyhedron(p) => {
                for (row, bi) in p.a.iter().zip(&p.b) {
                    let mut g = -bi;
                    let mut m = bi.abs();
                    for (aij, xj) in row.iter().zip(x) {
                        g += aij * xj;
                        m += (aij * xj).abs();
                    }
                    if !visit(g, m) {
                        return;
                    }
                }
            }
            SetBody::System(cs) => {
                for c in cs {
                    if !visit(c.value(x), c.magnitude(x)) {
                        return;
                    }
                }
            }
        }
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(())
    }

    /// True iff every constraint value is at most `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        self.check_dim(x)?;
        let mut ok = true;
        self.for_each_constraint(x, |g, _| {
            ok = g <= tol;
            ok
        });
        Ok(ok)
    }

    /// Feasibility up to the relative slack [`FEAS_REL`].
    pub fn is_feasible(&self, x: &[f64]) -> bool {
        let mut ok = true;
        self.for_each_constraint(x, |g, m| {
            ok = g <= FEAS_REL * (1.0 + m);
            ok
        });
        ok
    }

    /// Largest relative excess over the feasibility slack; zero iff
    /// `is_feasible`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        self.for_each_constraint(x, |g, m| {
            let excess = (g - FEAS_REL * (1.0 + m)) / (1.0 + m);
            if excess.is_nan() {
                worst = f64::INFINITY;
                return false;
            }
            worst = worst.max(excess);
            true
        });
        worst
    }

    /// Sampling plus local search for a feasible point; deterministic.
    pub fn find_feasible_point(&self) -> Option<Vec<f64>> {
        let n = self.dim;
        let origin = vec![0.0; n];
        if self.is_feasible(&origin) {
            return Some(origin);
        }
        let per_axis = match n {
            1 => 41,
            2 => 11,
            3 => 7,
            4 => 5,
            _ => 3,
        };
        for r in [1.0, 10.0, 100.0, 1000.0] {
            let grid = box_grid(n, r, per_axis);
            let mut scored: Vec<(f64, usize)> = grid.iter().enumerate().map(|(k, x)| (self.violation(x), k)).collect();
            if let Some((_, k)) = scored.iter().find(|(v, _)| *v == 0.0) {
                return Some(grid[*k].clone());
            }
            scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            for &(_, k) in scored.iter().take(5) {
                let opts = CompassOptions { step: r / 10.0, min_step: r * 1e-13, max_evals: 4000, diagonals: n <= 4 };
                let res = compass(|x| self.violation(x), &grid[k], opts, |v| v <= 0.0);
                if res.value == 0.0 {
                    return Some(res.x);
                }
            }
        }
        None
    }

    /// Local repair: moves `x0` to a nearby feasible point if one is found
    /// within the budget.
    pub fn repair(&self, x0: &[f64], step: f64, max_evals: usize) -> Option<Vec<f64>> {
        if self.is_feasible(x0) {
            return Some(x0.to_vec());
        }
        let opts = CompassOptions { step, min_step: step * 1e-14, max_evals, diagonals: self.dim <= 4 };
        let res = compass(|x| self.violation(x), x0, opts, |v| v <= 0.0);
        (res.value == 0.0).then_some(res.x)
    }

    /// Constraints in generic form; polyhedron rows become linear
    /// polynomials.
    pub fn constraints(&self) -> Vec<Constraint> {
        match &self.body {
            SetBody::Polyhedron(p) => (0..p.b.len()).map(|i| p.row_constraint(i, self.dim)).collect(),
            SetBody::System(c) => c.clone(),
        }
    }

    /// This set intersected with extra constraints. The caller guarantees
    /// nonemptiness (no probe is run).
    pub fn with_constraints(&self, extra: Vec<Constraint>) -> FeasibleSet {
        let mut cs = self.constraints();
        cs.extend(extra);
        FeasibleSet { dim: self.dim, body: SetBody::System(cs) }
    }

    /// Intersection with the closed ball of radius `r` about the origin.
    pub fn within_ball(&self, r: f64) -> FeasibleSet {
        let n = self.dim;
        let mut terms: Vec<(Vec<u32>, f64)> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 2;
                (e, 1.0)
            })
            .collect();
        terms.push((vec![0; n], -r * r));
        let ball = Polynomial::from_terms(n, terms).expect("consistent dimension");
        FeasibleSet { dim: n, body: SetBody::System(self.constraints().into_iter().chain([Constraint::Poly(ball)]).collect()) }
    }
}

/// `K_x̄ = {x ∈ K : f_i(x) ≤ f_i(x̄) for all i}`.
pub fn sublevel_set(k: &FeasibleSet, f: &VectorObjective, xbar: &[f64]) -> Result<FeasibleSet> {
    k.check_dim(xbar)?;
    if f.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: f.dim() });
    }
    if !k.is_feasible(xbar) {
        return Err(Error::Infeasible(xbar.to_vec()));
    }
    let extra = f
        .components()
        .iter()
        .map(|fi| {
            let level = fi.eval_unchecked(xbar);
            Constraint::Poly(fi.sub(&Polynomial::constant(k.dim(), level)).expect("same dimension"))
        })
        .collect();
    Ok(k.with_constraints(extra))
}

/// Regular grid with `per_axis` points per coordinate on `[-r, r]^n`.
pub fn box_grid(n: usize, r: f64, per_axis: usize) -> Vec<Vec<f64>> {
    let bounds = vec![(-r, r); n];
    bounds_grid(&bounds, per_axis)
}

/// Regular grid on a box given by per-axis bounds.
pub fn bounds_grid(bounds: &[(f64, f64)], per_axis: usize) -> Vec<Vec<f64>> {
    let n = bounds.len();
    let axis: Vec<Vec<f64>> = bounds
        .iter()
        .map(|&(lo, hi)| {
            if per_axis == 1 {
                vec![(lo + hi) / 2.0]
            } else {
                (0..per_axis).map(|i| lo + (hi - lo) * i as f64 / (per_axis - 1) as f64).collect()
            }
        })
        .collect();
    let total = per_axis.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    for _ in 0..total {
        out.push(idx.iter().enumerate().map(|(j, &i)| axis[j][i]).collect());
        for j in (0..n).rev() {
            idx[j] += 1;
            if idx[j] < per_axis {
                break;
            }
            idx[j] = 0;
        }
    }
    out
}
