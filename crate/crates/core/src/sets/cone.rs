//! Asymptotic cones: exact for polyhedra, sampled otherwise, and the
//! leading-form slice `K_∞ ∩ {F ≤ 0}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::probe::RayProbe;
use super::sphere::{normalize, sort_dedup, sphere_grid};
use super::{sublevel_set, FeasibleSet, Polyhedron};
use crate::error::Result;
use crate::poly::VectorObjective;

/// Membership slack for `a·v ≤ 0` on unit vectors.
pub const CONE_TOL: f64 = 1e-12;
/// Slack for `F_i(v) ≤ 0` in the leading slice, relative to `1 + ‖F_i‖`.
pub const SLICE_REL: f64 = 1e-9;

/// `{v : Av ≤ 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone {
    dim: usize,
    a: Vec<Vec<f64>>,
}

impl PolyhedralCone {
    pub fn new(dim: usize, a: Vec<Vec<f64>>) -> Self {
        debug_assert!(a.iter().all(|r| r.len() == dim));
        PolyhedralCone { dim, a }
    }

    /// The trivial cone `{0}`.
    pub fn origin(dim: usize) -> Self {
        let mut a = Vec::with_capacity(2 * dim);
        for j in 0..dim {
            for s in [1.0, -1.0] {
                let mut r = vec![0.0; dim];
                r[j] = s;
                a.push(r);
            }
        }
        PolyhedralCone { dim, a }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn contains(&self, v: &[f64]) -> bool {
        let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        self.a.iter().all(|r| {
            let rn = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            r.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() <= CONE_TOL * rn * scale
        })
    }

    fn contains_within(&self, v: &[f64], tol: f64) -> bool {
        self.a.iter().all(|r| {
            let rn = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            r.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() <= rn * (tol + 1e-5)
        })
    }

    /// The cone of a cone is itself.
    pub fn asymptotic(&self) -> PolyhedralCone {
        self.clone()
    }

    /// Unit directions on the boundary rays of the cone (exact for n ≤ 3):
    /// perpendiculars of rows in the plane, pairwise cross products in space.
    fn edge_candidates(&self) -> Vec<Vec<f64>> {
        let mut out = Vec::new();
        match self.dim {
            2 => {
                for r in &self.a {
                    if let Some(p) = normalize(&[-r[1], r[0]]) {
                        out.push(p.iter().map(|x| -x).collect());
                        out.push(p);
                    }
                }
            }
            3 => {
                for i in 0..self.a.len() {
                    for j in i + 1..self.a.len() {
                        let (a, b) = (&self.a[i], &self.a[j]);
                        let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
                        if let Some(p) = normalize(&c) {
                            out.push(p.iter().map(|x| -x).collect());
                            out.push(p);
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }
}

/// `K_∞ = {Ax ≤ 0}` for `K = {Ax ≤ b}`.
pub fn polyhedral_asymptotic_cone(p: &Polyhedron, dim: usize) -> PolyhedralCone {
    PolyhedralCone::new(dim, p.a.clone())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cone {
    Polyhedral(PolyhedralCone),
    /// Asymptotic cone of a general set, membership by ray search.
    Sampled { base: FeasibleSet, probe: RayProbe },
    /// `base ∩ {v : F(v) ≤ 0}` for homogeneous forms `F`.
    Slice { base: Box<Cone>, forms: VectorObjective, probe_tol: f64 },
}

impl Cone {
    pub fn origin(dim: usize) -> Cone {
        Cone::Polyhedral(PolyhedralCone::origin(dim))
    }

    pub fn dim(&self) -> usize {
        match self {
            Cone::Polyhedral(c) => c.dim(),
            Cone::Sampled { base, .. } => base.dim(),
            Cone::Slice { base, .. } => base.dim(),
        }
    }

    /// True when membership involves a numerical search.
    pub fn is_numerical(&self) -> bool {
        match self {
            Cone::Polyhedral(_) => false,
            Cone::Sampled { .. } => true,
            Cone::Slice { base, .. } => base.is_numerical(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Cone::Polyhedral(_) => "polyhedral",
            Cone::Sampled { .. } => "sampled",
            Cone::Slice { .. } => "leading_slice",
        }
    }

    /// A unit member direction representing `v`, or `None` if `v` is not a
    /// member. Exact cones return `v` itself; sampled cones return the
    /// normalized repaired point found by the ray search.
    pub fn project(&self, v: &[f64]) -> Option<Vec<f64>> {
        match self {
            Cone::Polyhedral(c) => c.contains(v).then(|| v.to_vec()),
            Cone::Sampled { base, probe } => probe.project(base, v),
            Cone::Slice { base, forms, probe_tol } => {
                if base.is_numerical() && !forms_within(forms, v, *probe_tol) {
                    return None;
                }
                let w = base.project(v)?;
                forms
                    .components()
                    .iter()
                    .all(|fi| fi.eval_unchecked(&w) <= SLICE_REL * (1.0 + fi.coeff_norm()))
                    .then_some(w)
            }
        }
    }

    pub fn contains(&self, v: &[f64]) -> bool {
        self.project(v).is_some()
    }

    /// Relaxed membership: `v` lies within normalized distance about `tol`
    /// of a member. Used to compare cones built by different tests.
    pub fn contains_within(&self, v: &[f64], tol: f64) -> bool {
        match self {
            Cone::Polyhedral(c) => c.contains_within(v, tol),
            Cone::Sampled { base, probe } => RayProbe { tol, ..probe.clone() }.project(base, v).is_some(),
            Cone::Slice { base, forms, .. } => forms_within(forms, v, tol) && base.contains_within(v, tol),
        }
    }

    /// Members of the angular sphere grid (plus exact boundary rays for
    /// polyhedral cones), as sorted unit representatives.
    pub fn sphere_samples(&self, res_deg: f64) -> Result<Vec<Vec<f64>>> {
        let mut cands = sphere_grid(self.dim(), res_deg)?;
        if let Some(p) = self.polyhedral_part() {
            cands.extend(p.edge_candidates());
        }
        let members: Vec<Vec<f64>> = cands.par_iter().filter_map(|v| self.project(v)).collect();
        Ok(sort_dedup(members, 1e-9))
    }

    fn polyhedral_part(&self) -> Option<&PolyhedralCone> {
        match self {
            Cone::Polyhedral(p) => Some(p),
            Cone::Slice { base, .. } => base.polyhedral_part(),
            Cone::Sampled { .. } => None,
        }
    }
}

/// `F_i(v) ≤ L_i·tol + δ_i` for every component, where `L_i` bounds the
/// Lipschitz constant of `F_i` on the unit ball. A direction within `tol`
/// of a point where `F ≤ 0` always passes.
fn forms_within(forms: &VectorObjective, v: &[f64], tol: f64) -> bool {
    forms.components().iter().all(|fi| {
        let l1 = fi.coeff_l1();
        let lip = fi.degree().unwrap_or(0) as f64 * l1;
        fi.eval_unchecked(v) <= lip * tol + 1e-4 * (1.0 + l1)
    })
}

/// Which set `S` the recession problems are posed on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SChoice {
    /// `S = K`, so `S_∞ = K_∞`.
    WholeSetCone,
    /// `S = K_x̄`, cone sampled by ray search.
    SublevelCone { basepoint: Vec<f64> },
    /// `S_∞ = K_∞ ∩ {f^∞ ≤ 0}`.
    LeadingSlice,
}

impl SChoice {
    pub fn cli_name(&self) -> &'static str {
        match self {
            SChoice::WholeSetCone => "whole",
            SChoice::SublevelCone { .. } => "sublevel",
            SChoice::LeadingSlice => "leading-slice",
        }
    }
}

/// Asymptotic cone of `K`: exact for polyhedra, sampled otherwise.
pub fn asymptotic_cone(k: &FeasibleSet, probe: &RayProbe) -> Cone {
    match k.as_polyhedron() {
        Some(p) => Cone::Polyhedral(polyhedral_asymptotic_cone(p, k.dim())),
        None => Cone::Sampled { base: k.clone(), probe: probe.clone() },
    }
}

/// The cone `S_∞` for the given choice of `S`.
pub fn s_infinity(k: &FeasibleSet, f: &VectorObjective, choice: &SChoice, probe: &RayProbe) -> Result<Cone> {
    Ok(match choice {
        SChoice::WholeSetCone => asymptotic_cone(k, probe),
        SChoice::SublevelCone { basepoint } => Cone::Sampled { base: sublevel_set(k, f, basepoint)?, probe: probe.clone() },
        SChoice::LeadingSlice => Cone::Slice { base: Box::new(asymptotic_cone(k, probe)), forms: f.leading_forms(), probe_tol: probe.tol },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::sets::expr::{parse_constraint, parse_expr};
    use crate::sets::Constraint;

    fn system(dim: usize, cs: &[&str]) -> FeasibleSet {
        let mut out = Vec::new();
        for c in cs {
            out.extend(parse_constraint(c, dim).unwrap().into_iter().map(Constraint::Expr));
        }
        FeasibleSet::system(dim, out).unwrap()
    }

    fn objective(dim: usize, fs: &[&str]) -> VectorObjective {
        VectorObjective::new(fs.iter().map(|s| parse_expr(s, dim).unwrap().to_polynomial(dim).unwrap()).collect()).unwrap()
    }

    fn probe() -> RayProbe {
        RayProbe::new(vec![1e1, 1e2, 1e3, 1e4, 1e5, 1e6], 1e-2, 500)
    }

    #[test]
    fn sample_counts() {
        assert!(Cone::origin(2).sphere_samples(1.0).unwrap().is_empty());
        let plane = Cone::Polyhedral(PolyhedralCone::new(2, vec![]));
        assert_eq!(plane.sphere_samples(1.0).unwrap().len(), 360);
        let wedge = Cone::Polyhedral(PolyhedralCone::new(2, vec![vec![1.0, -1.0], vec![-1.0, 0.0]]));
        assert_eq!(wedge.sphere_samples(1.0).unwrap().len(), 46);
    }

    #[test]
    fn thin_polyhedral_cone_is_not_lost() {
        // A single ray at an angle that is not on the grid.
        let (c, s) = (33.3f64.to_radians().cos(), 33.3f64.to_radians().sin());
        let ray = Cone::Polyhedral(PolyhedralCone::new(2, vec![vec![-s, c], vec![s, -c], vec![-c, -s]]));
        let samples = ray.sphere_samples(1.0).unwrap();
        assert_eq!(samples.len(), 1);
        assert!((samples[0][0] - c).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_cone_examples() {
        let p = Polyhedron { a: vec![vec![1.0, 0.0], vec![-1.0, 0.0]], b: vec![5.0, 5.0] };
        let c = polyhedral_asymptotic_cone(&p, 2);
        assert!(c.contains(&[0.0, 1.0]) && c.contains(&[0.0, -1.0]));
        assert!(!c.contains(&[1.0, 0.0]));
        assert_eq!(c.asymptotic(), c);
        let r2 = polyhedral_asymptotic_cone(&Polyhedron { a: vec![], b: vec![] }, 2);
        assert!(r2.contains(&[0.6, -0.8]));
    }

    #[test]
    fn example_one_leading_slice_is_origin() {
        let k = system(2, &["x1 >= 0", "x2 >= 0", "exp(x1) - x2 >= 0"]);
        let f = objective(2, &["x2^3 - x1^2 - x1*x2 + 1", "x1^2 - 1"]);
        let cone = s_infinity(&k, &f, &SChoice::LeadingSlice, &probe()).unwrap();
        assert!(cone.sphere_samples(0.25).unwrap().is_empty());
    }

    #[test]
    fn empty_example_sublevel_cone_is_negative_quadrant() {
        let k = FeasibleSet::whole_space(2);
        let f = VectorObjective::new(vec![Polynomial::var(2, 0), Polynomial::var(2, 1)]).unwrap();
        let cone = s_infinity(&k, &f, &SChoice::SublevelCone { basepoint: vec![0.0, 0.0] }, &probe()).unwrap();
        let samples = cone.sphere_samples(1.0).unwrap();
        assert!(!samples.is_empty());
        for v in &samples {
            assert!(v[0] <= 1e-9 && v[1] <= 1e-9, "{v:?}");
        }
        assert!(cone.contains(&[-1.0, 0.0]) && cone.contains(&[0.0, -1.0]));
        assert!(!cone.contains(&[0.6, 0.8]));
    }

    #[test]
    fn polyhedral_cone_is_its_own_whole_set_cone() {
        let k = FeasibleSet::polyhedron(2, vec![vec![1.0, -1.0], vec![-1.0, 0.0]], vec![0.0, 0.0]).unwrap();
        let f = objective(2, &["x1"]);
        let cone = s_infinity(&k, &f, &SChoice::WholeSetCone, &probe()).unwrap();
        assert_eq!(cone, Cone::Polyhedral(PolyhedralCone::new(2, vec![vec![1.0, -1.0], vec![-1.0, 0.0]])));
    }
}
