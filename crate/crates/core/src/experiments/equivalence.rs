//! Agreement of the three `{0}` classifications (every component, weak
//! problem, strict problem) for forms that are nonpositive on the cone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poly::{Polynomial, VectorObjective};
use crate::regularity::{scalar_recession_classify, strict_recession_classify, weak_recession_classify, ClassifierOptions, SphereSlice, TrichotomyTag};
use crate::sets::PolyhedralCone;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceRecord {
    pub forms: Vec<String>,
    /// `F ≤ 0` held on every sample of the slice.
    pub precondition: bool,
    pub components_zero_only: bool,
    pub weak_zero_only: bool,
    pub strict_zero_only: bool,
    pub borderline: bool,
}

impl EquivalenceRecord {
    pub fn agrees(&self) -> bool {
        self.components_zero_only == self.weak_zero_only && self.weak_zero_only == self.strict_zero_only
    }
}

fn linear(n: usize, coeffs: &[f64]) -> Polynomial {
    let terms = (0..n).map(|j| {
        let mut e = vec![0u32; n];
        e[j] = 1;
        (e, coeffs[j])
    });
    Polynomial::from_terms(n, terms).expect("dimension consistent")
}

/// Random form of degree `d` that is nonpositive on `{Ax ≤ 0}`: minus a
/// positive combination of products of the nonnegative linear forms
/// `−a_j·x` and squares of random linear forms.
pub fn nonpositive_form<R: Rng>(rng: &mut R, cone: &PolyhedralCone, d: u32) -> Polynomial {
    let n = cone.dim();
    let rows = cone.rows();
    let mut acc = Polynomial::zero(n);
    while acc.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let mut prod = Polynomial::constant(n, rng.gen_range(0.1..1.0));
            let mut left = d;
            while left > 0 {
                let factor = if left >= 2 && (rows.is_empty() || rng.gen_bool(0.4)) {
                    left -= 2;
                    let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    linear(n, &c).pow(2)
                } else {
                    left -= 1;
                    match rows.is_empty() {
                        true => linear(n, &(0..n).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>()),
                        false => linear(n, &rows[rng.gen_range(0..rows.len())]).scale(-1.0),
                    }
                };
                prod = prod.mul(&factor).expect("dimension consistent");
            }
            acc = acc.sub(&prod).expect("dimension consistent");
        }
        acc = acc.homogeneous_part(d);
    }
    acc
}

/// Random forms with the given degrees, nonpositive on the cone.
pub fn random_nonpositive_forms(cone: &PolyhedralCone, degrees: &[u32], seed: u64) -> VectorObjective {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    VectorObjective::new(degrees.iter().map(|&d| nonpositive_form(&mut rng, cone, d)).collect()).expect("nonempty, degree >= 1")
}

/// Classifies each component, the weak problem and the strict problem.
pub fn equivalence_check(forms: &VectorObjective, slice: &SphereSlice, opts: &ClassifierOptions) -> Result<EquivalenceRecord> {
    let comps = forms.components().iter().map(|h| scalar_recession_classify(h, slice, opts)).collect::<Result<Vec<_>>>()?;
    let weak = weak_recession_classify(forms, slice, opts)?;
    let strict = strict_recession_classify(forms, slice, opts)?;
    Ok(EquivalenceRecord {
        forms: forms.components().iter().map(|p| p.to_string()).collect(),
        precondition: strict.precondition_verified.unwrap_or(false),
        components_zero_only: comps.iter().all(|t| t.tag == TrichotomyTag::ZeroOnly),
        weak_zero_only: weak.tag == TrichotomyTag::ZeroOnly,
        strict_zero_only: strict.tag == TrichotomyTag::ZeroOnly,
        borderline: comps.iter().any(|t| t.borderline) || weak.borderline || strict.borderline,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::Cone;

    #[test]
    fn forms_are_nonpositive_on_the_cone() {
        let cone = PolyhedralCone::new(2, vec![vec![1.0, 0.3], vec![-0.2, 1.0]]);
        let slice = SphereSlice::new(Cone::Polyhedral(cone.clone()), 1.0).unwrap();
        for seed in 0..20 {
            let f = random_nonpositive_forms(&cone, &[1, 2, 3], seed);
            assert_eq!(f.degree_vector(), vec![1, 2, 3]);
            for v in slice.samples() {
                assert!(f.eval(v).unwrap().iter().all(|x| *x <= 1e-12), "{seed} {v:?}");
            }
        }
    }

    #[test]
    fn origin_cone_gives_zero_only_everywhere() {
        let cone = PolyhedralCone::new(2, vec![vec![1.0, 0.0], vec![-1.0, 1.0], vec![-1.0, -1.0]]);
        let slice = SphereSlice::new(Cone::Polyhedral(cone.clone()), 1.0).unwrap();
        assert!(slice.is_empty());
        let r = equivalence_check(&random_nonpositive_forms(&cone, &[2, 3], 1), &slice, &ClassifierOptions::default()).unwrap();
        assert!(r.components_zero_only && r.agrees());
    }
}
