use polyrec::experiments::{genericity_sample, lower_order_invariance_check, stability_probe};
use polyrec::poly::{random_form, random_polynomial};
use polyrec::regularity::{default_lambdas, scalar_recession_classify, ClassifierOptions, SphereSlice};
use polyrec::{Cone, Config, FeasibleSet, PolyhedralCone, SChoice, VectorObjective};
use proptest::prelude::*;

fn rows() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2), 1..=3)
}

#[test]
fn lower_order_terms_never_change_a_report() {
    let k = FeasibleSet::polyhedron(2, vec![vec![-1.0, 0.0]], vec![0.0]).unwrap();
    let f = VectorObjective::new(vec![random_polynomial(2, 3, 11, 1.0), random_polynomial(2, 2, 12, 1.0)]).unwrap();
    let r = lower_order_invariance_check(&k, &f, &SChoice::LeadingSlice, &default_lambdas(2), 100, &Config::for_dim(2)).unwrap();
    assert_eq!(r.identical, 100, "{r:?}");
}

#[test]
fn genericity_reruns_are_identical() {
    let cone = PolyhedralCone::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    let mut cfg = Config::for_dim(2);
    cfg.sampler.seed = 99;
    assert_eq!(genericity_sample(&cone, &[2, 3], 40, &cfg).unwrap(), genericity_sample(&cone, &[2, 3], 40, &cfg).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn small_perturbations_of_clear_cases_never_flip(a in rows(), seed in any::<u64>(), d in 1u32..=3) {
        let h = random_form(2, d, seed, 1.0);
        let cfg = Config::for_dim(2);
        let cone = PolyhedralCone::new(2, a.clone());
        let slice = SphereSlice::new(Cone::Polyhedral(cone), cfg.sampler.sphere_resolution_deg).unwrap();
        let base = scalar_recession_classify(&h, &slice, &ClassifierOptions::from_config(&cfg)).unwrap();
        let clear = base.min_value.is_none_or(|m| m.abs() > 10.0 * base.tau);
        prop_assume!(clear && base.is_regular());
        let k = FeasibleSet::polyhedron(2, a.clone(), vec![0.0; a.len()]).unwrap();
        let f = VectorObjective::new(vec![h]).unwrap();
        let r = stability_probe(&k, &f, &SChoice::WholeSetCone, &[1.0], &[base.tau / 4.0], 10, &cfg).unwrap();
        prop_assert_eq!(r.flips_per_eps, vec![0]);
    }
}
