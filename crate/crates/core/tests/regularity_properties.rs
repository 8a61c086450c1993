use polyrec::experiments::{equivalence_check, random_nonpositive_forms};
use polyrec::poly::{random_form, random_polynomial};
use polyrec::regularity::{scalar_recession_classify, sphere_pareto_oracle, weak_recession_classify, ClassifierOptions, OracleOutcome, ParetoMode, SphereSlice};
use polyrec::sets::sphere::angle;
use polyrec::{relative_regularity_report, Cone, Config, FeasibleSet, PolyhedralCone, SChoice, TrichotomyTag, VectorObjective};
use proptest::prelude::*;

const RES: f64 = 1.0;

fn rows(lo: usize, hi: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2), lo..=hi)
}

fn slice(a: Vec<Vec<f64>>) -> SphereSlice {
    SphereSlice::new(Cone::Polyhedral(PolyhedralCone::new(2, a)), RES).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn trichotomy_tag_matches_minimum(a in rows(0, 3), seed in any::<u64>(), d in 1u32..=4) {
        let h = random_form(2, d, seed, 1.0);
        let t = scalar_recession_classify(&h, &slice(a), &ClassifierOptions::default()).unwrap();
        match (t.min_value, &t.tag) {
            (None, TrichotomyTag::ZeroOnly) => {}
            (Some(m), TrichotomyTag::ZeroOnly) => prop_assert!(m > t.tau),
            (Some(m), TrichotomyTag::Unbounded { .. }) => prop_assert!(m.abs() <= t.tau),
            (Some(m), TrichotomyTag::Empty { .. }) => prop_assert!(m < -t.tau),
            (m, tag) => prop_assert!(false, "{m:?} with {tag:?}"),
        }
        if let Some(w) = t.tag.witness() {
            prop_assert!((w.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_only_classifications_agree_under_precondition(a in rows(2, 3), seed in any::<u64>(), d1 in 1u32..=3, d2 in 1u32..=3) {
        let cone = PolyhedralCone::new(2, a.clone());
        let f = random_nonpositive_forms(&cone, &[d1, d2], seed);
        let r = equivalence_check(&f, &slice(a), &ClassifierOptions::default()).unwrap();
        prop_assert!(r.precondition, "{r:?}");
        if !r.borderline {
            prop_assert!(r.agrees(), "{r:?}");
        }
    }

    #[test]
    fn slice_minimum_does_not_increase_with_the_cone(a in rows(1, 3), seed in any::<u64>(), d in 1u32..=4) {
        let h = random_form(2, d, seed, 1.0);
        let opts = ClassifierOptions::default();
        let small = scalar_recession_classify(&h, &slice(a.clone()), &opts).unwrap();
        let large = scalar_recession_classify(&h, &slice(a[..a.len() - 1].to_vec()), &opts).unwrap();
        if let (Some(s), Some(l)) = (small.min_value, large.min_value) {
            prop_assert!(s >= l - 1e-9, "{s} < {l}");
        }
        prop_assert!(large.min_value.is_some() || small.min_value.is_none());
    }

    #[test]
    fn weak_witness_is_near_an_oracle_direction(a in rows(0, 3), s1 in any::<u64>(), s2 in any::<u64>(), d1 in 1u32..=3, d2 in 1u32..=3) {
        let f = VectorObjective::new(vec![random_form(2, d1, s1, 1.0), random_form(2, d2, s2, 1.0)]).unwrap();
        let sl = slice(a);
        let opts = ClassifierOptions::default();
        let v = weak_recession_classify(&f, &sl, &opts).unwrap();
        if let TrichotomyTag::Unbounded { witness } = &v.tag {
            let OracleOutcome::Directions { directions } = sphere_pareto_oracle(&f, &sl, opts.tol_rel, ParetoMode::Weak).unwrap() else {
                return Err(TestCaseError::fail("oracle gave no directions"));
            };
            let nearest = directions.iter().map(|d| angle(d, witness)).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= (2.0 * RES).to_radians(), "{nearest}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn strong_regularity_implies_weak(a in rows(1, 3), b in prop::collection::vec(0.0f64..1.0, 3), s1 in any::<u64>(), s2 in any::<u64>(), d1 in 1u32..=3, d2 in 1u32..=3, which in 0usize..3) {
        let b = b[..a.len()].to_vec();
        let k = FeasibleSet::polyhedron(2, a, b).unwrap();
        let f = VectorObjective::new(vec![random_polynomial(2, d1, s1, 1.0), random_polynomial(2, d2, s2, 1.0)]).unwrap();
        let choice = [SChoice::WholeSetCone, SChoice::SublevelCone { basepoint: vec![0.0, 0.0] }, SChoice::LeadingSlice][which].clone();
        let r = relative_regularity_report(&k, &f, &choice, &[], &Config::for_dim(2)).unwrap();
        if r.verdicts.relatively_strongly_regular {
            prop_assert!(r.verdicts.relatively_weakly_regular, "{r:?}");
        }
    }
}
