use polyrec::poly::random_polynomial;
use polyrec::sets::cone::polyhedral_asymptotic_cone;
use polyrec::sets::sphere::sphere_grid;
use polyrec::sets::{bounded_probe, ray_in_cone, s_infinity, BoundedVerdict, RayProbe};
use polyrec::{Cone, FeasibleSet, PolyhedralCone, SChoice, SamplerConfig, VectorObjective};
use proptest::prelude::*;

fn rows(m: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2), 1..=m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sublevel_cone_inside_leading_slice_inside_whole_cone(a in rows(3), b in prop::collection::vec(0.0f64..1.0, 3), s1 in any::<u64>(), s2 in any::<u64>(), d1 in 1u32..=3, d2 in 1u32..=3) {
        let b = b[..a.len()].to_vec();
        let k = FeasibleSet::polyhedron(2, a, b).unwrap();
        let f = VectorObjective::new(vec![random_polynomial(2, d1, s1, 1.0), random_polynomial(2, d2, s2, 1.0)]).unwrap();
        let sampler = SamplerConfig::for_dim(2);
        let probe = RayProbe::from_config(&sampler);
        let tol = sampler.ray_tolerance;
        let sub = s_infinity(&k, &f, &SChoice::SublevelCone { basepoint: vec![0.0, 0.0] }, &probe).unwrap();
        let lead = s_infinity(&k, &f, &SChoice::LeadingSlice, &probe).unwrap();
        let whole = s_infinity(&k, &f, &SChoice::WholeSetCone, &probe).unwrap();
        for v in sphere_grid(2, 15.0).unwrap() {
            if sub.contains(&v) {
                prop_assert!(lead.contains_within(&v, tol), "{v:?} in sublevel cone only");
            }
            if lead.contains(&v) {
                prop_assert!(whole.contains_within(&v, tol), "{v:?} in leading slice only");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bounded_probe_matches_exact_cone_test(a in rows(4), b in prop::collection::vec(0.0f64..1.0, 4)) {
        let b = b[..a.len()].to_vec();
        let k = FeasibleSet::polyhedron(2, a.clone(), b).unwrap();
        let exact_bounded = Cone::Polyhedral(PolyhedralCone::new(2, a)).sphere_samples(1.0).unwrap().is_empty();
        match bounded_probe(&k, &[1.0, 10.0, 100.0, 1000.0, 10000.0]).unwrap() {
            BoundedVerdict::Bounded { .. } => prop_assert!(exact_bounded),
            BoundedVerdict::UnboundedWitness { .. } => prop_assert!(!exact_bounded),
            BoundedVerdict::Unknown => prop_assert!(false, "no verdict"),
        }
    }

    #[test]
    fn asymptotic_cone_of_cone_is_itself(a in rows(4), b in prop::collection::vec(-1.0f64..1.0, 4)) {
        let b = b[..a.len()].to_vec();
        let Ok(k) = FeasibleSet::polyhedron(2, a, b) else { return Ok(()) };
        let c = polyhedral_asymptotic_cone(k.as_polyhedron().unwrap(), 2);
        prop_assert_eq!(c.asymptotic(), c);
    }

    #[test]
    fn containment_is_monotone_in_tolerance(a in rows(4), b in prop::collection::vec(-1.0f64..1.0, 4), x in prop::collection::vec(-3.0f64..3.0, 2), t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        let b = b[..a.len()].to_vec();
        let Ok(k) = FeasibleSet::polyhedron(2, a, b) else { return Ok(()) };
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        if k.contains(&x, lo).unwrap() {
            prop_assert!(k.contains(&x, hi).unwrap());
        }
    }

    #[test]
    fn ray_membership_depends_on_direction_only(a in rows(3), b in prop::collection::vec(0.0f64..1.0, 3), theta in 0.0f64..std::f64::consts::TAU, wobble in -1e-12f64..1e-12) {
        let b = b[..a.len()].to_vec();
        let k = FeasibleSet::polyhedron(2, a, b).unwrap();
        let probe = RayProbe::from_config(&SamplerConfig::for_dim(2));
        let v = vec![theta.cos(), theta.sin()];
        let w: Vec<f64> = {
            let raw = [v[0] * (1.0 + wobble), v[1] * (1.0 - wobble)];
            let n = (raw[0] * raw[0] + raw[1] * raw[1]).sqrt();
            raw.iter().map(|x| x / n).collect()
        };
        let scaled: Vec<f64> = v.iter().map(|x| x * 7.0).collect();
        let base = ray_in_cone(&k, &v, &probe.scales, probe.tol);
        prop_assert_eq!(base, ray_in_cone(&k, &scaled, &probe.scales, probe.tol));
        if base {
            prop_assert!(ray_in_cone(&k, &w, &probe.scales, probe.tol));
        }
    }
}
