use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyrec::poly::random_polynomial;
use polyrec::regularity::{scalar_recession_classify, strict_recession_classify, weak_recession_classify, ClassifierOptions, SphereSlice};
use polyrec::{existence_pipeline, relative_regularity_report, verify_pareto, Cone, PolyhedralCone, SChoice};
use polyrec_bench::{fixture, segment};

fn polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("polynomial");
    for d in [2u32, 4, 8] {
        let p = random_polynomial(3, d, 11, 1.0);
        let points = segment(&[-2.0, -1.0, 0.5], &[2.0, 1.5, -0.5], 64);
        group.bench_with_input(BenchmarkId::new("eval", d), &p, |b, p| {
            b.iter(|| points.iter().map(|x| p.eval(black_box(x)).unwrap()).sum::<f64>())
        });
        group.bench_with_input(BenchmarkId::new("grad", d), &p, |b, p| {
            b.iter(|| points.iter().map(|x| p.grad(black_box(x)).unwrap()[0]).sum::<f64>())
        });
        group.bench_with_input(BenchmarkId::new("leading_form", d), &p, |b, p| b.iter(|| black_box(p).leading_form().unwrap()));
    }
    group.finish();
}

fn classifiers(c: &mut Criterion) {
    let (_, problem) = fixture("exp_bounded");
    let forms = problem.f.leading_forms();
    let opts = ClassifierOptions::default();
    let mut group = c.benchmark_group("slice_classify");
    for res in [1.0, 0.25] {
        let slice = SphereSlice::new(Cone::Polyhedral(PolyhedralCone::new(2, vec![vec![-1.0, 0.0], vec![0.0, -1.0]])), res).unwrap();
        group.bench_with_input(BenchmarkId::new("scalar", res), &slice, |b, s| {
            b.iter(|| scalar_recession_classify(&forms.components()[0], s, &opts).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("weak", res), &slice, |b, s| b.iter(|| weak_recession_classify(&forms, s, &opts).unwrap()));
        group.bench_with_input(BenchmarkId::new("strict", res), &slice, |b, s| b.iter(|| strict_recession_classify(&forms, s, &opts).unwrap()));
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let (spec, problem) = fixture("exp_bounded");
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(20);
    group.bench_function("regularity_report", |b| {
        b.iter(|| relative_regularity_report(&problem.k, &problem.f, &SChoice::LeadingSlice, &spec.lambda, &spec.config).unwrap())
    });
    group.bench_function("existence", |b| {
        b.iter(|| existence_pipeline(&problem.k, &problem.f, &problem.xbar, &SChoice::LeadingSlice, &spec.lambda, &spec.config).unwrap())
    });
    group.finish();
}

fn verification(c: &mut Criterion) {
    let (spec, problem) = fixture("diagonal");
    let tol = spec.config.tolerances.domination;
    let bounds = [(0.0, 2.0), (0.0, 2.0)];
    let mut group = c.benchmark_group("verify_pareto");
    for per_axis in [21usize, 81] {
        group.bench_with_input(BenchmarkId::from_parameter(per_axis), &per_axis, |b, &n| {
            b.iter(|| verify_pareto(&problem.xbar, &problem.k, &problem.f, &bounds, n, tol).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, polynomials, classifiers, pipeline, verification);
criterion_main!(benches);
