//! Inputs shared by the kernel benchmarks.

use polyrec::{parse_problem, Problem, ProblemSpec};

const FIXTURES: [(&str, &str); 3] = [
    ("exp_bounded", include_str!("../../../fixtures/exp_bounded.json")),
    ("wedge_scalar", include_str!("../../../fixtures/wedge_scalar.json")),
    ("diagonal", include_str!("../../../fixtures/diagonal.json")),
];

/// Parses a bundled fixture by name.
pub fn fixture(name: &str) -> (ProblemSpec, Problem) {
    let (_, text) = FIXTURES.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("unknown fixture {name}"));
    parse_problem(text).expect("bundled fixtures parse")
}

/// Evenly spaced points on a segment, for evaluation loops.
pub fn segment(from: &[f64], to: &[f64], count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| {
            let t = i as f64 / (count.max(2) - 1) as f64;
            from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
        })
        .collect()
}
