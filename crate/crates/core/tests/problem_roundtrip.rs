use std::path::PathBuf;

use polyrec::report::SCHEMA_VERSION;
use polyrec::{load_problem, relative_regularity_report, to_canonical_json, ProblemFile, RegularityReport, Report};

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|e| e == "json")).collect();
    v.sort();
    v
}

#[test]
fn load_serialize_load_is_identity() {
    for path in fixtures() {
        let (spec, _) = load_problem(&path).unwrap();
        let text = serde_json::to_string(&spec.to_file()).unwrap();
        let file: ProblemFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file.resolve().unwrap().0, spec, "{}", path.display());
    }
}

#[test]
fn reports_reproduce_from_their_own_contents() {
    for path in fixtures() {
        let (spec, p) = load_problem(&path).unwrap();
        let file: ProblemFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let result = relative_regularity_report(&p.k, &p.f, &spec.choice(), &spec.lambda, &spec.config).unwrap();
        let text = to_canonical_json(&Report::new("analyze", Some(file), spec.config.clone(), result)).unwrap();

        let back: Report<RegularityReport> = serde_json::from_str(&text).unwrap();
        assert_eq!(back.schema_version, SCHEMA_VERSION);
        let mut echo = back.problem_echo.clone().unwrap();
        echo.sampler = Some(serde_json::to_value(&back.effective_config.sampler).unwrap());
        echo.tolerances = Some(serde_json::to_value(&back.effective_config.tolerances).unwrap());
        let (spec2, p2) = echo.resolve().unwrap();
        let rerun = relative_regularity_report(&p2.k, &p2.f, &spec2.choice(), &spec2.lambda, &spec2.config).unwrap();
        let text2 = to_canonical_json(&Report::new("analyze", back.problem_echo, spec2.config, rerun)).unwrap();
        assert_eq!(text, text2, "{}", path.display());
    }
}
