//! Command dispatch for the `polyrec` binary.
//!
//! Every command writes one report envelope (schema version, problem echo,
//! command, effective configuration, result) as canonical JSON, to `--out`
//! or to stdout, and a one-line summary to stderr. Exit codes: 0 success,
//! 2 inconclusive, 1 error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use polyrec::experiments::{genericity_sample, lower_order_invariance_check, nonexistence_demo, stability_probe, weak_nonopen_demo};
use polyrec::sets::expr::parse_expr;
use polyrec::solver::solve_weights;
use polyrec::{existence_pipeline, relative_regularity_report, to_canonical_json, verify_pareto, Config, Error, FeasibleSet, PolyhedralCone, ProblemFile, Report, Result, VectorObjective, VerifyVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "polyrec", version, about = "Regularity, existence and Pareto solutions for polynomial vector optimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Base seed for every random choice.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Points per axis for the solver and the domination oracle.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Relative tolerance for the trichotomy and for domination.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Choice of the set whose asymptotic cone is used.
    #[arg(long, value_enum, global = true)]
    pub s_choice: Option<SChoiceArg>,
    /// Weight vector `a,b,...`; repeat for several.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Vec<String>,
    /// Report path; written atomically. Defaults to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SChoiceArg {
    Whole,
    Sublevel,
    LeadingSlice,
}

impl SChoiceArg {
    fn name(self) -> &'static str {
        match self {
            SChoiceArg::Whole => "whole",
            SChoiceArg::Sublevel => "sublevel",
            SChoiceArg::LeadingSlice => "leading-slice",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    #[value(name = "weak_nonopen")]
    WeakNonopen,
    #[value(name = "nonexistence")]
    Nonexistence,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relative regularity report.
    Analyze { problem: PathBuf },
    /// Existence pipeline and scalarized solve.
    Solve { problem: PathBuf },
    /// Grid domination check of a candidate point.
    Verify {
        problem: PathBuf,
        /// Candidate `a,b,...`.
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
        /// Half-width of the search box around the candidate.
        #[arg(long)]
        half_width: Option<f64>,
    },
    /// Stability of the weighted classification under random perturbations.
    Perturb {
        problem: PathBuf,
        /// Increasing perturbation magnitudes `e1,e2,...`.
        #[arg(long, default_value = "1e-3")]
        eps: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Add random lower-order terms instead and compare full reports.
        #[arg(long)]
        lower_order: bool,
    },
    /// Fraction of random objectives that are regular on a polyhedral cone.
    Generic {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Component degrees `d1,d2,...`.
        #[arg(long, default_value = "2")]
        degrees: String,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Rows of `A` in the cone `{Ax ≤ 0}`, `a11,a12;a21,a22`. Defaults to
        /// the identity, the nonpositive orthant.
        #[arg(long, allow_hyphen_values = true)]
        cone: Option<String>,
    },
    /// Fixed demonstrations.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub candidate: Vec<f64>,
    pub bounds: Vec<(f64, f64)>,
    pub per_axis: usize,
    pub verdict: VerifyVerdict,
}

pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Config(format!("`{t}` is not a number in list `{s}`"))))
        .collect()
}

fn lambdas(common: &Common) -> Result<Option<Vec<Vec<f64>>>> {
    if common.lambda.is_empty() {
        return Ok(None);
    }
    common.lambda.iter().map(|l| parse_list(l)).collect::<Result<Vec<_>>>().map(Some)
}

fn set_key(slot: &mut Option<Value>, key: &str, v: Value) {
    let map = slot.get_or_insert_with(|| Value::Object(Default::default()));
    if let Value::Object(m) = map {
        m.insert(key.into(), v);
    }
}

/// Folds the command-line overrides into the file, so they pass the same
/// validation as file values and show up in the echo.
pub fn apply_overrides(file: &mut ProblemFile, common: &Common) -> Result<()> {
    if let Some(seed) = common.seed {
        set_key(&mut file.sampler, "seed", seed.into());
    }
    if let Some(g) = common.grid {
        set_key(&mut file.sampler, "solver_grid", g.into());
        set_key(&mut file.sampler, "oracle_grid", g.into());
    }
    if let Some(t) = common.tol {
        set_key(&mut file.tolerances, "trichotomy", t.into());
        set_key(&mut file.tolerances, "domination", t.into());
    }
    if let Some(c) = common.s_choice {
        file.s_choice = Some(c.name().into());
    }
    if let Some(l) = lambdas(common)? {
        file.lambda = Some(l);
    }
    Ok(())
}

/// Defaults for dimension `n` with the command-line overrides.
pub fn config_for(n: usize, common: &Common) -> Result<Config> {
    let mut cfg = Config::for_dim(n);
    if let Some(seed) = common.seed {
        cfg.sampler.seed = seed;
    }
    if let Some(g) = common.grid {
        cfg.sampler.solver_grid = g;
        cfg.sampler.oracle_grid = g;
    }
    if let Some(t) = common.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Config("tol must be positive".into()));
        }
        cfg.tolerances.trichotomy = t;
        cfg.tolerances.domination = t;
    }
    cfg.sampler.validate()?;
    Ok(cfg)
}

fn read_file(path: &Path, common: &Common) -> Result<ProblemFile> {
    let mut file: ProblemFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    apply_overrides(&mut file, common)?;
    Ok(file)
}

/// Writes `text` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn emit<T: Serialize>(common: &Common, command: &str, echo: Option<ProblemFile>, cfg: Config, result: T) -> Result<()> {
    let text = to_canonical_json(&Report::new(command, echo, cfg, result))?;
    match &common.out {
        Some(p) => write_atomic(p, &text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn nonexistence_objective() -> Result<VectorObjective> {
    let comps = ["(x1^4*x2^4 - 1)^2 + 2*x1^4", "(x1^2*x2^2 - 1)^2 + 4*x1^2"]
        .iter()
        .map(|s| parse_expr(s, 2)?.to_polynomial(2).ok_or_else(|| Error::Config(format!("`{s}` is not a polynomial"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorObjective::new(comps)?)
}

fn parse_cone(n: usize, spec: Option<&str>) -> Result<PolyhedralCone> {
    let rows = match spec {
        None => (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect(),
        Some(s) => s.split(';').map(parse_list).collect::<Result<Vec<_>>>()?,
    };
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: r.len() });
    }
    Ok(PolyhedralCone::new(n, rows))
}

/// Runs one parsed command and returns its exit code.
pub fn execute(cli: &Cli) -> Result<i32> {
    let common = &cli.common;
    match &cli.command {
        Command::Analyze { problem } => {
            let file = read_file(problem, common)?;
            let (spec, p) = file.resolve()?;
            let r = relative_regularity_report(&p.k, &p.f, &spec.choice(), &spec.lambda, &spec.config)?;
            let v = &r.verdicts;
            eprintln!("analyze: zero-regular {}, weakly regular {}, strongly regular {}", v.relatively_zero_regular, v.relatively_weakly_regular, v.relatively_strongly_regular);
            emit(common, "analyze", Some(file), spec.config, r)?;
            Ok(EXIT_OK)
        }
        Command::Solve { problem } => {
            let file = read_file(problem, common)?;
            let (spec, p) = file.resolve()?;
            let r = existence_pipeline(&p.k, &p.f, &p.xbar, &spec.choice(), &spec.lambda, &spec.config)?;
            eprintln!("solve: route {:?}, {}", r.route, r.solve.status.name());
            let code = if r.solve.is_found() { EXIT_OK } else { EXIT_INCONCLUSIVE };
            emit(common, "solve", Some(file), spec.config, r)?;
            Ok(code)
        }
        Command::Verify { problem, candidate, half_width } => {
            let file = read_file(problem, common)?;
            let (spec, p) = file.resolve()?;
            let x = parse_list(candidate)?;
            if x.len() != spec.dimension {
                return Err(Error::DimensionMismatch { expected: spec.dimension, found: x.len() });
            }
            let w = half_width.unwrap_or(spec.config.sampler.oracle_half_width);
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Config("half-width must be positive".into()));
            }
            let bounds: Vec<(f64, f64)> = x.iter().map(|c| (c - w, c + w)).collect();
            let per_axis = spec.config.sampler.oracle_grid;
            let verdict = verify_pareto(&x, &p.k, &p.f, &bounds, per_axis, spec.config.tolerances.domination)?;
            eprintln!("verify: {}", verdict.name());
            let code = if matches!(verdict, VerifyVerdict::Unknown) { EXIT_INCONCLUSIVE } else { EXIT_OK };
            emit(common, "verify", Some(file), spec.config, VerifyOutput { candidate: x, bounds, per_axis, verdict })?;
            Ok(code)
        }
        Command::Perturb { problem, eps, trials, lower_order } => {
            let file = read_file(problem, common)?;
            let (spec, p) = file.resolve()?;
            if *lower_order {
                let r = lower_order_invariance_check(&p.k, &p.f, &spec.choice(), &spec.lambda, *trials, &spec.config)?;
                eprintln!("perturb: {} of {} reports unchanged by lower-order terms", r.identical, r.trials);
                emit(common, "perturb", Some(file), spec.config, r)?;
            } else {
                let lambda = solve_weights(&spec.lambda, p.f.len());
                let r = stability_probe(&p.k, &p.f, &spec.choice(), &lambda, &parse_list(eps)?, *trials, &spec.config)?;
                eprintln!("perturb: base {}, flips per magnitude {:?}", r.base.name(), r.flips_per_eps);
                emit(common, "perturb", Some(file), spec.config, r)?;
            }
            Ok(EXIT_OK)
        }
        Command::Generic { dim, degrees, count, cone } => {
            let cfg = config_for(*dim, common)?;
            let degrees = parse_list(degrees)?
                .into_iter()
                .map(|d| if d.fract() == 0.0 && d >= 1.0 { Ok(d as u32) } else { Err(Error::Config(format!("degree {d} is not a positive integer"))) })
                .collect::<Result<Vec<_>>>()?;
            let r = genericity_sample(&parse_cone(*dim, cone.as_deref())?, &degrees, *count, &cfg)?;
            eprintln!("generic: {}", r.statement);
            emit(common, "generic", None, cfg, r)?;
            Ok(EXIT_OK)
        }
        Command::Demo { name: DemoName::WeakNonopen } => {
            let cfg = config_for(2, common)?;
            let r = weak_nonopen_demo(&cfg)?;
            eprintln!("demo weak_nonopen: base weakly regular {}, variants not weakly regular {}", r.base_weakly_regular, r.variants_not_weakly_regular);
            emit(common, "demo weak_nonopen", None, cfg, r)?;
            Ok(EXIT_OK)
        }
        Command::Demo { name: DemoName::Nonexistence } => {
            let cfg = config_for(2, common)?;
            let escape = common.grid.unwrap_or(201);
            let r = nonexistence_demo(&FeasibleSet::whole_space(2), &nonexistence_objective()?, &[(0.0, 2.0); 2], &[(0.0, 20.0); 2], (41, escape), cfg.tolerances.domination)?;
            eprintln!("demo nonexistence: {} of {} candidates strictly dominated", r.dominated, r.candidates);
            emit(common, "demo nonexistence", None, cfg, r)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` and runs the command. Usage errors exit 1; help and
/// version exit 0.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
