//! Problem files: objectives, feasible set, basepoint, choice of `S`,
//! weights and configuration overrides.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "objectives": ["x2^3 - x1^2 - x1*x2 + 1", [{"exponents": [2, 0], "coeff": 1.0}]],
//!   "constraints": ["x1 >= 0", "exp(x1) - x2 >= 0"],
//!   "basepoint": [0.0, 0.0],
//!   "s_choice": "leading-slice",
//!   "sampler": {"seed": 7},
//!   "tolerances": {"trichotomy": 1e-6}
//! }
//! ```
//!
//! `constraints` may instead be `{"polyhedron": {"a": [[...]], "b": [...]}}`
//! for `{x : Ax ≤ b}`. Missing sampler and tolerance keys take the
//! dimension-dependent defaults; the loaded [`ProblemSpec`] holds every
//! resolved value.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Config, SamplerConfig, Tolerances};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VectorObjective};
use crate::regularity::{default_lambdas, validate_lambda};
use crate::sets::expr::{parse_constraint, parse_expr};
use crate::sets::{Constraint, FeasibleSet, SChoice};

/// An objective component as an expression string or a term list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectiveSpec {
    Expr(String),
    Terms(Vec<Monomial>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronSpec {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConstraintsSpec {
    List(Vec<String>),
    Polyhedron { polyhedron: PolyhedronSpec },
}

impl Default for ConstraintsSpec {
    fn default() -> Self {
        ConstraintsSpec::List(vec![])
    }
}

/// The file as written; optional keys stay optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dimension: usize,
    pub objectives: Vec<ObjectiveSpec>,
    #[serde(default)]
    pub constraints: ConstraintsSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_choice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Value>,
}

/// A validated problem with every default resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub dimension: usize,
    pub objectives: Vec<ObjectiveSpec>,
    pub constraints: ConstraintsSpec,
    pub basepoint: Vec<f64>,
    /// One of `whole`, `sublevel`, `leading-slice`.
    pub s_choice: String,
    pub lambda: Vec<Vec<f64>>,
    pub config: Config,
}

/// The objects the algorithms work on.
#[derive(Debug, Clone)]
pub struct Problem {
    pub k: FeasibleSet,
    pub f: VectorObjective,
    pub xbar: Vec<f64>,
}

/// Overlays `overrides` on the serialized defaults, so unknown keys and
/// bad types are still rejected by the typed deserializer.
fn merge<T: Serialize + for<'de> Deserialize<'de>>(defaults: &T, overrides: Option<&Value>, what: &str) -> Result<T> {
    let mut base = serde_json::to_value(defaults)?;
    if let Some(o) = overrides {
        let Value::Object(map) = o else {
            return Err(Error::Config(format!("{what} must be an object")));
        };
        let Value::Object(target) = &mut base else { unreachable!("config structs serialize to objects") };
        for (k, v) in map {
            target.insert(k.clone(), v.clone());
        }
    }
    serde_json::from_value(base).map_err(|e| Error::Config(format!("{what}: {e}")))
}

pub fn parse_objective(spec: &ObjectiveSpec, n: usize) -> Result<Polynomial> {
    match spec {
        ObjectiveSpec::Expr(s) => parse_expr(s, n)?.to_polynomial(n).ok_or_else(|| Error::Config(format!("objective `{s}` is not a polynomial"))),
        ObjectiveSpec::Terms(t) => {
            if let Some(m) = t.iter().find(|m| m.exponents.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: m.exponents.len() });
            }
            Ok(Polynomial::from_monomials(n, t)?)
        }
    }
}

pub fn parse_s_choice(name: &str, basepoint: &[f64]) -> Result<SChoice> {
    match name {
        "whole" => Ok(SChoice::WholeSetCone),
        "sublevel" => Ok(SChoice::SublevelCone { basepoint: basepoint.to_vec() }),
        "leading-slice" => Ok(SChoice::LeadingSlice),
        other => Err(Error::Config(format!("unknown s_choice `{other}`; expected whole, sublevel or leading-slice"))),
    }
}

fn build_set(spec: &ConstraintsSpec, n: usize) -> Result<FeasibleSet> {
    match spec {
        ConstraintsSpec::List(cs) if cs.is_empty() => Ok(FeasibleSet::whole_space(n)),
        ConstraintsSpec::List(cs) => {
            let mut out = Vec::new();
            for c in cs {
                out.extend(parse_constraint(c, n)?.into_iter().map(Constraint::Expr));
            }
            FeasibleSet::system(n, out)
        }
        ConstraintsSpec::Polyhedron { polyhedron } => FeasibleSet::polyhedron(n, polyhedron.a.clone(), polyhedron.b.clone()),
    }
}

impl ProblemFile {
    /// Validates the file and resolves every default.
    pub fn resolve(&self) -> Result<(ProblemSpec, Problem)> {
        let n = self.dimension;
        if n == 0 {
            return Err(Error::Config("dimension must be positive".into()));
        }
        let comps = self.objectives.iter().map(|o| parse_objective(o, n)).collect::<Result<Vec<_>>>()?;
        let f = VectorObjective::new(comps)?;
        let k = build_set(&self.constraints, n)?;
        let xbar = match &self.basepoint {
            Some(x) => {
                if x.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: x.len() });
                }
                if !k.is_feasible(x) {
                    return Err(Error::Infeasible(x.clone()));
                }
                x.clone()
            }
            None => k.find_feasible_point().ok_or(Error::EmptySet)?,
        };
        let s_choice = self.s_choice.clone().unwrap_or_else(|| "whole".into());
        parse_s_choice(&s_choice, &xbar)?;
        let lambda = self.lambda.clone().unwrap_or_else(|| default_lambdas(f.len()));
        for l in &lambda {
            validate_lambda(l, f.len())?;
        }
        let sampler: SamplerConfig = merge(&SamplerConfig::for_dim(n), self.sampler.as_ref(), "sampler")?;
        sampler.validate()?;
        let tolerances: Tolerances = merge(&Tolerances::default(), self.tolerances.as_ref(), "tolerances")?;
        let spec = ProblemSpec {
            dimension: n,
            objectives: self.objectives.clone(),
            constraints: self.constraints.clone(),
            basepoint: xbar.clone(),
            s_choice,
            lambda,
            config: Config { sampler, tolerances },
        };
        Ok((spec, Problem { k, f, xbar }))
    }
}

impl ProblemSpec {
    /// A file that resolves back to this spec.
    pub fn to_file(&self) -> ProblemFile {
        ProblemFile {
            dimension: self.dimension,
            objectives: self.objectives.clone(),
            constraints: self.constraints.clone(),
            basepoint: Some(self.basepoint.clone()),
            s_choice: Some(self.s_choice.clone()),
            lambda: Some(self.lambda.clone()),
            sampler: Some(serde_json::to_value(&self.config.sampler).expect("serializable")),
            tolerances: Some(serde_json::to_value(&self.config.tolerances).expect("serializable")),
        }
    }

    pub fn choice(&self) -> SChoice {
        parse_s_choice(&self.s_choice, &self.basepoint).expect("validated at load")
    }

    /// Rebuilds the problem objects, rechecking everything.
    pub fn build(&self) -> Result<Problem> {
        Ok(self.to_file().resolve()?.1)
    }
}

pub fn parse_problem(text: &str) -> Result<(ProblemSpec, Problem)> {
    let file: ProblemFile = serde_json::from_str(text)?;
    file.resolve()
}

pub fn load_problem(path: &Path) -> Result<(ProblemSpec, Problem)> {
    parse_problem(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXP_EXAMPLE: &str = r#"{
        "dimension": 2,
        "objectives": ["x2^3 - x1^2 - x1*x2 + 1", [{"exponents": [2, 0], "coeff": 1.0}, {"exponents": [0, 0], "coeff": -1.0}]],
        "constraints": ["x1 >= 0", "x2 >= 0", "exp(x1) - x2 >= 0"],
        "basepoint": [0.0, 0.0],
        "s_choice": "leading-slice",
        "sampler": {"seed": 7}
    }"#;

    #[test]
    fn loads_mixed_objectives() {
        let (spec, p) = parse_problem(EXP_EXAMPLE).unwrap();
        assert_eq!(p.f.len(), 2);
        assert_eq!(p.f.component(1).to_string(), "x1^2 - 1");
        assert_eq!(spec.config.sampler.seed, 7);
        assert_eq!(spec.config.sampler.solver_grid, 120);
        assert_eq!(spec.lambda, default_lambdas(2));
        assert_eq!(spec.choice(), SChoice::LeadingSlice);
    }

    #[test]
    fn round_trip() {
        let (spec, _) = parse_problem(EXP_EXAMPLE).unwrap();
        let text = serde_json::to_string(&spec.to_file()).unwrap();
        let (again, _) = parse_problem(&text).unwrap();
        assert_eq!(spec, again);
    }

    #[test]
    fn rejects_bad_files() {
        let constant = r#"{"dimension": 2, "objectives": ["7"]}"#;
        assert!(matches!(parse_problem(constant), Err(Error::Poly(_))));
        let dup = r#"{"dimension": 1, "objectives": [[{"exponents": [1], "coeff": 1.0}, {"exponents": [1], "coeff": 2.0}]]}"#;
        assert!(matches!(parse_problem(dup), Err(Error::Poly(crate::poly::PolyError::DuplicateExponents(_)))));
        let infeasible = r#"{"dimension": 1, "objectives": ["x1"], "constraints": ["x1 >= 1"], "basepoint": [0.0]}"#;
        assert!(matches!(parse_problem(infeasible), Err(Error::Infeasible(_))));
        let empty = r#"{"dimension": 1, "objectives": ["x1"], "constraints": ["x1 >= 1", "x1 <= -1"]}"#;
        assert!(matches!(parse_problem(empty), Err(Error::EmptySet)));
        let syntax = r#"{"dimension": 1, "objectives": ["x1 +* 2"]}"#;
        let msg = parse_problem(syntax).unwrap_err().to_string();
        assert!(msg.contains("column 5"), "{msg}");
        let unknown = r#"{"dimension": 1, "objectives": ["x1"], "sampler": {"sed": 1}}"#;
        assert!(matches!(parse_problem(unknown), Err(Error::Config(_))));
    }

    #[test]
    fn polyhedron_and_default_basepoint() {
        let text = r#"{"dimension": 2, "objectives": ["x1", "x2"], "constraints": {"polyhedron": {"a": [[-1.0, 0.0]], "b": [-1.0]}}}"#;
        let (spec, p) = parse_problem(text).unwrap();
        assert!(p.k.as_polyhedron().is_some());
        assert!(p.k.is_feasible(&spec.basepoint));
        assert_eq!(spec.s_choice, "whole");
    }
}
