//! Relative regularity: trichotomy classification of the recession
//! problems of the leading forms on a cone `S_∞`.
//!
//! A homogeneous form `h` of degree `d ≥ 1` on a closed cone `C` has
//! `h(tv) = t^d h(v)`, so the solution set of `min_{C} h` is decided by the
//! sign of `m = min h` over the unit-sphere slice of `C`:
//!
//! * `m > 0`: only the origin solves it,
//! * `m = 0`: the minimizing rays form an unbounded solution set,
//! * `m < 0`: the infimum is `-∞` and the solution set is empty.
//!
//! The slice minimum is computed by dense angular sampling plus local
//! refinement and compared against a band `τ = tol_rel·(1 + ‖h‖)`.
//! Vector problems (weak and strict Pareto) reduce to component problems
//! where possible; a pairwise domination filter on the samples serves as
//! an independent oracle.

mod pareto;
mod section;
mod slice;

use serde::{Deserialize, Serialize};

pub use pareto::{sphere_pareto_oracle, strict_recession_classify, weak_recession_classify, OracleOutcome, ParetoMode, ParetoVerdict, Route};
pub use section::{section_bounded_probe, SectionIndex, SectionProbe};
pub use slice::{lambda_recession_classify, scalar_recession_classify, LambdaResult, SliceSummary, SphereSlice};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::VectorObjective;
use crate::sets::{s_infinity, FeasibleSet, RayProbe, SChoice};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrichotomyTag {
    ZeroOnly,
    Unbounded { witness: Vec<f64> },
    Empty { witness: Vec<f64> },
}

impl TrichotomyTag {
    /// `{0}` and `∅` are the bounded outcomes.
    pub fn is_regular(&self) -> bool {
        !matches!(self, TrichotomyTag::Unbounded { .. })
    }

    pub fn witness(&self) -> Option<&[f64]> {
        match self {
            TrichotomyTag::ZeroOnly => None,
            TrichotomyTag::Unbounded { witness } | TrichotomyTag::Empty { witness } => Some(witness),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TrichotomyTag::ZeroOnly => "zero_only",
            TrichotomyTag::Unbounded { .. } => "unbounded",
            TrichotomyTag::Empty { .. } => "empty",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub samples: usize,
    pub refined_starts: usize,
    /// Cone membership came from ray search.
    pub numerical: bool,
    pub resolution_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trichotomy {
    pub tag: TrichotomyTag,
    /// Minimum of the form on the sphere slice; `None` for an empty slice.
    pub min_value: Option<f64>,
    pub tau: f64,
    /// `|min| ∈ (τ, 2τ]`: too close to the threshold to trust.
    pub borderline: bool,
    pub evidence: Evidence,
}

impl Trichotomy {
    pub fn is_regular(&self) -> bool {
        self.tag.is_regular()
    }
}

/// Settings shared by the classifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierOptions {
    pub tol_rel: f64,
    pub refine_starts: usize,
    pub refine_iterations: usize,
}

impl Default for ClassifierOptions {
    fn default() -> Self {
        ClassifierOptions { tol_rel: 1e-6, refine_starts: 5, refine_iterations: 50 }
    }
}

impl ClassifierOptions {
    pub fn from_config(cfg: &Config) -> Self {
        ClassifierOptions { tol_rel: cfg.tolerances.trichotomy, refine_starts: cfg.sampler.refine_starts, refine_iterations: cfg.sampler.refine_iterations }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub relatively_zero_regular: bool,
    /// Index set of the first weight vector found regular.
    pub zero_regular_index_set: Option<Vec<usize>>,
    pub relatively_weakly_regular: bool,
    pub relatively_strongly_regular: bool,
}

impl Verdicts {
    pub fn any(&self) -> bool {
        self.relatively_zero_regular || self.relatively_weakly_regular || self.relatively_strongly_regular
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub s_choice: SChoice,
    pub cone: SliceSummary,
    /// Leading forms `(f_i)^∞`, in display notation.
    pub leading_forms: Vec<String>,
    pub component_trichotomy: Vec<Trichotomy>,
    pub lambda_results: Vec<LambdaResult>,
    /// Weak Pareto recession problem.
    pub weak_class: ParetoVerdict,
    /// Strict Pareto recession problem.
    pub strict_class: ParetoVerdict,
    pub verdicts: Verdicts,
    /// Verdicts rest on sampled cone membership.
    pub numerical: bool,
}

/// Unit weights `e_i` followed by uniform weights.
pub fn default_lambdas(q: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = (0..q)
        .map(|i| {
            let mut e = vec![0.0; q];
            e[i] = 1.0;
            e
        })
        .collect();
    if q > 1 {
        out.push(vec![1.0 / q as f64; q]);
    }
    out
}

pub(crate) fn validate_lambda(lambda: &[f64], q: usize) -> Result<()> {
    if lambda.len() != q {
        return Err(Error::BadWeights(format!("expected {q} weights, found {}", lambda.len())));
    }
    if lambda.iter().any(|l| !l.is_finite() || *l < 0.0) {
        return Err(Error::BadWeights("weights must be finite and nonnegative".into()));
    }
    if lambda.iter().all(|l| *l == 0.0) {
        return Err(Error::BadWeights("weights must not all be zero".into()));
    }
    Ok(())
}

/// Builds `S_∞` for the choice and classifies every recession problem on
/// it. An empty `lambdas` uses [`default_lambdas`].
pub fn relative_regularity_report(k: &FeasibleSet, f: &VectorObjective, choice: &SChoice, lambdas: &[Vec<f64>], cfg: &Config) -> Result<RegularityReport> {
    if f.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: f.dim() });
    }
    let lambdas = if lambdas.is_empty() { default_lambdas(f.len()) } else { lambdas.to_vec() };
    for l in &lambdas {
        validate_lambda(l, f.len())?;
    }
    let probe = RayProbe::from_config(&cfg.sampler);
    let cone = s_infinity(k, f, choice, &probe)?;
    let slice = SphereSlice::new(cone, cfg.sampler.sphere_resolution_deg)?;
    report_on_slice(f, choice, &slice, &lambdas, &ClassifierOptions::from_config(cfg))
}

/// Report for a precomputed slice.
pub fn report_on_slice(f: &VectorObjective, choice: &SChoice, slice: &SphereSlice, lambdas: &[Vec<f64>], opts: &ClassifierOptions) -> Result<RegularityReport> {
    let forms = f.leading_forms();
    let components = pareto::component_trichotomies(&forms, slice, opts)?;
    let lambda_results = lambdas.iter().map(|l| lambda_recession_classify(f, l, slice, opts)).collect::<Result<Vec<_>>>()?;
    let weak_class = pareto::weak_from_components(&forms, slice, &components, opts)?;
    let strict_class = pareto::strict_from_components(&forms, slice, &components, opts)?;
    let zero = lambda_results.iter().find(|r| r.trichotomy.is_regular());
    let verdicts = Verdicts {
        relatively_zero_regular: zero.is_some(),
        zero_regular_index_set: zero.map(|r| r.index_set.clone()),
        relatively_weakly_regular: strict_class.is_regular(),
        relatively_strongly_regular: weak_class.is_regular(),
    };
    debug_assert!(!verdicts.relatively_strongly_regular || verdicts.relatively_weakly_regular);
    Ok(RegularityReport {
        s_choice: choice.clone(),
        cone: slice.summary(),
        leading_forms: forms.components().iter().map(|p| p.to_string()).collect(),
        component_trichotomy: components,
        lambda_results,
        weak_class,
        strict_class,
        verdicts,
        numerical: slice.cone().is_numerical(),
    })
}
