//! Minimization of forms over the unit-sphere slice of a cone.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ClassifierOptions, Evidence, Trichotomy, TrichotomyTag};
use crate::error::{Error, Result};
use crate::poly::{PolyError, Polynomial, VectorObjective};
use crate::sets::sphere::{lex_cmp, normalize};
use crate::sets::Cone;
use crate::search::{compass, CompassOptions};

/// A cone together with its member directions on the sphere grid.
#[derive(Debug, Clone)]
pub struct SphereSlice {
    cone: Cone,
    samples: Vec<Vec<f64>>,
    resolution_deg: f64,
}

impl SphereSlice {
    pub fn new(cone: Cone, resolution_deg: f64) -> Result<Self> {
        let samples = cone.sphere_samples(resolution_deg)?;
        Ok(SphereSlice { cone, samples, resolution_deg })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn resolution_deg(&self) -> f64 {
        self.resolution_deg
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// No samples and exact membership, so the cone is `{0}` for certain
    /// (boundary rays are sampled exactly for polyhedral cones).
    pub fn is_exact_origin(&self) -> bool {
        self.samples.is_empty() && matches!(self.cone, Cone::Polyhedral(_))
    }

    pub fn summary(&self) -> SliceSummary {
        SliceSummary {
            kind: self.cone.kind().to_string(),
            numerical: self.cone.is_numerical(),
            samples: self.samples.len(),
            sampled_origin: self.samples.is_empty(),
            exact_origin: self.is_exact_origin(),
            resolution_deg: self.resolution_deg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceSummary {
    pub kind: String,
    /// Membership was decided by ray search rather than exactly.
    pub numerical: bool,
    pub samples: usize,
    /// No member direction was found on the sphere grid.
    pub sampled_origin: bool,
    pub exact_origin: bool,
    pub resolution_deg: f64,
}

/// Minimum of `obj` over the slice: grid minimum, then compass refinement
/// on the sphere from the best grid points. Candidates are re-projected
/// through the cone, so every reported point is a member.
pub(crate) fn slice_minimize<F>(slice: &SphereSlice, obj: F, opts: &ClassifierOptions) -> Option<(f64, Vec<f64>, usize)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if slice.samples.is_empty() {
        return None;
    }
    let mut scored: Vec<(f64, usize)> = slice.samples.par_iter().enumerate().map(|(k, v)| (nan_high(obj(v)), k)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| lex_cmp(&slice.samples[a.1], &slice.samples[b.1])));
    let grid_best = (scored[0].0, slice.samples[scored[0].1].clone());
    let n = slice.dim();
    let step = slice.resolution_deg.to_radians() / 2.0;
    let refined: Vec<(f64, Vec<f64>)> = scored
        .iter()
        .take(opts.refine_starts)
        .collect::<Vec<_>>()
        .par_iter()
        .filter_map(|&&(_, k)| {
            if n < 2 {
                return None;
            }
            let mut best: Option<(f64, Vec<f64>)> = None;
            let phi = |x: &[f64]| {
                let Some(u) = normalize(x) else { return f64::INFINITY };
                let Some(w) = slice.cone.project(&u) else { return f64::INFINITY };
                let val = nan_high(obj(&w));
                if best.as_ref().is_none_or(|(b, bw)| val < *b || (val == *b && lex_cmp(&w, bw).is_lt())) {
                    best = Some((val, w));
                }
                val
            };
            let copts = CompassOptions { step, min_step: step * 1e-8, max_evals: opts.refine_iterations * 4 * n, diagonals: n <= 4 };
            compass(phi, &slice.samples[k], copts, |_| false);
            best
        })
        .collect();
    let mut best = grid_best;
    for (val, w) in refined {
        if val < best.0 || (val == best.0 && lex_cmp(&w, &best.1).is_lt()) {
            best = (val, w);
        }
    }
    Some((best.0, best.1, opts.refine_starts.min(scored.len())))
}

fn nan_high(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Trichotomy for `min h(v)` over the sphere slice of a cone: positive
/// means only the origin solves the recession problem, zero means a ray
/// does, negative means the form is unbounded below on the cone.
pub fn scalar_recession_classify(h: &Polynomial, slice: &SphereSlice, opts: &ClassifierOptions) -> Result<Trichotomy> {
    if !h.is_homogeneous() || h.degree().unwrap_or(0) == 0 {
        return Err(Error::NotHomogeneous);
    }
    if h.dim() != slice.dim() {
        return Err(Error::DimensionMismatch { expected: slice.dim(), found: h.dim() });
    }
    let tau = opts.tol_rel * (1.0 + h.coeff_norm());
    Ok(classify_min(slice_minimize(slice, |v| h.eval_unchecked(v), opts), tau, slice))
}

pub(crate) fn classify_min(found: Option<(f64, Vec<f64>, usize)>, tau: f64, slice: &SphereSlice) -> Trichotomy {
    let mut evidence = Evidence { samples: slice.samples.len(), refined_starts: 0, numerical: slice.cone.is_numerical(), resolution_deg: slice.resolution_deg };
    let Some((m, w, starts)) = found else {
        return Trichotomy { tag: TrichotomyTag::ZeroOnly, min_value: None, tau, borderline: false, evidence };
    };
    evidence.refined_starts = starts;
    let tag = if m > tau {
        TrichotomyTag::ZeroOnly
    } else if m >= -tau {
        TrichotomyTag::Unbounded { witness: w }
    } else {
        TrichotomyTag::Empty { witness: w }
    };
    Trichotomy { tag, min_value: Some(m), tau, borderline: m.abs() > tau && m.abs() <= 2.0 * tau, evidence }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaResult {
    pub lambda: Vec<f64>,
    /// Indices (zero-based) of the nonzero weights.
    pub index_set: Vec<usize>,
    /// The form that was classified, in display notation.
    pub form: String,
    /// Top-degree terms of the weighted sum cancelled.
    pub cancellation: bool,
    pub trichotomy: Trichotomy,
}

/// Classification of the leading form of `Σ λ_i f_i` on the slice.
pub fn lambda_recession_classify(f: &VectorObjective, lambda: &[f64], slice: &SphereSlice, opts: &ClassifierOptions) -> Result<LambdaResult> {
    let index_set: Vec<usize> = lambda.iter().enumerate().filter(|(_, &l)| l != 0.0).map(|(i, _)| i).collect();
    let (form, cancellation) = match f.weighted_leading_form(lambda) {
        Ok(h) => (Some(h), false),
        Err(PolyError::LeadingCancellation) => match f.weighted_sum(lambda)?.leading_form() {
            Ok(h) => (Some(h), true),
            Err(PolyError::ZeroPolynomial | PolyError::ConstantPolynomial) => (None, true),
            Err(e) => return Err(e.into()),
        },
        Err(e) => return Err(e.into()),
    };
    let trichotomy = match &form {
        Some(h) => scalar_recession_classify(h, slice, opts)?,
        None => degenerate_classify(slice, opts),
    };
    let form = form.map_or_else(|| "0".to_string(), |h| h.to_string());
    Ok(LambdaResult { lambda: lambda.to_vec(), index_set, form, cancellation, trichotomy })
}

/// The weighted sum is constant: every point of the cone solves the
/// recession problem.
fn degenerate_classify(slice: &SphereSlice, opts: &ClassifierOptions) -> Trichotomy {
    let found = slice.samples.first().map(|w| (0.0, w.clone(), 0));
    classify_min(found, opts.tol_rel, slice)
}
