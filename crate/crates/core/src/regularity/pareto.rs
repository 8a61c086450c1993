//! Vector recession problems: weak and strict Pareto classification of
//! the leading forms on a cone, plus a brute-force domination oracle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::slice::{scalar_recession_classify, slice_minimize, SphereSlice};
use super::{ClassifierOptions, Trichotomy, TrichotomyTag};
use crate::error::{Error, Result};
use crate::poly::VectorObjective;
use crate::sets::sphere::{angle, lex_cmp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParetoMode {
    /// Nondominated for the order `u < v` in every component.
    Weak,
    /// Nondominated for the order `u ≤ v`, `u ≠ v`.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleOutcome {
    Directions { directions: Vec<Vec<f64>> },
    /// The cone has no grid samples but is not known to be `{0}`.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Decided by the equivalence between component and vector problems.
    Precondition,
    /// Decided directly from the sphere samples.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoVerdict {
    pub tag: TrichotomyTag,
    /// Minimum over the slice of `max_i F_i(v) / (1 + ‖F_i‖)`.
    pub statistic: Option<f64>,
    pub borderline: bool,
    /// Whether `F ≤ 0` held on every sample; strict classification only.
    pub precondition_verified: Option<bool>,
    pub route: Route,
}

impl ParetoVerdict {
    pub fn is_regular(&self) -> bool {
        self.tag.is_regular()
    }
}

/// Per-sample values `F_i(v)` and thresholds `τ_i`.
struct Table {
    values: Vec<Vec<f64>>,
    tau: Vec<f64>,
    norms: Vec<f64>,
    degrees: Vec<i32>,
    /// `values` with entries inside `±τ_i` set to zero.
    snapped: Vec<Vec<f64>>,
}

impl Table {
    fn new(forms: &VectorObjective, slice: &SphereSlice, tol_rel: f64) -> Table {
        let norms: Vec<f64> = forms.components().iter().map(|p| 1.0 + p.coeff_norm()).collect();
        let tau: Vec<f64> = norms.iter().map(|n| tol_rel * n).collect();
        let values: Vec<Vec<f64>> = slice.samples().par_iter().map(|v| forms.eval_unchecked(v)).collect();
        let degrees = forms.degree_vector().iter().map(|&d| d as i32).collect();
        let snapped = values.iter().map(|v| v.iter().zip(&tau).map(|(f, t)| if f.abs() <= *t { 0.0 } else { *f }).collect()).collect();
        Table { values, tau, norms, degrees, snapped }
    }

    fn dominates(&self, u: usize, v: usize, mode: ParetoMode) -> bool {
        let (fu, fv) = (&self.values[u], &self.values[v]);
        match mode {
            ParetoMode::Weak => fu.iter().zip(fv).zip(&self.tau).all(|((a, b), t)| *a < b - t),
            ParetoMode::Strict => {
                fu.iter().zip(fv).zip(&self.tau).all(|((a, b), t)| *a <= b + t) && fu.iter().zip(fv).zip(&self.tau).any(|((a, b), t)| *a < b - t)
            }
        }
    }

    fn nondominated(&self, mode: ParetoMode) -> Vec<usize> {
        let n = self.values.len();
        (0..n).into_par_iter().filter(|&v| !(0..n).any(|u| u != v && self.dominates(u, v, mode))).collect()
    }

    /// `max_i F_i(v) / (1 + ‖F_i‖)`.
    fn stat(&self, k: usize) -> f64 {
        self.values[k].iter().zip(&self.norms).map(|(f, n)| f / n).fold(f64::NEG_INFINITY, f64::max)
    }

    fn all_below(&self, k: usize) -> bool {
        self.values[k].iter().zip(&self.tau).all(|(f, t)| *f <= *t)
    }

    fn some_negative(&self, k: usize) -> bool {
        self.values[k].iter().zip(&self.tau).any(|(f, t)| *f < -*t)
    }

    fn some_positive(&self, k: usize) -> bool {
        self.values[k].iter().zip(&self.tau).any(|(f, t)| *f > *t)
    }

    /// Whether `F(s·w) ≤ F(u)` for some `s > 0`, with a strict gain
    /// beyond `τ` in some component. By homogeneity `F_i(s·w) =
    /// s^{d_i}·F_i(w)`, so the admissible `s` form an interval and each
    /// component's gain is monotone in `s`: checking the two ends
    /// suffices. An end at `0` stands for the origin itself. Values within
    /// `τ` of zero count as zero.
    fn scaled_dominates(&self, w: usize, u: usize) -> bool {
        let (fw, fu) = (&self.snapped[w], &self.snapped[u]);
        let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
        for ((&a, &b), &d) in fw.iter().zip(fu).zip(&self.degrees) {
            let bound = |r: f64| r.powf(1.0 / d as f64);
            if a > 0.0 {
                if b <= 0.0 {
                    return false;
                }
                hi = hi.min(bound(b / a));
            } else if a < 0.0 {
                if b < 0.0 {
                    lo = lo.max(bound(b / a));
                }
            } else if b < 0.0 {
                return false;
            }
        }
        if lo > hi {
            return false;
        }
        let strict_at = |s: f64| fw.iter().zip(fu).zip(&self.degrees).zip(&self.tau).any(|(((a, b), d), t)| s.powi(*d) * a < b - t);
        let at_hi = if hi.is_finite() { strict_at(hi) } else { fw.iter().any(|a| *a < 0.0) };
        at_hi || strict_at(lo)
    }

    /// Not dominated on the cone by the origin or by any positive multiple
    /// of a sample.
    fn cone_nondominated(&self) -> Vec<usize> {
        let n = self.values.len();
        (0..n)
            .into_par_iter()
            .filter(|&u| {
                let by_origin = self.values[u].iter().zip(&self.tau).all(|(f, t)| *f >= -*t) && self.some_positive(u);
                !by_origin && !(0..n).any(|w| self.scaled_dominates(w, u))
            })
            .collect()
    }

    /// Largest normalized `|F_i(v)|`.
    fn size(&self, k: usize) -> f64 {
        self.values[k].iter().zip(&self.norms).map(|(f, n)| f.abs() / n).fold(0.0, f64::max)
    }
}

fn check(forms: &VectorObjective, slice: &SphereSlice) -> Result<()> {
    if forms.dim() != slice.dim() {
        return Err(Error::DimensionMismatch { expected: slice.dim(), found: forms.dim() });
    }
    if forms.components().iter().any(|p| !p.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

/// Pairwise domination filter over the sphere samples at tolerance
/// `τ_i = tol_rel·(1 + ‖F_i‖)`. Directions come back in grid order.
pub fn sphere_pareto_oracle(forms: &VectorObjective, slice: &SphereSlice, tol_rel: f64, mode: ParetoMode) -> Result<OracleOutcome> {
    check(forms, slice)?;
    if slice.is_empty() {
        return Ok(if slice.is_exact_origin() { OracleOutcome::Directions { directions: vec![] } } else { OracleOutcome::Unknown });
    }
    let table = Table::new(forms, slice, tol_rel);
    let directions = table.nondominated(mode).into_iter().map(|k| slice.samples()[k].clone()).collect();
    Ok(OracleOutcome::Directions { directions })
}

fn argmin_by<F: Fn(usize) -> f64>(ks: impl Iterator<Item = usize>, slice: &SphereSlice, key: F) -> Option<usize> {
    ks.min_by(|&a, &b| key(a).total_cmp(&key(b)).then_with(|| lex_cmp(&slice.samples()[a], &slice.samples()[b])))
}

/// Weak recession problem: empty iff some direction makes every form
/// negative, `{0}` iff every component problem is `{0}`, else unbounded
/// with a nondominated witness from the oracle.
pub fn weak_recession_classify(forms: &VectorObjective, slice: &SphereSlice, opts: &ClassifierOptions) -> Result<ParetoVerdict> {
    let components = component_trichotomies(forms, slice, opts)?;
    weak_from_components(forms, slice, &components, opts)
}

pub(crate) fn component_trichotomies(forms: &VectorObjective, slice: &SphereSlice, opts: &ClassifierOptions) -> Result<Vec<Trichotomy>> {
    check(forms, slice)?;
    forms.components().iter().map(|h| scalar_recession_classify(h, slice, opts)).collect()
}

pub(crate) fn weak_from_components(forms: &VectorObjective, slice: &SphereSlice, components: &[Trichotomy], opts: &ClassifierOptions) -> Result<ParetoVerdict> {
    check(forms, slice)?;
    let verdict = |tag, statistic, borderline| ParetoVerdict { tag, statistic, borderline, precondition_verified: None, route: Route::Precondition };
    let norms: Vec<f64> = forms.components().iter().map(|p| 1.0 + p.coeff_norm()).collect();
    let stat = |v: &[f64]| forms.eval_unchecked(v).iter().zip(&norms).map(|(f, n)| f / n).fold(f64::NEG_INFINITY, f64::max);
    let Some((s_min, s_arg, _)) = slice_minimize(slice, stat, opts) else {
        return Ok(verdict(TrichotomyTag::ZeroOnly, None, false));
    };
    let borderline = (s_min.abs() > opts.tol_rel && s_min.abs() <= 2.0 * opts.tol_rel) || components.iter().any(|t| t.borderline);
    if s_min < -opts.tol_rel {
        return Ok(verdict(TrichotomyTag::Empty { witness: s_arg }, Some(s_min), borderline));
    }
    if components.iter().all(|t| t.tag == TrichotomyTag::ZeroOnly) {
        return Ok(verdict(TrichotomyTag::ZeroOnly, Some(s_min), borderline));
    }
    let table = Table::new(forms, slice, opts.tol_rel);
    let nd = table.nondominated(ParetoMode::Weak);
    let anchors: Vec<&Vec<f64>> = components.iter().filter_map(|t| match &t.tag {
        TrichotomyTag::Unbounded { witness } => Some(witness),
        _ => None,
    }).collect();
    let pick = if anchors.is_empty() {
        argmin_by(nd.iter().copied(), slice, |k| table.stat(k))
    } else {
        argmin_by(nd.iter().copied(), slice, |k| anchors.iter().map(|a| angle(a, &slice.samples()[k])).fold(f64::INFINITY, f64::min))
    };
    let witness = match pick {
        Some(k) => slice.samples()[k].clone(),
        None => s_arg,
    };
    Ok(verdict(TrichotomyTag::Unbounded { witness }, Some(s_min), borderline))
}

/// Strict recession problem. When `F ≤ 0` holds on the samples the answer
/// follows from the component problems; otherwise it is read off the
/// samples directly.
pub fn strict_recession_classify(forms: &VectorObjective, slice: &SphereSlice, opts: &ClassifierOptions) -> Result<ParetoVerdict> {
    let components = component_trichotomies(forms, slice, opts)?;
    strict_from_components(forms, slice, &components, opts)
}

pub(crate) fn strict_from_components(forms: &VectorObjective, slice: &SphereSlice, components: &[Trichotomy], opts: &ClassifierOptions) -> Result<ParetoVerdict> {
    check(forms, slice)?;
    let table = Table::new(forms, slice, opts.tol_rel);
    let all: Vec<usize> = (0..slice.samples().len()).collect();
    let precondition = all.iter().all(|&k| table.all_below(k));
    let statistic = argmin_by(all.iter().copied(), slice, |k| table.stat(k)).map(|k| table.stat(k));
    let borderline = components.iter().any(|t| t.borderline);
    let verdict = |tag, route| ParetoVerdict { tag, statistic, borderline, precondition_verified: Some(precondition), route };
    let sample = |k: usize| slice.samples()[k].clone();
    // Most negative normalized component among directions with F ≤ 0.
    let improving = || argmin_by(all.iter().copied().filter(|&k| table.all_below(k) && table.some_negative(k)), slice, |k| table.values[k].iter().zip(&table.norms).map(|(f, n)| f / n).fold(f64::INFINITY, f64::min));
    if slice.is_empty() {
        return Ok(verdict(TrichotomyTag::ZeroOnly, Route::Precondition));
    }
    // A direction lowering every form, when there is one.
    let lowering = argmin_by(all.iter().copied(), slice, |k| table.stat(k)).filter(|&k| table.stat(k) < -opts.tol_rel);
    if precondition {
        if let Some(k) = lowering.or_else(improving) {
            return Ok(verdict(TrichotomyTag::Empty { witness: sample(k) }, Route::Precondition));
        }
        if components.iter().all(|t| t.tag == TrichotomyTag::ZeroOnly) {
            return Ok(verdict(TrichotomyTag::ZeroOnly, Route::Precondition));
        }
        let nd = table.cone_nondominated();
        let k = argmin_by(nd.into_iter(), slice, |k| table.size(k)).or_else(|| argmin_by(table.nondominated(ParetoMode::Strict).into_iter(), slice, |k| table.size(k)));
        return Ok(verdict(TrichotomyTag::Unbounded { witness: sample(k.expect("nonempty samples")) }, Route::Precondition));
    }
    // Weak-empty implies strict-empty.
    if let Some(k) = lowering {
        return Ok(verdict(TrichotomyTag::Empty { witness: sample(k) }, Route::Oracle));
    }
    if let Some(k) = argmin_by(table.cone_nondominated().into_iter(), slice, |k| table.size(k)) {
        return Ok(verdict(TrichotomyTag::Unbounded { witness: sample(k) }, Route::Oracle));
    }
    if let Some(k) = improving() {
        return Ok(verdict(TrichotomyTag::Empty { witness: sample(k) }, Route::Oracle));
    }
    Ok(verdict(TrichotomyTag::ZeroOnly, Route::Oracle))
}
