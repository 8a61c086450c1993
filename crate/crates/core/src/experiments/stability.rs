//! Random perturbations of the objective: stability of a classification
//! under small same-degree changes, and exact invariance under lower-order
//! terms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{derive_seed, Config};
use crate::error::{Error, Result};
use crate::poly::{random_polynomial_with, Polynomial, VectorObjective};
use crate::regularity::{lambda_recession_classify, report_on_slice, validate_lambda, ClassifierOptions, RegularityReport, SphereSlice, TrichotomyTag};
use crate::sets::{s_infinity, FeasibleSet, RayProbe, SChoice};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flip {
    pub eps: f64,
    /// Coefficient norm of the perturbation actually applied.
    pub perturbation_norm: f64,
    pub perturbed: Vec<String>,
    pub classification: TrichotomyTag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityRecord {
    pub s_choice: SChoice,
    pub lambda: Vec<f64>,
    pub base: TrichotomyTag,
    pub base_min: Option<f64>,
    pub eps_tested: Vec<f64>,
    pub trials_per_eps: usize,
    pub flips_per_eps: Vec<usize>,
    /// Largest tested magnitude without a flip.
    pub largest_stable_eps: Option<f64>,
    /// First flip in trial order at the smallest flipping magnitude.
    pub flip_found: Option<Flip>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceRecord {
    pub trials: usize,
    pub identical: usize,
    pub all_identical: bool,
    /// Seed of the first trial whose report differed.
    pub first_mismatch: Option<u64>,
}

/// Dense random perturbation with the degree vector of `f`, scaled to
/// coefficient norm exactly `eps`.
pub fn random_same_degree(f: &VectorObjective, eps: f64, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g: Vec<Polynomial> = f.degree_vector().iter().map(|&d| random_polynomial_with(&mut rng, f.dim(), d, 1.0)).collect();
    let norm = g.iter().map(|p| p.coeff_norm().powi(2)).sum::<f64>().sqrt();
    g.iter().map(|p| p.scale(eps / norm)).collect()
}

/// Random `g` with `deg g_i < deg f_i` and coefficients in `[-1, 1]`.
pub fn random_lower_order(f: &VectorObjective, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    f.degree_vector().iter().map(|&d| random_polynomial_with(&mut rng, f.dim(), d - 1, 1.0)).collect()
}

fn add(f: &VectorObjective, g: &[Polynomial]) -> Result<VectorObjective> {
    let comps = f.components().iter().zip(g).map(|(a, b)| a.perturb(b)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(VectorObjective::new(comps)?)
}

/// The slice for a perturbed objective. Only the leading slice depends on
/// `f`; for the other choices `S_∞` stays fixed at the base cone.
fn slice_for(k: &FeasibleSet, f: &VectorObjective, choice: &SChoice, base: &SphereSlice, cfg: &Config) -> Result<SphereSlice> {
    match choice {
        SChoice::LeadingSlice => SphereSlice::new(s_infinity(k, f, choice, &RayProbe::from_config(&cfg.sampler))?, cfg.sampler.sphere_resolution_deg),
        _ => Ok(base.clone()),
    }
}

/// Reclassifies the `λ`-weighted recession problem after random
/// perturbations of each magnitude in `eps_schedule` and counts changes of
/// the outcome. Only `{0}` and `∅` outcomes are probed.
pub fn stability_probe(k: &FeasibleSet, f: &VectorObjective, choice: &SChoice, lambda: &[f64], eps_schedule: &[f64], trials: usize, cfg: &Config) -> Result<StabilityRecord> {
    validate_lambda(lambda, f.len())?;
    if eps_schedule.is_empty() || eps_schedule.iter().any(|e| !(e.is_finite() && *e > 0.0)) || eps_schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("perturbation magnitudes must be positive and increasing".into()));
    }
    let opts = ClassifierOptions::from_config(cfg);
    let base_slice = SphereSlice::new(s_infinity(k, f, choice, &RayProbe::from_config(&cfg.sampler))?, cfg.sampler.sphere_resolution_deg)?;
    let base = lambda_recession_classify(f, lambda, &base_slice, &opts)?.trichotomy;
    if !base.is_regular() {
        return Err(Error::UnstableBase);
    }
    let seed = cfg.sampler.seed;
    let mut flips_per_eps = Vec::with_capacity(eps_schedule.len());
    let mut flip_found = None;
    for (ei, &eps) in eps_schedule.iter().enumerate() {
        let outcomes = (0..trials)
            .into_par_iter()
            .map(|t| {
                let g = random_same_degree(f, eps, derive_seed(seed, (ei * trials + t) as u64));
                let fp = add(f, &g)?;
                let slice = slice_for(k, &fp, choice, &base_slice, cfg)?;
                let tag = lambda_recession_classify(&fp, lambda, &slice, &opts)?.trichotomy.tag;
                let norm = g.iter().map(|p| p.coeff_norm().powi(2)).sum::<f64>().sqrt();
                Ok((tag.name() != base.tag.name()).then(|| Flip { eps, perturbation_norm: norm, perturbed: fp.components().iter().map(|p| p.to_string()).collect(), classification: tag }))
            })
            .collect::<Result<Vec<Option<Flip>>>>()?;
        let flips: Vec<Flip> = outcomes.into_iter().flatten().collect();
        flips_per_eps.push(flips.len());
        if flip_found.is_none() {
            flip_found = flips.into_iter().next();
        }
    }
    let largest_stable_eps = eps_schedule.iter().zip(&flips_per_eps).filter(|(_, n)| **n == 0).map(|(e, _)| *e).last();
    Ok(StabilityRecord {
        s_choice: choice.clone(),
        lambda: lambda.to_vec(),
        base: base.tag,
        base_min: base.min_value,
        eps_tested: eps_schedule.to_vec(),
        trials_per_eps: trials,
        flips_per_eps,
        largest_stable_eps,
        flip_found,
        seed,
    })
}

fn report(k: &FeasibleSet, f: &VectorObjective, choice: &SChoice, lambdas: &[Vec<f64>], base: &SphereSlice, cfg: &Config) -> Result<RegularityReport> {
    let slice = slice_for(k, f, choice, base, cfg)?;
    report_on_slice(f, choice, &slice, lambdas, &ClassifierOptions::from_config(cfg))
}

/// Adds random lower-order terms and checks that the full regularity
/// report is unchanged, trial by trial.
pub fn lower_order_invariance_check(k: &FeasibleSet, f: &VectorObjective, choice: &SChoice, lambdas: &[Vec<f64>], trials: usize, cfg: &Config) -> Result<InvarianceRecord> {
    for l in lambdas {
        validate_lambda(l, f.len())?;
    }
    let base_slice = SphereSlice::new(s_infinity(k, f, choice, &RayProbe::from_config(&cfg.sampler))?, cfg.sampler.sphere_resolution_deg)?;
    let base = report(k, f, choice, lambdas, &base_slice, cfg)?;
    let results = (0..trials)
        .into_par_iter()
        .map(|t| {
            let seed = derive_seed(cfg.sampler.seed, t as u64);
            let fp = add(f, &random_lower_order(f, seed))?;
            Ok((seed, fp.leading_forms() == f.leading_forms() && report(k, &fp, choice, lambdas, &base_slice, cfg)? == base))
        })
        .collect::<Result<Vec<(u64, bool)>>>()?;
    let identical = results.iter().filter(|r| r.1).count();
    Ok(InvarianceRecord { trials, identical, all_identical: identical == trials, first_mismatch: results.iter().find(|r| !r.1).map(|r| r.0) })
}
