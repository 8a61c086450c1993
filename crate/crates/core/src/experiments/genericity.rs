//! Fraction of random objectives that are zero-regular on a fixed cone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{derive_seed, Config};
use crate::error::{Error, Result};
use crate::poly::{random_polynomial_with, VectorObjective};
use crate::regularity::{default_lambdas, lambda_recession_classify, ClassifierOptions, SphereSlice};
use crate::sets::{Cone, PolyhedralCone};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericityEntry {
    pub index: usize,
    pub seed: u64,
    pub objective: Vec<String>,
    pub regular: bool,
    /// Any weighted classification fell in the borderline band.
    pub borderline: bool,
    /// Outcome name per default weight vector.
    pub tags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub experiment: String,
    pub dim: usize,
    pub degrees: Vec<u32>,
    pub count: usize,
    pub regular: usize,
    pub borderline: usize,
    pub fraction: f64,
    pub seed: u64,
    pub statement: String,
    pub log: Vec<GenericityEntry>,
}

/// Rank by Gaussian elimination with partial pivoting.
pub fn matrix_rank(a: &[Vec<f64>]) -> usize {
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let scale = m.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    let eps = 1e-10 * scale.max(1e-300);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())) else { break };
        if m[p][c].abs() <= eps {
            continue;
        }
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            let factor = m[i][c] / m[rank][c];
            for j in c..cols {
                m[i][j] -= factor * m[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

/// Draws `count` random objectives with the given degrees and classifies
/// relative zero-regularity on the cone (the default weight list; regular
/// if any weight vector is). Instance `i` uses seed `derive_seed(seed, i)`.
pub fn genericity_sample(cone: &PolyhedralCone, degrees: &[u32], count: usize, cfg: &Config) -> Result<GenericityReport> {
    let n = cone.dim();
    if count == 0 {
        return Err(Error::NoSamples);
    }
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::Config("degrees must be a nonempty list of positive integers".into()));
    }
    if matrix_rank(cone.rows()) < n.min(cone.rows().len()) {
        return Err(Error::RankDeficient);
    }
    let slice = SphereSlice::new(Cone::Polyhedral(cone.clone()), cfg.sampler.sphere_resolution_deg)?;
    let opts = ClassifierOptions::from_config(cfg);
    let lambdas = default_lambdas(degrees.len());
    let log = (0..count)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(cfg.sampler.seed, i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = VectorObjective::new(degrees.iter().map(|&d| random_polynomial_with(&mut rng, n, d, 1.0)).collect())?;
            let results = lambdas.iter().map(|l| lambda_recession_classify(&f, l, &slice, &opts)).collect::<Result<Vec<_>>>()?;
            Ok(GenericityEntry {
                index: i,
                seed,
                objective: f.components().iter().map(|p| p.to_string()).collect(),
                regular: results.iter().any(|r| r.trichotomy.is_regular()),
                borderline: results.iter().any(|r| r.trichotomy.borderline),
                tags: results.iter().map(|r| r.trichotomy.tag.name().to_string()).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let regular = log.iter().filter(|e| e.regular).count();
    let fraction = regular as f64 / count as f64;
    Ok(GenericityReport {
        experiment: "genericity".into(),
        dim: n,
        degrees: degrees.to_vec(),
        count,
        regular,
        borderline: log.iter().filter(|e| e.borderline).count(),
        fraction,
        seed: cfg.sampler.seed,
        statement: format!("{regular} of {count} sampled objectives are zero-regular; consistent with genericity, which a sample cannot confirm"),
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank() {
        assert_eq!(matrix_rank(&[vec![1.0, 0.0], vec![0.0, 1.0]]), 2);
        assert_eq!(matrix_rank(&[vec![1.0, 2.0], vec![2.0, 4.0]]), 1);
        assert_eq!(matrix_rank(&[vec![0.0, 0.0]]), 0);
        assert_eq!(matrix_rank(&[vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]]), 2);
    }

    #[test]
    fn origin_cone_is_always_regular() {
        let r = genericity_sample(&PolyhedralCone::origin(2), &[2], 10, &Config::for_dim(2)).unwrap();
        assert_eq!(r.fraction, 1.0);
    }

    #[test]
    fn errors() {
        let cfg = Config::for_dim(2);
        let quad = PolyhedralCone::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(genericity_sample(&quad, &[2], 0, &cfg), Err(Error::NoSamples)));
        let flat = PolyhedralCone::new(2, vec![vec![1.0, 1.0], vec![2.0, 2.0]]);
        assert!(matches!(genericity_sample(&flat, &[2], 5, &cfg), Err(Error::RankDeficient)));
    }

    #[test]
    fn deterministic_per_seed() {
        let quad = PolyhedralCone::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let cfg = Config::for_dim(2);
        let a = genericity_sample(&quad, &[2], 30, &cfg).unwrap();
        let b = genericity_sample(&quad, &[2], 30, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.fraction >= 0.8, "{}", a.fraction);
    }
}
