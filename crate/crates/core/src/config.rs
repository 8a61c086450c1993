//! Sampling schedules and tolerances. Every report echoes the resolved
//! values, so a run can be reproduced from its output alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Angular step of the unit-sphere grid, in degrees.
    pub sphere_resolution_deg: f64,
    /// Scales `t` at which `ray_in_cone` looks for points near `t·v`.
    pub ray_scales: Vec<f64>,
    /// Allowed normalized distance `‖x/t − v‖`.
    pub ray_tolerance: f64,
    /// Evaluation budget per scale.
    pub ray_budget: usize,
    /// Grid directions refined after sphere sampling.
    pub refine_starts: usize,
    pub refine_iterations: usize,
    /// Points per axis for compact minimization grids.
    pub solver_grid: usize,
    /// Points per axis for the domination oracle.
    pub oracle_grid: usize,
    /// Half-width of the default verification box around a candidate.
    pub oracle_half_width: f64,
    /// Ball radii for the truncated scalarized problems.
    pub ball_schedule: Vec<f64>,
    /// Shell radii for boundedness probes.
    pub box_schedule: Vec<f64>,
    /// Box radii for section-boundedness probes.
    pub section_radii: Vec<f64>,
    /// Step lengths tried by the descent-direction check.
    pub descent_steps: Vec<f64>,
    /// Sample cap for the descent-direction check.
    pub descent_budget: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Relative threshold `τ = trichotomy·(1 + ‖h‖)` on sphere-slice minima.
    pub trichotomy: f64,
    /// Relative domination threshold for verification.
    pub domination: f64,
    /// Ball-interior margin in the stabilization rule.
    pub interior_margin: f64,
    /// Distance between consecutive interior minimizers.
    pub stabilization: f64,
    /// Relative band for minimal-norm selection.
    pub near_optimal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { trichotomy: 1e-6, domination: 1e-6, interior_margin: 0.5, stabilization: 1e-4, near_optimal: 1e-8 }
    }
}

/// Default angular resolution for dimension `n`.
pub fn default_resolution(n: usize) -> f64 {
    match n {
        0..=2 => 0.25,
        3 => 2.0,
        _ => 8.0,
    }
}

pub fn default_solver_grid(n: usize) -> usize {
    match n {
        0 | 1 => 2001,
        2 => 120,
        3 => 41,
        _ => 15,
    }
}

fn geometric(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start * ratio.powi(k as i32)).collect()
}

impl SamplerConfig {
    pub fn for_dim(n: usize) -> Self {
        SamplerConfig {
            seed: 0,
            sphere_resolution_deg: default_resolution(n),
            ray_scales: geometric(10.0, 10.0, 6),
            ray_tolerance: 1e-2,
            ray_budget: 500,
            refine_starts: 5,
            refine_iterations: 50,
            solver_grid: default_solver_grid(n),
            oracle_grid: 201,
            oracle_half_width: 5.0,
            ball_schedule: geometric(1.0, 2.0, 13),
            box_schedule: geometric(1.0, 10.0, 5),
            section_radii: geometric(1.0, 10.0, 4),
            descent_steps: geometric(1e-3, 10.0, 4),
            descent_budget: 400,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let increasing = |v: &[f64]| !v.is_empty() && v.iter().all(|x| x.is_finite() && *x > 0.0) && v.windows(2).all(|w| w[0] < w[1]);
        let checks = [
            (self.sphere_resolution_deg > 0.0 && self.sphere_resolution_deg <= 90.0, "sphere_resolution_deg must lie in (0, 90]"),
            (increasing(&self.ray_scales), "ray_scales must be positive and increasing"),
            (self.ray_tolerance > 0.0, "ray_tolerance must be positive"),
            (self.ray_budget > 0, "ray_budget must be positive"),
            (self.solver_grid >= 2, "solver_grid must be at least 2"),
            (self.oracle_grid >= 2, "oracle_grid must be at least 2"),
            (self.oracle_half_width > 0.0, "oracle_half_width must be positive"),
            (increasing(&self.ball_schedule), "ball_schedule must be positive and increasing"),
            (increasing(&self.box_schedule), "box_schedule must be positive and increasing"),
            (increasing(&self.section_radii), "section_radii must be positive and increasing"),
            (increasing(&self.descent_steps), "descent_steps must be positive and increasing"),
            (self.descent_budget > 0, "descent_budget must be positive"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, msg)) => Err(Error::Config(msg.to_string())),
            None => Ok(()),
        }
    }
}

/// Everything an algorithm needs besides the problem data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub sampler: SamplerConfig,
    pub tolerances: Tolerances,
}

impl Config {
    pub fn for_dim(n: usize) -> Self {
        Config { sampler: SamplerConfig::for_dim(n), tolerances: Tolerances::default() }
    }
}

/// SplitMix64 finalizer; used to derive independent per-trial seeds from a
/// base seed and a counter, so serial and parallel runs agree.
pub fn derive_seed(seed: u64, counter: u64) -> u64 {
    let mut z = seed ^ counter.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        for n in 1..=4 {
            SamplerConfig::for_dim(n).validate().unwrap();
        }
        let c = SamplerConfig::for_dim(2);
        assert_eq!(c.ball_schedule.first(), Some(&1.0));
        assert_eq!(c.ball_schedule.last(), Some(&4096.0));
        assert_eq!(c.ray_scales.len(), 6);
    }

    #[test]
    fn bad_schedule_rejected() {
        let mut c = SamplerConfig::for_dim(2);
        c.ball_schedule = vec![2.0, 1.0];
        assert!(c.validate().is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        let a: Vec<u64> = (0..100).map(|k| derive_seed(7, k)).collect();
        let mut b = a.clone();
        b.sort();
        b.dedup();
        assert_eq!(b.len(), 100);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }
}
