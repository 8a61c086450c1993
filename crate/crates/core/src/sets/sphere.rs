//! Deterministic angular grids on the unit sphere for `n <= 4`.

use crate::error::{Error, Result};

/// Unit vectors on an angular grid with step `res_deg` degrees.
///
/// `n = 2` walks the circle from angle 0; higher dimensions use nested
/// polar angles in `[0°, 180°]` with the azimuthal count shrinking with the
/// product of sines, so points stay roughly `res_deg` apart.
pub fn sphere_grid(n: usize, res_deg: f64) -> Result<Vec<Vec<f64>>> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    if !(res_deg > 0.0 && res_deg.is_finite()) {
        return Err(Error::Config("angular resolution must be positive".into()));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    grid_rec(n, res_deg, 1.0, &mut prefix, &mut out);
    Ok(out)
}

fn grid_rec(n: usize, res: f64, radius: f64, prefix: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
    if n == 1 {
        for s in [-1.0, 1.0] {
            let mut v = prefix.clone();
            v.push(s * radius);
            out.push(v);
        }
        return;
    }
    if n == 2 {
        let count = if prefix.is_empty() { (360.0 / res).round().max(1.0) as usize } else { ((360.0 * radius / res).round() as usize).max(1) };
        let step = 360.0 / count as f64;
        for k in 0..count {
            let a = (k as f64 * step).to_radians();
            let mut v = prefix.clone();
            v.push(radius * a.cos());
            v.push(radius * a.sin());
            out.push(v);
        }
        return;
    }
    let m = ((180.0 / res).round() as usize).max(1);
    for k in 0..=m {
        let theta = (180.0 * k as f64 / m as f64).to_radians();
        let (s, c) = theta.sin_cos();
        prefix.push(radius * c);
        if k == 0 || k == m {
            let mut v = prefix.clone();
            v.resize(prefix.len() + n - 1, 0.0);
            out.push(v);
        } else {
            grid_rec(n - 1, res, radius * s, prefix, out);
        }
        prefix.pop();
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn normalize(v: &[f64]) -> Option<Vec<f64>> {
    let r = norm(v);
    if r > 0.0 && r.is_finite() {
        Some(v.iter().map(|x| x / r).collect())
    } else {
        None
    }
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Angle between two unit vectors, in radians.
pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b).clamp(-1.0, 1.0).acos()
}

pub fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Sorts lexicographically and drops near-duplicates (max-norm ≤ `eps`).
pub fn sort_dedup(mut v: Vec<Vec<f64>>, eps: f64) -> Vec<Vec<f64>> {
    v.sort_by(|a, b| lex_cmp(a, b));
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(v.len());
    for p in v {
        let dup = out.iter().rev().take(8).any(|q| q.iter().zip(&p).all(|(a, b)| (a - b).abs() <= eps));
        if !dup {
            out.push(p);
        }
    }
    out
}
