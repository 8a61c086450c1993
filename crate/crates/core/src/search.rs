//! Derivative-free local search used throughout: a compass (pattern) search
//! and a Nelder-Mead simplex method. Both are deterministic.

/// Result of a local search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct CompassOptions {
    pub step: f64,
    pub min_step: f64,
    pub max_evals: usize,
    /// Also poll the `(±e_i ± e_j)/√2` directions.
    pub diagonals: bool,
}

fn poll_directions(n: usize, diagonals: bool) -> Vec<Vec<f64>> {
    let mut dirs = Vec::new();
    for j in 0..n {
        for s in [1.0, -1.0] {
            let mut d = vec![0.0; n];
            d[j] = s;
            dirs.push(d);
        }
    }
    if diagonals {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..n {
            for j in i + 1..n {
                for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                    let mut d = vec![0.0; n];
                    d[i] = si * r;
                    d[j] = sj * r;
                    dirs.push(d);
                }
            }
        }
    }
    dirs
}

/// Compass search with first-improvement polling. Stops early once
/// `done(value)` holds.
pub fn compass<F, D>(mut f: F, x0: &[f64], opts: CompassOptions, done: D) -> SearchResult
where
    F: FnMut(&[f64]) -> f64,
    D: Fn(f64) -> bool,
{
    let n = x0.len();
    let dirs = poll_directions(n, opts.diagonals);
    let mut x = x0.to_vec();
    let mut fx = sanitize(f(&x));
    let mut evals = 1;
    let mut step = opts.step;
    let mut trial = vec![0.0; n];
    while !done(fx) && step >= opts.min_step && evals < opts.max_evals {
        let mut improved = false;
        for d in &dirs {
            for j in 0..n {
                trial[j] = x[j] + step * d[j];
            }
            let ft = sanitize(f(&trial));
            evals += 1;
            if ft < fx {
                x.copy_from_slice(&trial);
                fx = ft;
                improved = true;
                break;
            }
            if evals >= opts.max_evals {
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    SearchResult { x, value: fx, evals }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Nelder-Mead with standard coefficients (1, 2, 0.5, 0.5) and an axis
/// aligned initial simplex of size `step`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], step: f64, max_evals: usize, ftol: f64) -> SearchResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for j in 0..n {
        let mut v = x0.to_vec();
        v[j] += step;
        simplex.push(v);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|v| sanitize(f(v))).collect();
    let mut evals = n + 1;
    let centroid_of = |s: &[Vec<f64>], skip: usize| -> Vec<f64> {
        let mut c = vec![0.0; n];
        for (k, v) in s.iter().enumerate() {
            if k != skip {
                for j in 0..n {
                    c[j] += v[j];
                }
            }
        }
        c.iter_mut().for_each(|cj| *cj /= n as f64);
        c
    };
    let along = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> { c.iter().zip(w).map(|(a, b)| a + t * (b - a)).collect() };

    while evals < max_evals {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));
        simplex = order.iter().map(|&k| simplex[k].clone()).collect();
        vals = order.iter().map(|&k| vals[k]).collect();
        if (vals[n] - vals[0]).abs() <= ftol * (1.0 + vals[0].abs()) && vals[n].is_finite() {
            break;
        }
        let c = centroid_of(&simplex, n);
        let xr = along(&c, &simplex[n], -1.0);
        let fr = sanitize(f(&xr));
        evals += 1;
        if fr < vals[0] {
            let xe = along(&c, &simplex[n], -2.0);
            let fe = sanitize(f(&xe));
            evals += 1;
            if fe < fr {
                simplex[n] = xe;
                vals[n] = fe;
            } else {
                simplex[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            simplex[n] = xr;
            vals[n] = fr;
        } else {
            let (xc, fc) = if fr < vals[n] {
                let xc = along(&c, &xr, 0.5);
                let fc = sanitize(f(&xc));
                (xc, fc)
            } else {
                let xc = along(&c, &simplex[n], 0.5);
                let fc = sanitize(f(&xc));
                (xc, fc)
            };
            evals += 1;
            if fc < vals[n].min(fr) {
                simplex[n] = xc;
                vals[n] = fc;
            } else {
                for k in 1..=n {
                    simplex[k] = along(&simplex[0], &simplex[k], 0.5);
                    vals[k] = sanitize(f(&simplex[k]));
                }
                evals += n;
            }
        }
    }
    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).expect("nonempty simplex");
    SearchResult { x: simplex[best].clone(), value: vals[best], evals }
}
