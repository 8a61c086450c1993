//! Sparse multivariate polynomials over `f64`.
//!
//! Terms live in a `BTreeMap` keyed by exponent tuple, so iteration order is
//! lexicographic and two polynomials are equal iff their maps are equal.
//! Zero coefficients are never stored. The zero polynomial has no degree
//! (`degree()` returns `None`).

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined for a constant polynomial")]
    ConstantPolynomial,
    #[error("leading forms cancel for the given weights")]
    LeadingCancellation,
    #[error("weights must not all be zero")]
    ZeroWeights,
    #[error("weight {0} is negative or not finite")]
    BadWeight(usize),
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("duplicate exponent tuple {0:?}")]
    DuplicateExponents(Vec<u32>),
    #[error("zero or non-finite coefficient for exponents {0:?}")]
    BadCoefficient(Vec<u32>),
    #[error("objective has no components")]
    EmptyObjective,
    #[error("objective component {0} has degree < 1")]
    DegreeTooLow(usize),
    #[error("polynomial has no terms, dimension cannot be inferred")]
    EmptyTermList,
}

/// A single `coeff * x^exponents` term, as used in serialized form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coeff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, f64>,
    degree: Option<u32>,
}

fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new(), degree: None }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        Self::from_terms(dim, [(vec![0; dim], c)]).expect("well-formed constant")
    }

    /// The coordinate function `x_{j+1}` (zero-based `j`).
    pub fn var(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        Self::from_terms(dim, [(e, 1.0)]).expect("well-formed variable")
    }

    /// Builds a polynomial, merging repeated exponent tuples and dropping
    /// zero sums.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != dim {
                return Err(PolyError::DimensionMismatch { expected: dim, found: e.len() });
            }
            if !c.is_finite() {
                return Err(PolyError::BadCoefficient(e));
            }
            *map.entry(e).or_insert(0.0) += c;
        }
        map.retain(|_, c| *c != 0.0);
        Ok(Self::from_map(dim, map))
    }

    /// Strict constructor for external input: duplicate tuples and zero
    /// coefficients are errors rather than merged or dropped.
    pub fn from_monomials(dim: usize, terms: &[Monomial]) -> Result<Self, PolyError> {
        let mut map = BTreeMap::new();
        for t in terms {
            if t.exponents.len() != dim {
                return Err(PolyError::DimensionMismatch { expected: dim, found: t.exponents.len() });
            }
            if t.coeff == 0.0 || !t.coeff.is_finite() {
                return Err(PolyError::BadCoefficient(t.exponents.clone()));
            }
            if map.insert(t.exponents.clone(), t.coeff).is_some() {
                return Err(PolyError::DuplicateExponents(t.exponents.clone()));
            }
        }
        Ok(Self::from_map(dim, map))
    }

    fn from_map(dim: usize, terms: BTreeMap<Vec<u32>, f64>) -> Self {
        let degree = terms.keys().map(|e| total_degree(e)).max();
        Polynomial { dim, terms, degree }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn coeff(&self, exponents: &[u32]) -> f64 {
        self.terms.get(exponents).copied().unwrap_or(0.0)
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(e, c)| Monomial { exponents: e.clone(), coeff: *c })
            .collect()
    }

    fn check_dim(&self, found: usize) -> Result<(), PolyError> {
        if found != self.dim {
            return Err(PolyError::DimensionMismatch { expected: self.dim, found });
        }
        Ok(())
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64, PolyError> {
        self.check_dim(x.len())?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(*c, |acc, (&k, &xi)| if k == 0 { acc } else { acc * xi.powi(k as i32) })
            })
            .sum()
    }

    /// `Σ |c| Π |x_j|^{e_j}`, an upper bound on the magnitude of every
    /// partial sum in `eval`; used to scale feasibility tolerances.
    pub(crate) fn eval_abs_unchecked(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.abs(), |acc, (&k, &xi)| if k == 0 { acc } else { acc * xi.abs().powi(k as i32) })
            })
            .sum()
    }

    pub fn grad(&self, x: &[f64]) -> Result<Vec<f64>, PolyError> {
        self.check_dim(x.len())?;
        let mut g = vec![0.0; self.dim];
        for (e, c) in &self.terms {
            for j in 0..self.dim {
                if e[j] == 0 {
                    continue;
                }
                let mut term = c * e[j] as f64;
                for (i, (&k, &xi)) in e.iter().zip(x).enumerate() {
                    let k = if i == j { k - 1 } else { k };
                    if k > 0 {
                        term *= xi.powi(k as i32);
                    }
                }
                g[j] += term;
            }
        }
        Ok(g)
    }

    /// The homogeneous part of top total degree.
    pub fn leading_form(&self) -> Result<Polynomial, PolyError> {
        match self.degree {
            None => Err(PolyError::ZeroPolynomial),
            Some(0) => Err(PolyError::ConstantPolynomial),
            Some(d) => Ok(self.homogeneous_part(d)),
        }
    }

    /// Terms of total degree exactly `d` (possibly the zero polynomial).
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let map = self
            .terms
            .iter()
            .filter(|(e, _)| total_degree(e) == d)
            .map(|(e, c)| (e.clone(), *c))
            .collect();
        Self::from_map(self.dim, map)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree {
            None => true,
            Some(d) => self.terms.keys().all(|e| total_degree(e) == d),
        }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Sum of absolute coefficients.
    pub fn coeff_l1(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        if s == 0.0 {
            return Polynomial::zero(self.dim);
        }
        let map = self.terms.iter().map(|(e, c)| (e.clone(), c * s)).filter(|(_, c)| *c != 0.0).collect();
        Self::from_map(self.dim, map)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other.dim)?;
        let mut map = self.terms.clone();
        for (e, c) in &other.terms {
            *map.entry(e.clone()).or_insert(0.0) += c;
        }
        map.retain(|_, c| *c != 0.0);
        Ok(Self::from_map(self.dim, map))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.scale(-1.0))
    }

    /// `p + g`. When `deg g < deg p` the leading form is untouched, since
    /// top-degree coefficients are never combined with anything.
    pub fn perturb(&self, g: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(g)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other.dim)?;
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *map.entry(e).or_insert(0.0) += ca * cb;
            }
        }
        map.retain(|_, c| *c != 0.0);
        Ok(Self::from_map(self.dim, map))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.dim, 1.0);
        for _ in 0..k {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first reads naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| total_degree(b.0).cmp(&total_degree(a.0)).then(b.0.cmp(a.0)));
        for (k, (e, c)) in terms.iter().enumerate() {
            let c = **c;
            let (sign, mag) = if c < 0.0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(j, &p)| if p == 1 { format!("x{}", j + 1) } else { format!("x{}^{}", j + 1, p) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1.0 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.monomials().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Monomial>::deserialize(d)?;
        let dim = terms.first().map(|t| t.exponents.len()).ok_or_else(|| serde::de::Error::custom(PolyError::EmptyTermList))?;
        Polynomial::from_monomials(dim, &terms).map_err(serde::de::Error::custom)
    }
}

/// All exponent tuples of length `n` with total degree `<= d`, in
/// lexicographic order.
pub fn exponents_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Dense random polynomial of degree exactly `d` with coefficients uniform
/// in `[-scale, scale]`.
pub fn random_polynomial(n: usize, d: u32, seed: u64, scale: f64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_polynomial_with(&mut rng, n, d, scale)
}

pub(crate) fn random_polynomial_with<R: Rng>(rng: &mut R, n: usize, d: u32, scale: f64) -> Polynomial {
    let exps = exponents_up_to(n, d);
    let mut coeffs: Vec<f64> = exps.iter().map(|_| rng.gen_range(-scale..=scale)).collect();
    let top: Vec<usize> = (0..exps.len()).filter(|&i| total_degree(&exps[i]) == d).collect();
    while top.iter().all(|&i| coeffs[i] == 0.0) {
        for &i in &top {
            coeffs[i] = rng.gen_range(-scale..=scale);
        }
    }
    Polynomial::from_terms(n, exps.into_iter().zip(coeffs)).expect("dimension consistent")
}

/// Random homogeneous form of degree `d` (every monomial of degree `d`).
pub fn random_form(n: usize, d: u32, seed: u64, scale: f64) -> Polynomial {
    random_polynomial(n, d, seed, scale).homogeneous_part(d)
}

/// `f = (f_1, ..., f_q)`, every component of degree at least one.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorObjective {
    components: Vec<Polynomial>,
}

impl VectorObjective {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, PolyError> {
        let first = components.first().ok_or(PolyError::EmptyObjective)?;
        let dim = first.dim();
        for (i, c) in components.iter().enumerate() {
            c.check_dim(dim).map_err(|_| PolyError::DimensionMismatch { expected: dim, found: c.dim() })?;
            match c.degree() {
                Some(d) if d >= 1 => {}
                _ => return Err(PolyError::DegreeTooLow(i)),
            }
        }
        Ok(VectorObjective { components })
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn degree_vector(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.degree().expect("degree >= 1")).collect()
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>, PolyError> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_unchecked(x)).collect()
    }

    /// Componentwise leading forms.
    pub fn leading_forms(&self) -> VectorObjective {
        let comps = self.components.iter().map(|c| c.leading_form().expect("degree >= 1")).collect();
        VectorObjective { components: comps }
    }

    /// Sum of squared coefficient norms, square-rooted.
    pub fn coeff_norm(&self) -> f64 {
        self.components.iter().map(|c| c.coeff_norm().powi(2)).sum::<f64>().sqrt()
    }

    fn check_weights(&self, lambda: &[f64]) -> Result<(), PolyError> {
        if lambda.len() != self.len() {
            return Err(PolyError::WeightCount { expected: self.len(), found: lambda.len() });
        }
        if let Some(i) = lambda.iter().position(|l| !(l.is_finite() && *l >= 0.0)) {
            return Err(PolyError::BadWeight(i));
        }
        if lambda.iter().all(|&l| l == 0.0) {
            return Err(PolyError::ZeroWeights);
        }
        Ok(())
    }

    /// `Σ λ_i f_i`; exact cancellation may lower the degree or give zero.
    pub fn weighted_sum(&self, lambda: &[f64]) -> Result<Polynomial, PolyError> {
        self.check_weights(lambda)?;
        let mut acc = Polynomial::zero(self.dim());
        for (c, &l) in self.components.iter().zip(lambda) {
            if l != 0.0 {
                acc = acc.add(&c.scale(l))?;
            }
        }
        Ok(acc)
    }

    /// Indices with nonzero weight and maximal degree among those.
    pub fn top_index_set(&self, lambda: &[f64]) -> Result<Vec<usize>, PolyError> {
        self.check_weights(lambda)?;
        let degs = self.degree_vector();
        let dmax = (0..self.len()).filter(|&i| lambda[i] != 0.0).map(|i| degs[i]).max().expect("some weight nonzero");
        Ok((0..self.len()).filter(|&i| lambda[i] != 0.0 && degs[i] == dmax).collect())
    }

    /// `Σ_{i∈I} λ_i (f_i)^∞` over the top index set. Errors with
    /// `LeadingCancellation` when that sum is zero.
    pub fn weighted_leading_form(&self, lambda: &[f64]) -> Result<Polynomial, PolyError> {
        let top = self.top_index_set(lambda)?;
        let mut acc = Polynomial::zero(self.dim());
        for i in top {
            acc = acc.add(&self.components[i].leading_form()?.scale(lambda[i]))?;
        }
        if acc.is_zero() {
            return Err(PolyError::LeadingCancellation);
        }
        Ok(acc)
    }

    pub fn perturb(&self, g: &VectorObjective) -> Result<VectorObjective, PolyError> {
        if g.len() != self.len() {
            return Err(PolyError::WeightCount { expected: self.len(), found: g.len() });
        }
        let comps = self.components.iter().zip(&g.components).map(|(a, b)| a.perturb(b)).collect::<Result<Vec<_>, _>>()?;
        VectorObjective::new(comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(dim: usize, terms: &[(&[u32], f64)]) -> Polynomial {
        Polynomial::from_terms(dim, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    fn ex1_f1() -> Polynomial {
        p(2, &[(&[0, 3], 1.0), (&[2, 0], -1.0), (&[1, 1], -1.0), (&[0, 0], 1.0)])
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ex1_f1().eval(&[0.0, 0.0]).unwrap(), 1.0);
        assert_eq!(Polynomial::zero(3).eval(&[1.0, 2.0, 3.0]).unwrap(), 0.0);
        let g = p(2, &[(&[1, 2], 1.0), (&[1, 1], -1.0)]);
        let v = g.eval(&[2.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert!((v + 4.0 / 27.0).abs() < 1e-15);
        assert!(matches!(g.eval(&[1.0]), Err(PolyError::DimensionMismatch { .. })));
    }

    #[test]
    fn grad_examples() {
        let sq = p(2, &[(&[2, 0], 1.0), (&[0, 2], 1.0)]);
        assert_eq!(sq.grad(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        let g = p(2, &[(&[1, 2], 1.0)]);
        assert_eq!(g.grad(&[1.0, 1.0]).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn degree_and_sentinel() {
        assert_eq!(ex1_f1().degree(), Some(3));
        assert_eq!(Polynomial::zero(2).degree(), None);
        assert_eq!(Polynomial::constant(2, 7.0).degree(), Some(0));
        assert_eq!(Polynomial::zero(2).leading_form(), Err(PolyError::ZeroPolynomial));
        assert_eq!(Polynomial::constant(2, 7.0).leading_form(), Err(PolyError::ConstantPolynomial));
    }

    #[test]
    fn leading_form_examples() {
        assert_eq!(ex1_f1().leading_form().unwrap(), p(2, &[(&[0, 3], 1.0)]));
        let x1 = Polynomial::var(2, 0);
        assert_eq!(x1.leading_form().unwrap(), x1);
        let h = p(2, &[(&[2, 1], 3.0), (&[0, 3], -1.0)]);
        assert_eq!(h.leading_form().unwrap(), h);
    }

    #[test]
    fn leading_form_vector_examples() {
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        let one = Polynomial::constant(2, 1.0);
        let f = VectorObjective::new(vec![x1.clone(), x2.clone()]).unwrap();
        assert_eq!(f.leading_forms(), f);

        // ((x1^4 x2^4 - 1)^2 + 2 x1^4, (x1^2 x2^2 - 1)^2 + 4 x1^2)
        let m44 = p(2, &[(&[4, 4], 1.0)]);
        let m22 = p(2, &[(&[2, 2], 1.0)]);
        let f1 = m44.sub(&one).unwrap().pow(2).add(&p(2, &[(&[4, 0], 2.0)])).unwrap();
        let f2 = m22.sub(&one).unwrap().pow(2).add(&p(2, &[(&[2, 0], 4.0)])).unwrap();
        let lf = VectorObjective::new(vec![f1, f2]).unwrap().leading_forms();
        assert_eq!(lf.component(0), &p(2, &[(&[8, 8], 1.0)]));
        assert_eq!(lf.component(1), &p(2, &[(&[4, 4], 1.0)]));

        let g = VectorObjective::new(vec![p(2, &[(&[2, 0], 2.0), (&[0, 1], -1.0)]), p(2, &[(&[0, 3], 1.0)])]).unwrap();
        let lg = g.leading_forms();
        assert_eq!(lg.component(0), &p(2, &[(&[2, 0], 2.0)]));
        assert_eq!(lg.degree_vector(), vec![2, 3]);
    }

    #[test]
    fn weighted_sum_examples() {
        let f = VectorObjective::new(vec![p(1, &[(&[3], 1.0)]), p(1, &[(&[1], 1.0)])]).unwrap();
        let s = f.weighted_sum(&[1.0, 1.0]).unwrap();
        assert_eq!(s, p(1, &[(&[3], 1.0), (&[1], 1.0)]));
        assert_eq!(s.degree(), Some(3));

        let x1 = Polynomial::var(2, 0);
        let g = VectorObjective::new(vec![x1.clone(), x1.scale(-1.0)]).unwrap();
        let z = g.weighted_sum(&[1.0, 1.0]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);

        let e = VectorObjective::new(vec![ex1_f1(), x1.clone()]).unwrap();
        assert_eq!(e.weighted_sum(&[1.0, 0.0]).unwrap(), ex1_f1());
        assert_eq!(e.weighted_sum(&[0.0, 0.0]), Err(PolyError::ZeroWeights));
        assert_eq!(e.weighted_sum(&[-1.0, 1.0]), Err(PolyError::BadWeight(0)));
    }

    #[test]
    fn weighted_leading_form_examples() {
        let f = VectorObjective::new(vec![p(1, &[(&[3], 1.0)]), p(1, &[(&[1], 1.0)])]).unwrap();
        assert_eq!(f.weighted_leading_form(&[1.0, 1.0]).unwrap(), p(1, &[(&[3], 1.0)]));

        let g = VectorObjective::new(vec![Polynomial::var(2, 0), Polynomial::var(2, 1)]).unwrap();
        assert_eq!(g.weighted_leading_form(&[2.0, 3.0]).unwrap(), p(2, &[(&[1, 0], 2.0), (&[0, 1], 3.0)]));

        let h = VectorObjective::new(vec![p(2, &[(&[0, 3], 1.0)]), p(2, &[(&[2, 0], 1.0)])]).unwrap();
        assert_eq!(h.weighted_leading_form(&[0.0, 1.0]).unwrap(), p(2, &[(&[2, 0], 1.0)]));

        let c = VectorObjective::new(vec![Polynomial::var(2, 0), Polynomial::var(2, 0).scale(-1.0)]).unwrap();
        assert_eq!(c.weighted_leading_form(&[1.0, 1.0]), Err(PolyError::LeadingCancellation));
    }

    #[test]
    fn coeff_norm_examples() {
        assert_eq!(p(2, &[(&[1, 0], 3.0)]).coeff_norm(), 3.0);
        assert_eq!(p(2, &[(&[1, 0], 1.0), (&[0, 1], 1.0)]).coeff_norm(), 2f64.sqrt());
        let a = p(2, &[(&[1, 0], 3.0), (&[0, 2], -2.0)]);
        let b = p(2, &[(&[1, 1], 5.0)]);
        let s = a.add(&b).unwrap();
        assert!((s.coeff_norm().powi(2) - a.coeff_norm().powi(2) - b.coeff_norm().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn perturb_examples() {
        let x3 = p(1, &[(&[3], 1.0)]);
        let g = p(1, &[(&[1], 5.0), (&[0], 7.0)]);
        assert_eq!(x3.perturb(&g).unwrap().leading_form().unwrap(), x3);
        assert_eq!(ex1_f1().perturb(&Polynomial::zero(2)).unwrap(), ex1_f1());
        assert!(x3.perturb(&Polynomial::zero(2)).is_err());
    }

    #[test]
    fn random_polynomial_shape() {
        let r = random_polynomial(1, 1, 42, 1.0);
        assert_eq!(r.degree(), Some(1));
        assert_ne!(r.coeff(&[1]), 0.0);
        assert_eq!(random_polynomial(3, 4, 9, 2.0), random_polynomial(3, 4, 9, 2.0));
        for s in 0..1000 {
            assert_eq!(random_polynomial(2, 2, s, 1.0).degree(), Some(2));
        }
    }

    #[test]
    fn exponent_enumeration_is_lex() {
        let e = exponents_up_to(2, 2);
        assert_eq!(e.len(), 6);
        let mut sorted = e.clone();
        sorted.sort();
        assert_eq!(e, sorted);
    }

    #[test]
    fn serde_round_trip_and_rejections() {
        let f = ex1_f1();
        let s = serde_json::to_string(&f).unwrap();
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let dup = r#"[{"exponents":[1,0],"coeff":1.0},{"exponents":[1,0],"coeff":2.0}]"#;
        assert!(serde_json::from_str::<Polynomial>(dup).is_err());
        let zero = r#"[{"exponents":[1,0],"coeff":0.0}]"#;
        assert!(serde_json::from_str::<Polynomial>(zero).is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(ex1_f1().to_string(), "x2^3 - x1^2 - x1*x2 + 1");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn objective_rejects_degree_zero() {
        let c = Polynomial::constant(2, 7.0);
        assert_eq!(VectorObjective::new(vec![c]), Err(PolyError::DegreeTooLow(0)));
        assert_eq!(VectorObjective::new(vec![]), Err(PolyError::EmptyObjective));
    }
}
