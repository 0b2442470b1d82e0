//! Exact arithmetic on finite sums of `P(x)·exp(−½σx² − cx)` terms living on
//! `ℝ × ℤ_m`.
//!
//! Each term also carries a real log-scale `d`, so its value is
//! `P(x)·exp(d − ½σx² − cx)` and the polynomial is kept normalized to
//! `max |p_k| = 1`. Translations by several widths produce factors like
//! `e^{−50}`; keeping those in `d` lets coefficient pruning stay relative
//! to the term itself instead of to an absolute floor.
//!
//! Coefficients whose magnitude drops to `PRUNE_TOL` of the largest summand
//! that produced them are set to zero. That is what makes `v − v`,
//! `[d/dx, x] − 1` and similar identities canonicalize to the empty vector.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative threshold below which a freshly computed coefficient is zero.
pub const PRUNE_TOL: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Deterministic probe abscissae `−5, −4.75, …, 5`.
pub fn probe_grid() -> impl Iterator<Item = f64> {
    (0..=40).map(|i| -5.0 + 0.25 * i as f64)
}

/// Sums `parts`, returning exact zero when the result is cancellation noise.
fn pruned_sum(parts: &[Complex64]) -> Complex64 {
    let total: Complex64 = parts.iter().sum();
    let scale = parts.iter().fold(0.0f64, |acc, p| acc.max(p.norm()));
    if total.norm() <= PRUNE_TOL * scale {
        ZERO
    } else {
        total
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyGaussTerm {
    poly: Vec<Complex64>,
    sigma: Complex64,
    c: Complex64,
    log_scale: f64,
    mu: usize,
}

impl PolyGaussTerm {
    /// Term `P(x) exp(−½σx² − cx)` on component `mu`; `poly` is in ascending powers.
    pub fn new(poly: Vec<Complex64>, sigma: Complex64, c: Complex64, mu: usize) -> Result<Self> {
        if !(sigma.re > 0.0) {
            return Err(Error::InvalidSigma(sigma.re));
        }
        Ok(Self {
            poly,
            sigma,
            c,
            log_scale: 0.0,
            mu,
        })
    }

    pub fn gaussian(sigma: Complex64, c: Complex64, mu: usize) -> Result<Self> {
        Self::new(vec![ONE], sigma, c, mu)
    }

    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn degree(&self) -> usize {
        self.poly.len().saturating_sub(1)
    }

    /// Polynomial coefficients with the log-scale folded back in.
    pub fn poly(&self) -> Vec<Complex64> {
        let s = self.log_scale.exp();
        self.poly.iter().map(|p| p * s).collect()
    }

    fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    fn same_exponent(&self, other: &Self) -> bool {
        self.mu == other.mu && self.sigma == other.sigma && self.c == other.c
    }

    /// Normalizes to `max |p_k| = 1`, drops sub-threshold coefficients and
    /// trailing zeros.
    fn normalize(mut self) -> Self {
        let top = self.poly.iter().fold(0.0f64, |acc, p| acc.max(p.norm()));
        if top == 0.0 || !top.is_finite() {
            self.poly.clear();
            return self;
        }
        for p in &mut self.poly {
            *p /= top;
            if p.norm() <= PRUNE_TOL {
                *p = ZERO;
            }
        }
        self.log_scale += top.ln();
        while self.poly.last() == Some(&ZERO) {
            self.poly.pop();
        }
        self
    }

    fn eval_at(&self, x: f64) -> Complex64 {
        let p = self
            .poly
            .iter()
            .rev()
            .fold(ZERO, |acc, coef| acc * x + coef);
        let exponent = -0.5 * self.sigma * x * x - self.c * x + self.log_scale;
        p * exponent.exp()
    }

    fn with_poly(&self, poly: Vec<Complex64>) -> Self {
        Self {
            poly,
            ..self.clone()
        }
        .normalize()
    }

    fn scaled(&self, s: Complex64) -> Self {
        let norm = s.norm();
        let phase = s / norm;
        Self {
            poly: self.poly.iter().map(|p| p * phase).collect(),
            log_scale: self.log_scale + norm.ln(),
            ..self.clone()
        }
    }

    fn shifted(&self, s: f64) -> Self {
        // P(x − s) by Horner's scheme on polynomials.
        let mut out: Vec<Complex64> = Vec::with_capacity(self.poly.len());
        for coef in self.poly.iter().rev() {
            // out ← out·(x − s) + coef
            let mut next = vec![ZERO; out.len() + 1];
            for (k, o) in out.iter().enumerate() {
                next[k + 1] += o;
                next[k] -= o * s;
            }
            next[0] += coef;
            out = next;
        }
        // −½σ(x−s)² − c(x−s) = −½σx² − (c − σs)x + (cs − ½σs²)
        let constant = self.c * s - 0.5 * self.sigma * s * s;
        let phase = Complex64::from_polar(1.0, constant.im);
        Self {
            poly: out.into_iter().map(|p| p * phase).collect(),
            sigma: self.sigma,
            c: self.c - self.sigma * s,
            log_scale: self.log_scale + constant.re,
            mu: self.mu,
        }
        .normalize()
    }

    fn times_x(&self) -> Self {
        let mut poly = Vec::with_capacity(self.poly.len() + 1);
        poly.push(ZERO);
        poly.extend_from_slice(&self.poly);
        self.with_poly(poly)
    }

    fn derivative(&self) -> Self {
        // d/dx[P e^{…}] = (P′ − (σx + c)P) e^{…}
        let deg = self.poly.len();
        let mut poly = Vec::with_capacity(deg + 1);
        for k in 0..=deg {
            let from_deriv = self.poly.get(k + 1).map_or(ZERO, |p| p * (k + 1) as f64);
            let from_sigma = if k >= 1 {
                self.poly.get(k - 1).map_or(ZERO, |p| -self.sigma * p)
            } else {
                ZERO
            };
            let from_c = self.poly.get(k).map_or(ZERO, |p| -self.c * p);
            poly.push(pruned_sum(&[from_deriv, from_sigma, from_c]));
        }
        self.with_poly(poly)
    }
}

/// Element of `S(ℝ × ℤ_m)` given as a finite sum of polynomial-Gaussian terms.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyGaussVector {
    m: usize,
    terms: Vec<PolyGaussTerm>,
}

impl PolyGaussVector {
    pub fn zero(m: usize) -> Self {
        Self { m, terms: Vec::new() }
    }

    pub fn new(m: usize, terms: Vec<PolyGaussTerm>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("m must be positive".into()));
        }
        for t in &terms {
            if t.mu >= m {
                return Err(Error::IndexOutOfRange {
                    what: "mu",
                    value: t.mu as i64,
                    bound: m as i64,
                });
            }
        }
        Ok(Self::from_terms(m, terms))
    }

    /// Single pure Gaussian `exp(−½σx² − cx) δ^μ_{mu}`.
    pub fn gaussian(m: usize, sigma: Complex64, c: Complex64, mu: usize) -> Result<Self> {
        Self::new(m, vec![PolyGaussTerm::gaussian(sigma, c, mu)?])
    }

    fn from_terms(m: usize, terms: Vec<PolyGaussTerm>) -> Self {
        let mut merged: Vec<PolyGaussTerm> = Vec::new();
        for term in terms.into_iter().map(PolyGaussTerm::normalize) {
            if term.is_zero() {
                continue;
            }
            match merged.iter_mut().find(|t| t.same_exponent(&term)) {
                Some(existing) => *existing = merge(existing, &term),
                None => merged.push(term),
            }
        }
        merged.retain(|t| !t.is_zero());
        Self { m, terms: merged }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[PolyGaussTerm] {
        &self.terms
    }

    /// True iff the canonical term list is empty.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(PolyGaussTerm::degree).max().unwrap_or(0)
    }

    pub fn evaluate(&self, x: f64, mu: usize) -> Result<Complex64> {
        if mu >= self.m {
            return Err(Error::IndexOutOfRange {
                what: "mu",
                value: mu as i64,
                bound: self.m as i64,
            });
        }
        Ok(self.eval_unchecked(x, mu))
    }

    pub(crate) fn eval_unchecked(&self, x: f64, mu: usize) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.mu == mu)
            .map(|t| t.eval_at(x))
            .sum()
    }

    fn map_terms(&self, f: impl Fn(&PolyGaussTerm) -> PolyGaussTerm) -> Self {
        Self::from_terms(self.m, self.terms.iter().map(f).collect())
    }

    /// `x ↦ v(x − s)` on every component.
    pub fn shift(&self, s: f64) -> Self {
        if s == 0.0 {
            return self.clone();
        }
        self.map_terms(|t| t.shifted(s))
    }

    /// Multiplication by `e^{βx}`.
    pub fn mul_exp(&self, beta: Complex64) -> Self {
        self.map_terms(|t| PolyGaussTerm {
            c: t.c - beta,
            ..t.clone()
        })
    }

    pub fn mul_x(&self) -> Self {
        self.map_terms(PolyGaussTerm::times_x)
    }

    pub fn differentiate(&self) -> Self {
        self.map_terms(PolyGaussTerm::derivative)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        if s == ZERO {
            return Self::zero(self.m);
        }
        self.map_terms(|t| t.scaled(s))
    }

    /// `α·v + w`.
    pub fn axpy(alpha: Complex64, v: &Self, w: &Self) -> Result<Self> {
        check_dims(v.m, w.m)?;
        let mut terms = v.scale(alpha).terms;
        terms.extend(w.terms.iter().cloned());
        Ok(Self::from_terms(v.m, terms))
    }

    pub fn add(&self, w: &Self) -> Result<Self> {
        Self::axpy(ONE, w, self)
    }

    pub fn sub(&self, w: &Self) -> Result<Self> {
        Self::axpy(-ONE, w, self)
    }

    /// Sends component `μ` to `μ + offset (mod m)`, i.e. `w(x, μ) = v(x, μ − offset)`.
    pub fn rotate_components(&self, offset: i64) -> Self {
        let m = self.m as i64;
        self.map_terms(|t| PolyGaussTerm {
            mu: (t.mu as i64 + offset).rem_euclid(m) as usize,
            ..t.clone()
        })
    }

    /// Multiplies component `μ` by the constant `phase(μ)`.
    pub fn mul_component_phase(&self, phase: impl Fn(usize) -> Complex64) -> Self {
        self.map_terms(|t| t.scaled(phase(t.mu)))
    }

    /// Largest modulus over the probe grid and all components.
    pub fn probe_max(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..self.m {
            for x in probe_grid() {
                worst = worst.max(self.eval_unchecked(x, mu).norm());
            }
        }
        worst
    }

    /// Largest pointwise distance to `w` over the probe grid.
    pub fn probe_max_diff(&self, w: &Self) -> Result<f64> {
        check_dims(self.m, w.m)?;
        let mut worst: f64 = 0.0;
        for mu in 0..self.m {
            for x in probe_grid() {
                let d = self.eval_unchecked(x, mu) - w.eval_unchecked(x, mu);
                worst = worst.max(d.norm());
            }
        }
        Ok(worst)
    }

    /// Probe-grid distance normalized by `1 + max|self|`.
    pub fn probe_residual(&self, w: &Self) -> Result<f64> {
        Ok(self.probe_max_diff(w)? / (1.0 + self.probe_max()))
    }

    /// `max |v − w| ≤ tol·(1 + max|v|)` over the probe grid.
    pub fn approx_eq(&self, w: &Self, tol: f64) -> Result<bool> {
        Ok(self.probe_residual(w)? <= tol)
    }

    /// `L²(ℝ × ℤ_m)` pairing `Σ_μ ∫ conj(u) v dx` in closed form.
    pub fn inner(&self, v: &Self) -> Result<Complex64> {
        check_dims(self.m, v.m)?;
        let mut total = ZERO;
        for tu in &self.terms {
            for tv in v.terms.iter().filter(|t| t.mu == tu.mu) {
                let a = 0.5 * (tu.sigma.conj() + tv.sigma);
                let b = tu.c.conj() + tv.c;
                let pu: Vec<Complex64> = tu.poly.iter().map(|p| p.conj()).collect();
                let prod = poly_mul(&pu, &tv.poly);
                let moments = gaussian_moments(a, b, prod.len());
                let poly_part: Complex64 = prod.iter().zip(&moments).map(|(p, mk)| p * mk).sum();
                let prefactor = ((b * b) / (4.0 * a) + tu.log_scale + tv.log_scale).exp()
                    * (Complex64::new(PI, 0.0) / a).sqrt();
                total += prefactor * poly_part;
            }
        }
        Ok(total)
    }
}

fn merge(x: &PolyGaussTerm, y: &PolyGaussTerm) -> PolyGaussTerm {
    let d = x.log_scale.max(y.log_scale);
    let sx = (x.log_scale - d).exp();
    let sy = (y.log_scale - d).exp();
    let len = x.poly.len().max(y.poly.len());
    let poly = (0..len)
        .map(|k| {
            let px = x.poly.get(k).map_or(ZERO, |p| p * sx);
            let py = y.poly.get(k).map_or(ZERO, |p| p * sy);
            pruned_sum(&[px, py])
        })
        .collect();
    PolyGaussTerm {
        poly,
        log_scale: d,
        ..x.clone()
    }
    .normalize()
}

fn poly_mul(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; p.len() + q.len() - 1];
    for (i, pi) in p.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            out[i + j] += pi * qj;
        }
    }
    out
}

/// Normalized moments `∫ x^k e^{−ax²−bx} dx / ∫ e^{−ax²−bx} dx`, `k < count`.
///
/// These are the moments of a (complex) normal law with mean `−b/2a` and
/// variance `1/2a`, obtained from `M_k = mean·M_{k−1} + (k−1)·var·M_{k−2}`.
fn gaussian_moments(a: Complex64, b: Complex64, count: usize) -> Vec<Complex64> {
    let mean = -b / (2.0 * a);
    let var = 1.0 / (2.0 * a);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let next = match k {
            0 => ONE,
            1 => mean,
            _ => mean * out[k - 1] + (k as f64 - 1.0) * var * out[k - 2],
        };
        out.push(next);
    }
    out
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    poly: Vec<Complex64>,
    sigma: Complex64,
    c: Complex64,
    mu: usize,
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    m: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for PolyGaussVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VectorRepr {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|t| TermRepr {
                    poly: t.poly(),
                    sigma: t.sigma,
                    c: t.c,
                    mu: t.mu,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyGaussVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = VectorRepr::deserialize(deserializer)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| PolyGaussTerm::new(t.poly, t.sigma, t.c, t.mu))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        PolyGaussVector::new(repr.m, terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_gaussian(m: usize) -> PolyGaussVector {
        PolyGaussVector::gaussian(m, c(1.0, 0.0), ZERO, 0).unwrap()
    }

    fn sample() -> PolyGaussVector {
        PolyGaussVector::new(
            2,
            vec![
                PolyGaussTerm::new(vec![c(0.5, -0.2), c(1.0, 0.3), c(-0.4, 0.0)], c(1.3, 0.4), c(0.2, -0.7), 0)
                    .unwrap(),
                PolyGaussTerm::new(vec![c(0.0, 1.0), c(0.25, 0.0)], c(0.8, -0.5), c(-0.3, 0.1), 1).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let v = unit_gaussian(2);
        assert_eq!(v.evaluate(0.0, 0).unwrap(), ONE);
        assert!((v.evaluate(1.0, 0).unwrap().re - (-0.5f64).exp()).abs() < 1e-15);
        assert!((v.evaluate(1.0, 0).unwrap().re - 0.606531).abs() < 1e-6);
        assert_eq!(v.evaluate(0.0, 1).unwrap(), ZERO);
        assert!(matches!(v.evaluate(0.0, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn shift_examples() {
        let v = unit_gaussian(1);
        assert_eq!(v.shift(0.0), v);
        assert!((v.shift(1.0).evaluate(1.0, 0).unwrap() - ONE).norm() < 1e-15);
        let x = PolyGaussVector::new(1, vec![PolyGaussTerm::new(vec![ZERO, ONE], c(1.0, 0.0), ZERO, 0).unwrap()])
            .unwrap();
        assert!(x.shift(2.0).evaluate(2.0, 0).unwrap().norm() < 1e-15);
    }

    #[test]
    fn far_shift_keeps_value() {
        let v = sample();
        let far = v.shift(12.0);
        for x in [-1.0, 0.0, 0.7] {
            let expected = v.evaluate(x, 0).unwrap();
            let got = far.evaluate(x + 12.0, 0).unwrap();
            assert!((expected - got).norm() <= 1e-11 * (1.0 + expected.norm()), "{expected} vs {got}");
        }
    }

    #[test]
    fn operations_are_pointwise_exact() {
        let v = sample();
        let beta = c(0.3, 2.0 * PI);
        for mu in 0..2 {
            for x in probe_grid() {
                let base = v.evaluate(x, mu).unwrap();
                let tol = 1e-12 * (1.0 + base.norm());
                let shifted = v.shift(0.75).evaluate(x, mu).unwrap();
                assert!((shifted - v.evaluate(x - 0.75, mu).unwrap()).norm() <= 1e-12 * (1.0 + shifted.norm()));
                let e = v.mul_exp(beta).evaluate(x, mu).unwrap();
                assert!((e - (beta * x).exp() * base).norm() <= 1e-12 * (1.0 + e.norm()));
                let xv = v.mul_x().evaluate(x, mu).unwrap();
                assert!((xv - base * x).norm() <= tol * (1.0 + x.abs()));
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let v = sample();
        let dv = v.differentiate();
        let h = 1e-5;
        for mu in 0..2 {
            for x in probe_grid() {
                let fd = (v.evaluate(x + h, mu).unwrap() - v.evaluate(x - h, mu).unwrap()) / (2.0 * h);
                let exact = dv.evaluate(x, mu).unwrap();
                assert!((fd - exact).norm() < 1e-7, "x={x}: {fd} vs {exact}");
            }
        }
    }

    #[test]
    fn differentiate_examples() {
        let v = unit_gaussian(1);
        let dv = v.differentiate();
        assert_eq!(dv.terms().len(), 1);
        assert_eq!(dv.terms()[0].poly(), vec![ZERO, c(-1.0, 0.0)]);
        assert!(PolyGaussVector::zero(3).differentiate().is_zero());
    }

    #[test]
    fn canonical_zeros() {
        let v = sample();
        assert!(v.sub(&v).unwrap().is_zero());
        let comm = v.mul_x().differentiate().sub(&v.differentiate().mul_x()).unwrap();
        assert!(comm.sub(&v).unwrap().is_zero());
    }

    #[test]
    fn merges_identical_exponents() {
        let g = PolyGaussTerm::gaussian(c(1.0, 0.0), c(0.1, 0.0), 0).unwrap();
        let v = PolyGaussVector::new(1, vec![g.clone(), g]).unwrap();
        assert_eq!(v.terms().len(), 1);
        assert!((v.evaluate(0.0, 0).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            PolyGaussTerm::gaussian(c(-1.0, 0.0), ZERO, 0),
            Err(Error::InvalidSigma(_))
        ));
        let t = PolyGaussTerm::gaussian(c(1.0, 0.0), ZERO, 3).unwrap();
        assert!(PolyGaussVector::new(2, vec![t]).is_err());
        assert!(matches!(
            unit_gaussian(1).approx_eq(&unit_gaussian(2), 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inner_product_closed_form() {
        // ∫ e^{−x²} dx = √π, ∫ x² e^{−x²} dx = √π/2
        let g = PolyGaussVector::gaussian(1, c(1.0, 0.0), ZERO, 0).unwrap();
        assert!((g.inner(&g).unwrap() - c(PI.sqrt(), 0.0)).norm() < 1e-14);
        let xg = g.mul_x();
        assert!((xg.inner(&xg).unwrap() - c(PI.sqrt() / 2.0, 0.0)).norm() < 1e-14);
        // trapezoid oracle for a generic pair
        let u = sample();
        let v = sample().shift(0.3).mul_exp(c(0.0, 1.0));
        let closed = u.inner(&v).unwrap();
        let h = 1e-3;
        let mut quad = ZERO;
        for mu in 0..2 {
            for i in -20000..=20000 {
                let x = i as f64 * h;
                quad += u.evaluate(x, mu).unwrap().conj() * v.evaluate(x, mu).unwrap() * h;
            }
        }
        assert!((closed - quad).norm() < 1e-9, "{closed} vs {quad}");
    }

    #[test]
    fn json_round_trip() {
        let v = sample();
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with("{\"m\":2,\"terms\":[{\"poly\":[["));
        let back: PolyGaussVector = serde_json::from_str(&text).unwrap();
        assert!(v.approx_eq(&back, 1e-14).unwrap());
        let empty: PolyGaussVector = serde_json::from_str(r#"{"m":2,"terms":[]}"#).unwrap();
        assert!(empty.is_zero());
        assert!(serde_json::from_str::<PolyGaussVector>(
            r#"{"m":1,"terms":[{"poly":[[1,0]],"sigma":[-1,0],"c":[0,0],"mu":0}]}"#
        )
        .is_err());
    }
}
