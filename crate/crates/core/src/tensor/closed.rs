//! Theta-function form of the product of two Gaussians.
//!
//! For `f = exp(−½σ₁x² − c₁x) δ^μ_α` and `g = exp(−½σ₂y² − c₂y) δ^ν_β` only
//! `q = q₀ + u·ml/r` survive. Writing the arguments as `x = X + P₁u`,
//! `y = Y + P₂u` with `P₁ = −Al/r`, `P₂ = Bm/r` and completing the square in
//! `u` gives `h = Θ(s, t)·exp(ξ)` with
//!
//! ```text
//! s = −(σ₁P₁² + σ₂P₂²)/(2πi)
//! t = −(σ₁XP₁ + c₁P₁ + σ₂YP₂ + c₂P₂)/(2πi)
//! ξ = −½σ₁X² − c₁X − ½σ₂Y² − c₂Y
//! ```
//!
//! `X = Az + x₀(Δ, q₀)` and `Y = Az + y₀(Δ, q₀)` are affine in `z`, so `t` is
//! affine and `ξ` quadratic in `z`; both are tabulated per `Δ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{crt_q0, ProductParams};
use crate::error::{Error, Result};
use crate::gaussian::PolyGaussVector;
use crate::theta::{theta, ThetaParams};

/// Absolute accuracy requested from the theta series.
const THETA_EPS: f64 = 1e-16;

/// Closed form at one `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedEntry {
    pub q0: i64,
    /// Coefficients of `z²`, `z`, `1` in the exponent `ξ`.
    pub xi: [Complex64; 3],
    /// `t = t[0]·z + t[1]`.
    pub t: [Complex64; 2],
}

impl ClosedEntry {
    pub fn xi_at(&self, z: f64) -> Complex64 {
        (self.xi[0] * z + self.xi[1]) * z + self.xi[2]
    }

    pub fn t_at(&self, z: f64) -> Complex64 {
        self.t[0] * z + self.t[1]
    }
}

/// `h_{αβ}(z, Δ) = Θ(s, t(z, Δ))·exp(ξ(z, Δ))`, tabulated over `Δ ∈ [0, M)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductClosedForm {
    pub alpha: i64,
    pub beta: i64,
    pub s: Complex64,
    /// `None` where the congruences in `q` have no solution.
    pub entries: Vec<Option<ClosedEntry>>,
}

impl ProductClosedForm {
    pub fn entry(&self, delta: i64) -> Result<Option<&ClosedEntry>> {
        let bound = self.entries.len() as i64;
        if delta < 0 || delta >= bound {
            return Err(Error::IndexOutOfRange {
                what: "Δ",
                value: delta,
                bound,
            });
        }
        Ok(self.entries[delta as usize].as_ref())
    }

    pub fn evaluate(&self, z: f64, delta: i64) -> Result<Complex64> {
        match self.entry(delta)? {
            None => Ok(Complex64::new(0.0, 0.0)),
            Some(e) => {
                let th = theta(&ThetaParams::new(self.s, e.t_at(z))?, THETA_EPS)?;
                Ok(th * e.xi_at(z).exp())
            }
        }
    }
}

/// Closed form of `h` for `f = e^{−½σ₁x²−c₁x}δ^μ_α`, `g = e^{−½σ₂y²−c₂y}δ^ν_β`.
#[allow(clippy::too_many_arguments)]
pub fn tensor_gaussian_closed(
    alpha: i64,
    beta: i64,
    sigma1: Complex64,
    c1: Complex64,
    sigma2: Complex64,
    c2: Complex64,
    p: &ProductParams,
) -> Result<ProductClosedForm> {
    for sigma in [sigma1, sigma2] {
        if !(sigma.re > 0.0) {
            return Err(Error::InvalidSigma(sigma.re));
        }
    }
    if alpha < 0 || alpha >= p.m {
        return Err(Error::IndexOutOfRange {
            what: "α",
            value: alpha,
            bound: p.m,
        });
    }
    if beta < 0 || beta >= p.l {
        return Err(Error::IndexOutOfRange {
            what: "β",
            value: beta,
            bound: p.l,
        });
    }
    let (a_len, b_len) = (p.a_len(), p.b_len());
    let (m, l, r, mt) = (p.m as f64, p.l as f64, p.r as f64, p.m_total() as f64);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let p1 = -a_len * l / r;
    let p2 = b_len * m / r;
    let s = -(sigma1 * p1 * p1 + sigma2 * p2 * p2) / two_pi_i;

    let entries = (0..p.m_total())
        .map(|delta| {
            crt_q0(alpha, beta, delta, p).map(|q0| {
                let (qf, df) = (q0 as f64, delta as f64);
                let x0 = -a_len / m * qf + l * a_len / (m * mt) * df;
                let y0 = b_len / l * qf - b_len / mt * df;
                let xi = [
                    -0.5 * (sigma1 + sigma2) * a_len * a_len,
                    -a_len * (sigma1 * x0 + c1 + sigma2 * y0 + c2),
                    -0.5 * sigma1 * x0 * x0 - c1 * x0 - 0.5 * sigma2 * y0 * y0 - c2 * y0,
                ];
                let t = [
                    -a_len * (sigma1 * p1 + sigma2 * p2) / two_pi_i,
                    -((sigma1 * x0 + c1) * p1 + (sigma2 * y0 + c2) * p2) / two_pi_i,
                ];
                ClosedEntry { q0, xi, t }
            })
        })
        .collect();

    Ok(ProductClosedForm {
        alpha,
        beta,
        s,
        entries,
    })
}

/// Closed-form `h(z, Δ)` for vectors made of pure Gaussian terms, by
/// bilinearity. `None` if some term has a nonconstant polynomial.
pub fn tensor_closed_bilinear(
    f: &PolyGaussVector,
    g: &PolyGaussVector,
    p: &ProductParams,
    z: f64,
    delta: i64,
) -> Result<Option<Complex64>> {
    p.check_inputs(f, g)?;
    p.check_delta(delta)?;
    if f.max_degree() > 0 || g.max_degree() > 0 {
        return Ok(None);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for tf in f.terms() {
        for tg in g.terms() {
            let form = tensor_gaussian_closed(
                tf.mu() as i64,
                tg.mu() as i64,
                tf.sigma(),
                tf.c(),
                tg.sigma(),
                tg.c(),
                p,
            )?;
            total += tf.poly()[0] * tg.poly()[0] * form.evaluate(z, delta)?;
        }
    }
    Ok(Some(total))
}
