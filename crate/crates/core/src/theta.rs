//! Classical theta function `Θ(s, t) = Σ_u exp(πi s u² + 2πi t u)`, `Im s > 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaParams {
    s: Complex64,
    t: Complex64,
}

impl ThetaParams {
    pub fn new(s: Complex64, t: Complex64) -> Result<Self> {
        if !(s.im > 0.0) {
            return Err(Error::InvalidS(s.im));
        }
        Ok(Self { s, t })
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn t(&self) -> Complex64 {
        self.t
    }
}

/// Majorant `2·Σ_{u>radius} e^{−π Im(s) u² + 2π|Im t| u}` of the neglected terms,
/// valid once the terms are decreasing past `radius`.
pub fn tail_bound(p: &ThetaParams, radius: u64) -> f64 {
    let a = PI * p.s.im;
    let b = 2.0 * PI * p.t.im.abs();
    let u = radius as f64 + 1.0;
    let first = (-a * u * u + b * u).exp();
    let ratio = (-a * (2.0 * u + 1.0) + b).exp();
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    2.0 * first / (1.0 - ratio)
}

/// Smallest radius whose tail bound is below `eps`.
pub fn truncation_radius(p: &ThetaParams, eps: f64) -> Result<u64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!("eps must be positive, got {eps}")));
    }
    // Terms decrease for u > (b/a − 1)/2.
    let a = PI * p.s.im;
    let b = 2.0 * PI * p.t.im.abs();
    let mut radius = ((b / a - 1.0) / 2.0).max(0.0).ceil() as u64;
    while tail_bound(p, radius) >= eps {
        radius += 1;
    }
    Ok(radius)
}

/// Compensated complex accumulator.
#[derive(Default)]
struct Neumaier {
    sum: Complex64,
    comp: Complex64,
}

impl Neumaier {
    fn add(&mut self, x: Complex64) {
        self.sum = Complex64::new(
            neumaier_step(self.sum.re, x.re, &mut self.comp.re),
            neumaier_step(self.sum.im, x.im, &mut self.comp.im),
        );
    }

    fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier_step(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}

/// Sum over `|u| ≤ radius` in the order `0, ±1, ±2, …`.
pub fn theta_truncated(p: &ThetaParams, radius: u64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let term = |u: f64| (i * PI * p.s * u * u + 2.0 * i * PI * p.t * u).exp();
    let mut acc = Neumaier::default();
    acc.add(term(0.0));
    for u in 1..=radius {
        let u = u as f64;
        acc.add(term(u) + term(-u));
    }
    acc.value()
}

/// `Θ(s, t)` to within `eps` of the infinite sum.
pub fn theta(p: &ThetaParams, eps: f64) -> Result<Complex64> {
    let radius = truncation_radius(p, eps)?;
    Ok(theta_truncated(p, radius))
}
