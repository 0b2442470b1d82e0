//! Residual checks showing that the product map respects the balancing
//! relations, the `Δ` period and the endomorphism action, plus the
//! cross-checks of the closed forms against direct summation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{crt_q0, product_basis, structure_constants, tensor_gaussian_closed, tensor_sum, HolomorphicPair, ProductParams};
use crate::error::Result;
use crate::gaussian::PolyGaussVector;
use crate::modules::{act_u1, act_u2, act_z1, act_z2};

/// `z` values of the probe grid; `Δ` runs over `0..M`.
pub const Z_PROBES: [f64; 6] = [-1.0, -0.5, 0.0, 0.3, 0.7, 1.0];

/// Largest deviation together with the largest reference magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Residual {
    pub max_abs: f64,
    pub scale: f64,
}

impl Residual {
    fn record(&mut self, diff: f64, reference: f64) {
        self.max_abs = self.max_abs.max(diff);
        self.scale = self.scale.max(reference);
    }

    fn merge(&mut self, other: Residual) {
        self.max_abs = self.max_abs.max(other.max_abs);
        self.scale = self.scale.max(other.scale);
    }

    /// `max_abs / (1 + scale)`.
    pub fn normalized(&self) -> f64 {
        self.max_abs / (1.0 + self.scale)
    }

    /// `max_abs / scale`, zero when both vanish.
    pub fn relative(&self) -> f64 {
        if self.max_abs == 0.0 {
            0.0
        } else {
            self.max_abs / self.scale
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    U1,
    U2,
}

fn grid(p: &ProductParams) -> impl Iterator<Item = (f64, i64)> + '_ {
    Z_PROBES
        .iter()
        .flat_map(move |&z| (0..p.m_total()).map(move |delta| (z, delta)))
}

/// `h(f·U, g)` against `h(f, U·g)` on the probe grid.
pub fn verify_identification(
    f: &PolyGaussVector,
    g: &PolyGaussVector,
    p: &ProductParams,
    generator: Generator,
    qmax: i64,
) -> Result<Residual> {
    p.check_inputs(f, g)?;
    let (right, left) = (p.right_tag(), p.left_tag());
    let (fu, ug) = match generator {
        Generator::U1 => (act_u1(f, &right)?, act_u1(g, &left)?),
        Generator::U2 => (act_u2(f, &right)?, act_u2(g, &left)?),
    };
    let mut res = Residual::default();
    for (z, delta) in grid(p) {
        let lhs = tensor_sum(&fu, g, p, z, delta, qmax)?;
        let rhs = tensor_sum(f, &ug, p, z, delta, qmax)?;
        res.record((lhs - rhs).norm(), lhs.norm().max(rhs.norm()));
    }
    Ok(res)
}

/// `h(z, Δ + M)` against `h(z, Δ)`.
pub fn verify_delta_period(f: &PolyGaussVector, g: &PolyGaussVector, p: &ProductParams, qmax: i64) -> Result<Residual> {
    p.check_inputs(f, g)?;
    let mt = p.m_total();
    let mut res = Residual::default();
    for (z, delta) in grid(p) {
        let base = tensor_sum(f, g, p, z, delta, qmax)?;
        for shifted in [delta + mt, delta - mt] {
            let h = tensor_sum(f, g, p, z, shifted, qmax)?;
            res.record((h - base).norm(), base.norm().max(h.norm()));
        }
    }
    Ok(res)
}

/// Residuals of `h(Z₁f, g)(z, Δ) = h(f, g)(z − B/(AM), Δ − 1)` and
/// `h(Z₂f, g)(z, Δ) = e^{2πi(z − N′Δ/M)} h(f, g)(z, Δ)`.
pub fn verify_z_covariance(
    f: &PolyGaussVector,
    g: &PolyGaussVector,
    p: &ProductParams,
    qmax: i64,
) -> Result<(Residual, Residual)> {
    p.check_inputs(f, g)?;
    let right = p.right_tag();
    let (z1f, z2f) = (act_z1(f, &right)?, act_z2(f, &right)?);
    let mt = p.m_total() as f64;
    let step = p.b_len() / (p.a_len() * mt);
    let n_prime = p.profile.n_prime as f64;
    let (mut r1, mut r2) = (Residual::default(), Residual::default());
    for (z, delta) in grid(p) {
        let lhs = tensor_sum(&z1f, g, p, z, delta, qmax)?;
        let rhs = tensor_sum(f, g, p, z - step, delta - 1, qmax)?;
        r1.record((lhs - rhs).norm(), lhs.norm().max(rhs.norm()));

        let lhs = tensor_sum(&z2f, g, p, z, delta, qmax)?;
        let phase = Complex64::from_polar(1.0, 2.0 * PI * (z - n_prime * delta as f64 / mt));
        let rhs = phase * tensor_sum(f, g, p, z, delta, qmax)?;
        r2.record((lhs - rhs).norm(), lhs.norm().max(rhs.norm()));
    }
    Ok((r1, r2))
}

/// Closed form against direct summation for every `(α, β)` on the probe grid.
pub fn oracle_equivalence(
    p: &ProductParams,
    sigma1: Complex64,
    c1: Complex64,
    sigma2: Complex64,
    c2: Complex64,
    qmax: i64,
) -> Result<Residual> {
    let mut res = Residual::default();
    for alpha in 0..p.m {
        for beta in 0..p.l {
            let form = tensor_gaussian_closed(alpha, beta, sigma1, c1, sigma2, c2, p)?;
            let f = PolyGaussVector::gaussian(p.m as usize, sigma1, c1, alpha as usize)?;
            let g = PolyGaussVector::gaussian(p.l as usize, sigma2, c2, beta as usize)?;
            for (z, delta) in grid(p) {
                let direct = tensor_sum(&f, &g, p, z, delta, qmax)?;
                let closed = form.evaluate(z, delta)?;
                res.record((direct - closed).norm(), direct.norm());
            }
        }
    }
    Ok(res)
}

/// Outcome of checking that products of theta vectors are theta vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    /// Largest relative spread of `Ξ_{αβ}(z, γ)/φ_γ(z, γ)` over the `z` values.
    pub z_independence: f64,
    /// Largest relative gap between that ratio and `c^γ_{αβ}`.
    pub ratio_match: f64,
    /// Largest relative error of `Σ_γ c^γ_{αβ} φ_γ` against direct values.
    pub reconstruction: f64,
    /// Entries where `c^γ_{αβ} = 0` disagrees with unsolvability.
    pub zero_law_violations: usize,
    pub entries: usize,
}

impl ClosureReport {
    pub fn worst(&self) -> f64 {
        self.z_independence.max(self.ratio_match).max(self.reconstruction)
    }
}

pub fn holomorphic_closure(p: &ProductParams, hp: &HolomorphicPair, zs: &[f64], qmax: i64) -> Result<ClosureReport> {
    let sc = structure_constants(p, hp)?;
    let basis = product_basis(p, hp)?;
    let lefts = hp.left_basis(p)?;
    let rights = hp.right_basis(p)?;
    let zero = Complex64::new(0.0, 0.0);
    let mut report = ClosureReport {
        z_independence: 0.0,
        ratio_match: 0.0,
        reconstruction: 0.0,
        zero_law_violations: 0,
        entries: sc.entries.len(),
    };
    for alpha in 0..p.m {
        for beta in 0..p.l {
            let (f, g) = (&lefts[alpha as usize], &rights[beta as usize]);
            let mut recon = Residual::default();
            for gamma in 0..p.m_total() {
                let coef = sc.get(alpha, beta, gamma).value;
                let solvable = crt_q0(alpha, beta, gamma, p).is_some();
                if (coef == zero) == solvable {
                    report.zero_law_violations += 1;
                }
                let mut first: Option<Complex64> = None;
                for &z in zs {
                    let direct = tensor_sum(f, g, p, z, gamma, qmax)?;
                    if !solvable {
                        if direct != zero {
                            report.zero_law_violations += 1;
                        }
                        continue;
                    }
                    let ratio = direct / basis[gamma as usize].evaluate(z, gamma as usize)?;
                    let anchor = *first.get_or_insert(ratio);
                    report.z_independence = report.z_independence.max((ratio - anchor).norm() / anchor.norm());
                    report.ratio_match = report.ratio_match.max((ratio - coef).norm() / coef.norm());
                }
            }
            for &z in zs {
                for delta in 0..p.m_total() {
                    let direct = tensor_sum(f, g, p, z, delta, qmax)?;
                    let rebuilt = sc.reconstruct(&basis, alpha, beta, z, delta)?;
                    recon.record((rebuilt - direct).norm(), direct.norm());
                }
            }
            report.reconstruction = report.reconstruction.max(recon.relative());
        }
    }
    Ok(report)
}

/// Worst of several residuals.
pub fn combine(residuals: impl IntoIterator<Item = Residual>) -> Residual {
    let mut out = Residual::default();
    for r in residuals {
        out.merge(r);
    }
    out
}
