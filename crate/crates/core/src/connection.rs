//! Constant curvature connections on basic modules and their theta vectors.
//!
//! The reference connection is `∇₁ = 2πi·m/(n+mθ)·x`, `∇₂ = 2π·d/dx`; every
//! constant curvature connection differs from it by constants `c₁, c₂`.
//! Its commutator is `[∇₁, ∇₂] = −4π²i·m/(n+mθ)`.
//!
//! Against the module actions the Leibniz rule holds with the rescaled
//! derivations `δ′₁ = δ₁`, `δ′₂ = 2π·δ₂`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Axis, TorusElement};
use crate::error::{Error, Result};
use crate::gaussian::{probe_grid, PolyGaussVector};
use crate::modules::{act_element, ModuleTag};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `∂̄`-connection `λ₁∇₁ + λ₂∇₂` with `λ₁ = τ·λ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StructureRepr")]
pub struct ComplexStructure {
    pub tau: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub lambda2: Complex64,
}

#[derive(Deserialize)]
struct StructureRepr {
    tau: Complex64,
    c1: Complex64,
    c2: Complex64,
    lambda2: Complex64,
}

impl TryFrom<StructureRepr> for ComplexStructure {
    type Error = Error;

    fn try_from(r: StructureRepr) -> Result<Self> {
        ComplexStructure::new(r.tau, r.c1, r.c2)?.with_lambda2(r.lambda2)
    }
}

impl ComplexStructure {
    pub fn new(tau: Complex64, c1: Complex64, c2: Complex64) -> Result<Self> {
        if tau.im == 0.0 {
            return Err(Error::RealTau);
        }
        Ok(Self {
            tau,
            c1,
            c2,
            lambda2: Complex64::new(1.0, 0.0),
        })
    }

    /// Rescales `(λ₁, λ₂)` keeping `τ`; the complex structure is unchanged.
    pub fn with_lambda2(mut self, lambda2: Complex64) -> Result<Self> {
        if lambda2 == ZERO {
            return Err(Error::InvalidInput("λ₂ must be nonzero".into()));
        }
        self.lambda2 = lambda2;
        Ok(self)
    }

    pub fn lambda1(&self) -> Complex64 {
        self.tau * self.lambda2
    }

    /// Linear coefficient `c = (λ₁c₁ + λ₂c₂)/(2πλ₂)` of the theta vectors.
    pub fn gaussian_c(&self) -> Complex64 {
        (self.tau * self.c1 + self.c2) / (2.0 * PI)
    }
}

/// `2π·m/(n+mθ)`: the real factor in `∇₁ = i·K·x`.
fn nabla1_factor(tag: &ModuleTag) -> f64 {
    2.0 * PI * tag.m as f64 / tag.period()
}

fn check(v: &PolyGaussVector, tag: &ModuleTag) -> Result<()> {
    if v.m() != tag.components() {
        return Err(Error::DimensionMismatch {
            expected: tag.components(),
            found: v.m(),
        });
    }
    Ok(())
}

/// `∇₁v = 2πi·m/(n+mθ)·x·v + c₁v`.
pub fn nabla1(v: &PolyGaussVector, tag: &ModuleTag, c1: Complex64) -> Result<PolyGaussVector> {
    check(v, tag)?;
    let k = Complex64::new(0.0, nabla1_factor(tag));
    PolyGaussVector::axpy(k, &v.mul_x(), &v.scale(c1))
}

/// `∇₂v = 2π·v′ + c₂v`.
pub fn nabla2(v: &PolyGaussVector, tag: &ModuleTag, c2: Complex64) -> Result<PolyGaussVector> {
    check(v, tag)?;
    PolyGaussVector::axpy(Complex64::new(2.0 * PI, 0.0), &v.differentiate(), &v.scale(c2))
}

pub fn nabla(v: &PolyGaussVector, tag: &ModuleTag, axis: Axis, c: Complex64) -> Result<PolyGaussVector> {
    match axis {
        Axis::One => nabla1(v, tag, c),
        Axis::Two => nabla2(v, tag, c),
    }
}

/// `κ` with `[∇₁, ∇₂] = κ·1`, namely `−4π²i·m/(n+mθ)`.
pub fn curvature_constant(tag: &ModuleTag) -> Complex64 {
    Complex64::new(0.0, -2.0 * PI * nabla1_factor(tag))
}

/// `[∇₁, ∇₂]v` computed by applying both orders.
pub fn curvature_commutator(
    v: &PolyGaussVector,
    tag: &ModuleTag,
    c1: Complex64,
    c2: Complex64,
) -> Result<PolyGaussVector> {
    let a = nabla1(&nabla2(v, tag, c2)?, tag, c1)?;
    let b = nabla2(&nabla1(v, tag, c1)?, tag, c2)?;
    a.sub(&b)
}

/// Which derivation enters the Leibniz rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivationScale {
    /// `δ′ = diag(1, 2π)·δ`, matching the reference connection.
    Rescaled,
    /// The plain `δ_α U_n = 2πi n_α U_n`.
    Plain,
}

/// Probe-grid maximum of `∇_α(v·f) − (∇_α v)·f − v·(δ′_α f)`.
pub fn leibniz_defect(
    v: &PolyGaussVector,
    f: &TorusElement,
    tag: &ModuleTag,
    axis: Axis,
    c: Complex64,
    scale: DerivationScale,
) -> Result<f64> {
    let mut delta_f = f.derivation(axis);
    if scale == DerivationScale::Rescaled && axis == Axis::Two {
        delta_f = delta_f.scale(Complex64::new(2.0 * PI, 0.0));
    }
    let lhs = nabla(&act_element(f, v, tag)?, tag, axis, c)?;
    let first = act_element(f, &nabla(v, tag, axis, c)?, tag)?;
    let second = act_element(&delta_f, v, tag)?;
    let rhs = first.add(&second)?;
    lhs.probe_max_diff(&rhs)
}

/// The `m` theta vectors `exp(−½σx² − cx) δ^μ_α` with `σ = iτ·m/(n+mθ)`.
pub fn holomorphic_basis(tag: &ModuleTag, cs: &ComplexStructure) -> Result<Vec<PolyGaussVector>> {
    let sigma = Complex64::new(0.0, 1.0) * cs.tau * tag.m as f64 / tag.period();
    if !(sigma.re > 0.0) {
        return Err(Error::NoHolomorphicVectors(sigma.re));
    }
    let c = cs.gaussian_c();
    (0..tag.components())
        .map(|alpha| PolyGaussVector::gaussian(tag.components(), sigma, c, alpha))
        .collect()
}

/// `∇̄v = λ₂(τ∇₁ + ∇₂)v`.
pub fn dbar(v: &PolyGaussVector, tag: &ModuleTag, cs: &ComplexStructure) -> Result<PolyGaussVector> {
    let inner = PolyGaussVector::axpy(cs.tau, &nabla1(v, tag, cs.c1)?, &nabla2(v, tag, cs.c2)?)?;
    Ok(inner.scale(cs.lambda2))
}

/// Probe-grid maximum of `|∇̄v|`; exactly zero for canonical zero `∇̄v`.
pub fn dbar_residual(v: &PolyGaussVector, tag: &ModuleTag, cs: &ComplexStructure) -> Result<f64> {
    let w = dbar(v, tag, cs)?;
    if w.is_zero() {
        return Ok(0.0);
    }
    let mut worst: f64 = 0.0;
    for mu in 0..w.m() {
        for x in probe_grid() {
            worst = worst.max(w.evaluate(x, mu)?.norm());
        }
    }
    Ok(worst)
}

/// `|⟨∇_α u, v⟩ + ⟨u, ∇_α v⟩|`; zero when `c` is purely imaginary.
pub fn anti_hermitian_defect(
    u: &PolyGaussVector,
    v: &PolyGaussVector,
    tag: &ModuleTag,
    axis: Axis,
    c: Complex64,
) -> Result<f64> {
    let left = nabla(u, tag, axis, c)?.inner(v)?;
    let right = u.inner(&nabla(v, tag, axis, c)?)?;
    Ok((left + right).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::PolyGaussTerm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample(m: usize) -> PolyGaussVector {
        let mut terms = vec![
            PolyGaussTerm::new(vec![c(1.0, 0.2), c(-0.3, 0.5), c(0.1, 0.0)], c(1.1, 0.3), c(0.2, -0.4), 0)
                .unwrap(),
        ];
        if m > 1 {
            terms.push(PolyGaussTerm::gaussian(c(0.7, -0.2), c(-0.1, 0.3), m - 1).unwrap());
        }
        PolyGaussVector::new(m, terms).unwrap()
    }

    #[test]
    fn nabla2_on_gaussian() {
        let tag = ModuleTag::right(1, 1, 0.2).unwrap();
        let (sigma, cc) = (c(1.3, 0.2), c(0.4, -0.1));
        let v = PolyGaussVector::gaussian(1, sigma, cc, 0).unwrap();
        let w = nabla2(&v, &tag, c(0.0, 0.0)).unwrap();
        let poly = w.terms()[0].poly();
        assert!((poly[0] - (-2.0 * PI * cc)).norm() < 1e-13);
        assert!((poly[1] - (-2.0 * PI * sigma)).norm() < 1e-13);
    }

    #[test]
    fn nabla1_is_scaled_position() {
        let tag = ModuleTag::right(1, 2, 0.3).unwrap();
        let v = sample(2);
        let w = nabla1(&v, &tag, c(0.0, 0.0)).unwrap();
        let expected = v.mul_x().scale(c(0.0, 2.0 * PI * 2.0 / 1.6));
        assert!(w.approx_eq(&expected, 1e-14).unwrap());
        assert!(nabla1(&PolyGaussVector::zero(2), &tag, c(0.5, 0.0)).unwrap().is_zero());
    }

    #[test]
    fn curvature_examples() {
        let tag = ModuleTag::right(1, 2, 0.5).unwrap();
        assert!((curvature_constant(&tag) - c(0.0, -4.0 * PI * PI)).norm() < 1e-12);
        let v = sample(2);
        let kappa = curvature_constant(&tag);
        for (c1, c2) in [(c(0.0, 0.0), c(0.0, 0.0)), (c(0.3, -1.0), c(2.0, 0.5)), (c(-1.5, 0.0), c(0.0, 0.7))] {
            let comm = curvature_commutator(&v, &tag, c1, c2).unwrap();
            assert!(comm.sub(&v.scale(kappa)).unwrap().is_zero());
        }
        let flipped = ModuleTag::right(1, 2, -0.5 - 1.0).unwrap();
        assert!((curvature_constant(&flipped) + kappa).norm() < 1e-12);
    }

    #[test]
    fn leibniz_examples() {
        let tag = ModuleTag::right(1, 2, 0.3).unwrap();
        let v = sample(2);
        let cc = c(0.2, -0.1);
        let d = leibniz_defect(&v, &TorusElement::one(), &tag, Axis::One, cc, DerivationScale::Rescaled).unwrap();
        assert!(d <= 1e-12);
        let u1 = TorusElement::monomial((1, 0));
        let d = leibniz_defect(&v, &u1, &tag, Axis::One, cc, DerivationScale::Rescaled).unwrap();
        assert!(d <= 1e-10, "{d}");
        let u2 = TorusElement::monomial((0, 1));
        let plain = leibniz_defect(&v, &u2, &tag, Axis::Two, cc, DerivationScale::Plain).unwrap();
        let vu2 = act_element(&u2, &v, &tag).unwrap();
        let predicted = 2.0 * PI * (2.0 * PI - 1.0) * vu2.probe_max();
        assert!((plain - predicted).abs() <= 1e-9 * predicted, "{plain} vs {predicted}");
        let rescaled = leibniz_defect(&v, &u2, &tag, Axis::Two, cc, DerivationScale::Rescaled).unwrap();
        assert!(rescaled <= 1e-10);
    }

    #[test]
    fn holomorphic_basis_example() {
        let tag = ModuleTag::right(1, 2, 0.3).unwrap();
        let cs = ComplexStructure::new(c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let basis = holomorphic_basis(&tag, &cs).unwrap();
        assert_eq!(basis.len(), 2);
        for (alpha, v) in basis.iter().enumerate() {
            let t = &v.terms()[0];
            assert_eq!(t.mu(), alpha);
            assert!((t.sigma() - c(1.25, 0.0)).norm() < 1e-15);
            assert_eq!(t.c(), c(0.0, 0.0));
            assert_eq!(dbar_residual(v, &tag, &cs).unwrap(), 0.0);
        }
        let upper = ComplexStructure::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(matches!(holomorphic_basis(&tag, &upper), Err(Error::NoHolomorphicVectors(_))));
    }

    #[test]
    fn perturbed_vector_is_not_holomorphic() {
        let tag = ModuleTag::right(1, 2, 0.3).unwrap();
        let cs = ComplexStructure::new(c(0.2, -0.8), c(0.1, 0.3), c(-0.4, 0.2)).unwrap();
        let phi = &holomorphic_basis(&tag, &cs).unwrap()[0];
        let t = &phi.terms()[0];
        let off = PolyGaussVector::gaussian(2, t.sigma(), t.c() + 0.1, 0).unwrap();
        let r = dbar_residual(&off, &tag, &cs).unwrap();
        assert!(r > 1e-3);
        let rho = c(-2.0, 3.0);
        let scaled = cs.with_lambda2(rho).unwrap();
        let rs = dbar_residual(&off, &tag, &scaled).unwrap();
        assert!((rs - rho.norm() * r).abs() <= 1e-12 * rs);
        assert_eq!(dbar_residual(phi, &tag, &scaled).unwrap(), 0.0);
    }

    #[test]
    fn anti_hermitian_with_imaginary_constants() {
        let tag = ModuleTag::right(3, 2, 0.41).unwrap();
        let u = sample(2);
        let v = sample(2).shift(0.4).mul_exp(c(0.1, 1.3));
        for axis in Axis::BOTH {
            let d = anti_hermitian_defect(&u, &v, &tag, axis, c(0.0, 0.77)).unwrap();
            assert!(d <= 1e-10, "{axis:?}: {d}");
        }
        let d = anti_hermitian_defect(&u, &u, &tag, Axis::One, c(0.5, 0.0)).unwrap();
        assert!(d > 1e-3);
    }

    #[test]
    fn structure_json() {
        let cs = ComplexStructure::new(c(0.0, -1.0), c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        let text = serde_json::to_string(&cs).unwrap();
        assert_eq!(text, r#"{"tau":[0.0,-1.0],"c1":[0.5,0.0],"c2":[0.0,0.0],"lambda2":[1.0,0.0]}"#);
        assert!(serde_json::from_str::<ComplexStructure>(
            r#"{"tau":[1.0,0.0],"c1":[0,0],"c2":[0,0],"lambda2":[1,0]}"#
        )
        .is_err());
    }
}
