//! Basic modules `E_{n,m}(θ)` (right) and `E′_{k,l}(θ)` (left) realized on
//! `S(ℝ × ℤ_m)`, the endomorphism generators `Z₁, Z₂`, and the bimodule
//! numbers attached to a pair of modules.
//!
//! Generator formulas, with `A = n + mθ`:
//!
//! ```text
//! U₁ f(x, μ) = f(x − A/m, μ − 1)
//! U₂ f(x, μ) = e^{2πi(x − μn/m)} f(x, μ)
//! Z₁ f(x, μ) = f(x − 1/m, μ − a)
//! Z₂ f(x, μ) = e^{2πi(x/A − μ/m)} f(x, μ)
//! ```
//!
//! Left modules use the same formulas with `θ → −θ`.
//!
//! The right action `v·U_j` is the operator `U_j` above, and products act in
//! reading order: `v·(fg) = (v·f)·g`. Consequently
//! `(v·U₁)·U₂ = e^{2πiθ} (v·U₂)·U₁`. The left action composes operators in
//! the usual order.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{bezout, theta_double_prime, theta_prime, BezoutPair, TorusElement};
use crate::error::{Error, Result};
use crate::gaussian::PolyGaussVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

/// Discrete data identifying a basic module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TagRepr")]
pub struct ModuleTag {
    pub n: i64,
    pub m: i64,
    pub theta: f64,
    pub side: Side,
    pub bezout: BezoutPair,
}

#[derive(Deserialize)]
struct TagRepr {
    n: i64,
    m: i64,
    theta: f64,
    side: Side,
    bezout: BezoutPair,
}

impl TryFrom<TagRepr> for ModuleTag {
    type Error = Error;

    fn try_from(r: TagRepr) -> Result<Self> {
        let pair = BezoutPair::new(r.bezout.a, r.bezout.b, r.bezout.n, r.bezout.m)?;
        ModuleTag::new(r.n, r.m, r.theta, r.side)?.with_bezout(pair)
    }
}

impl ModuleTag {
    pub fn new(n: i64, m: i64, theta: f64, side: Side) -> Result<Self> {
        if m <= 0 {
            return Err(Error::InvalidInput(format!("m must be positive, got {m}")));
        }
        let bezout = bezout(n, m)?;
        let tag = Self {
            n,
            m,
            theta,
            side,
            bezout,
        };
        if tag.period() == 0.0 {
            return Err(Error::DegenerateDenominator(match side {
                Side::Right => "n + m·θ",
                Side::Left => "k − l·θ",
            }));
        }
        Ok(tag)
    }

    /// Right module `E_{n,m}(θ)`.
    pub fn right(n: i64, m: i64, theta: f64) -> Result<Self> {
        Self::new(n, m, theta, Side::Right)
    }

    /// Left module `E′_{k,l}(θ)`.
    pub fn left(k: i64, l: i64, theta: f64) -> Result<Self> {
        Self::new(k, l, theta, Side::Left)
    }

    /// Replaces the canonical Bezout pair; `θ′` depends on this choice.
    pub fn with_bezout(mut self, pair: BezoutPair) -> Result<Self> {
        if pair.n != self.n || pair.m != self.m {
            return Err(Error::InvalidInput(format!(
                "Bezout pair is for ({}, {}), module is ({}, {})",
                pair.n, pair.m, self.n, self.m
            )));
        }
        self.bezout = pair;
        Ok(self)
    }

    /// θ as seen by the generator formulas: `θ` on the right, `−θ` on the left.
    pub fn effective_theta(&self) -> f64 {
        match self.side {
            Side::Right => self.theta,
            Side::Left => -self.theta,
        }
    }

    /// `n + mθ` for right modules, `k − lθ` for left modules.
    pub fn period(&self) -> f64 {
        self.n as f64 + self.m as f64 * self.effective_theta()
    }

    pub fn components(&self) -> usize {
        self.m as usize
    }

    /// Parameter `θ′` of the endomorphism torus.
    pub fn theta_prime(&self) -> Result<f64> {
        theta_prime(self.effective_theta(), &self.bezout)
    }

    fn check(&self, v: &PolyGaussVector) -> Result<()> {
        if v.m() != self.components() {
            return Err(Error::DimensionMismatch {
                expected: self.components(),
                found: v.m(),
            });
        }
        Ok(())
    }

    fn require_right(&self) -> Result<()> {
        if self.side != Side::Right {
            return Err(Error::WrongSide("Z₁, Z₂ are defined on right modules"));
        }
        Ok(())
    }
}

fn u1_power(v: &PolyGaussVector, tag: &ModuleTag, power: i64) -> PolyGaussVector {
    if power == 0 {
        return v.clone();
    }
    let step = tag.period() / tag.m as f64;
    v.shift(step * power as f64).rotate_components(power)
}

fn u2_power(v: &PolyGaussVector, tag: &ModuleTag, power: i64) -> PolyGaussVector {
    if power == 0 {
        return v.clone();
    }
    let p = power as f64;
    let (n, m) = (tag.n as f64, tag.m as f64);
    v.mul_exp(Complex64::new(0.0, 2.0 * PI * p))
        .mul_component_phase(|mu| Complex64::from_polar(1.0, -2.0 * PI * p * mu as f64 * n / m))
}

pub fn act_u1(v: &PolyGaussVector, tag: &ModuleTag) -> Result<PolyGaussVector> {
    tag.check(v)?;
    Ok(u1_power(v, tag, 1))
}

pub fn act_u2(v: &PolyGaussVector, tag: &ModuleTag) -> Result<PolyGaussVector> {
    tag.check(v)?;
    Ok(u2_power(v, tag, 1))
}

/// `U₁^power` including negative powers.
pub fn act_u1_pow(v: &PolyGaussVector, tag: &ModuleTag, power: i64) -> Result<PolyGaussVector> {
    tag.check(v)?;
    Ok(u1_power(v, tag, power))
}

pub fn act_u2_pow(v: &PolyGaussVector, tag: &ModuleTag, power: i64) -> Result<PolyGaussVector> {
    tag.check(v)?;
    Ok(u2_power(v, tag, power))
}

pub fn act_z1(v: &PolyGaussVector, tag: &ModuleTag) -> Result<PolyGaussVector> {
    tag.require_right()?;
    tag.check(v)?;
    Ok(v.shift(1.0 / tag.m as f64).rotate_components(tag.bezout.a))
}

pub fn act_z2(v: &PolyGaussVector, tag: &ModuleTag) -> Result<PolyGaussVector> {
    tag.require_right()?;
    tag.check(v)?;
    let m = tag.m as f64;
    Ok(v.mul_exp(Complex64::new(0.0, 2.0 * PI / tag.period()))
        .mul_component_phase(|mu| Complex64::from_polar(1.0, -2.0 * PI * mu as f64 / m)))
}

/// Action of a torus element through Weyl-ordered monomials
/// `U_{(n₁,n₂)} = e^{−πi n₁n₂θ} U₁^{n₁} U₂^{n₂}`.
///
/// Right modules return `v·f`, left modules return `f·v`.
pub fn act_element(f: &TorusElement, v: &PolyGaussVector, tag: &ModuleTag) -> Result<PolyGaussVector> {
    tag.check(v)?;
    let mut terms = Vec::new();
    for ((n1, n2), amp) in f.iter() {
        let phase = Complex64::from_polar(1.0, -PI * (n1 * n2) as f64 * tag.theta);
        let moved = match tag.side {
            Side::Right => u2_power(&u1_power(v, tag, n1), tag, n2),
            Side::Left => u1_power(&u2_power(v, tag, n2), tag, n1),
        };
        terms.extend(moved.scale(amp * phase).terms().iter().cloned());
    }
    PolyGaussVector::new(v.m(), terms)
}

/// Numbers describing `E_{n,m} ⊗ E′_{k,l}` as a `(T_θ′, T_θ″)`-bimodule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BimoduleProfile {
    pub theta_prime: f64,
    pub theta_double_prime: f64,
    #[serde(rename = "M")]
    pub m_total: i64,
    #[serde(rename = "N_prime")]
    pub n_prime: i64,
    #[serde(rename = "N_double_prime")]
    pub n_double_prime: i64,
}

impl BimoduleProfile {
    /// Profile for explicit Bezout pairs `a n − b m = 1` and `c k − d l = 1`,
    /// without the sign assumptions.
    pub fn compute(nm: &BezoutPair, kl: &BezoutPair, theta: f64) -> Result<Self> {
        let (a, b, n, m) = (nm.a, nm.b, nm.n, nm.m);
        let (c, d, k, l) = (kl.a, kl.b, kl.n, kl.m);
        Ok(Self {
            theta_prime: theta_prime(theta, nm)?,
            theta_double_prime: theta_double_prime(theta, kl)?,
            m_total: n * l + m * k,
            n_prime: a * k + b * l,
            n_double_prime: -(c * n + m * d),
        })
    }

    /// Whether `gcd(N′, M) = 1`.
    pub fn is_coprime(&self) -> bool {
        self.n_prime.gcd(&self.m_total) == 1
    }
}

/// Checks `n + mθ > 0` and `k − lθ > 0`.
pub fn check_signs(n: i64, m: i64, k: i64, l: i64, theta: f64) -> Result<()> {
    let a = n as f64 + m as f64 * theta;
    let b = k as f64 - l as f64 * theta;
    if !(a > 0.0) {
        return Err(Error::SignAssumptionViolated(format!("n + m·θ = {a} is not positive")));
    }
    if !(b > 0.0) {
        return Err(Error::SignAssumptionViolated(format!("k − l·θ = {b} is not positive")));
    }
    Ok(())
}

/// Bimodule profile with canonical Bezout pairs, under the standing sign
/// assumptions `n + mθ > 0`, `k − lθ > 0`.
pub fn bimodule_profile(n: i64, m: i64, k: i64, l: i64, theta: f64) -> Result<BimoduleProfile> {
    let nm = bezout(n, m)?;
    let kl = bezout(k, l)?;
    check_signs(n, m, k, l, theta)?;
    BimoduleProfile::compute(&nm, &kl, theta)
}
