//! Products of theta vectors and their expansion in the theta basis of the
//! product module.
//!
//! With a common `τ` the factors have `σ₁ = iτm/A`, `σ₂ = iτl/B`. Then
//! `σ₁Al = σ₂Bm`, which removes `z` from `t` and leaves
//! `ξ = −½σ′z² − (c₁+c₂)Az + K` with `σ′ = (σ₁+σ₂)A² = iτ·AM/B`. Hence
//! `Ξ_{αβ}(z, Δ) = Σ_γ c^γ_{αβ} φ_γ(z, Δ)` with
//! `φ_γ = exp(−½σ′z² − (c₁+c₂)Az) δ^Δ_γ` and `c^γ_{αβ} = Θ(s, t)·e^K`.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{tensor_gaussian_closed, ProductParams};
use crate::connection::ComplexStructure;
use crate::error::{Error, Result};
use crate::gaussian::PolyGaussVector;
use crate::theta::{theta, ThetaParams};

const THETA_EPS: f64 = 1e-16;

/// Shared `τ` and the linear coefficients `c₁`, `c₂` of the two theta bases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolomorphicPair {
    pub tau: Complex64,
    pub c_left: Complex64,
    pub c_right: Complex64,
}

impl HolomorphicPair {
    pub fn new(tau: Complex64, c_left: Complex64, c_right: Complex64) -> Result<Self> {
        if tau.im == 0.0 {
            return Err(Error::RealTau);
        }
        Ok(Self { tau, c_left, c_right })
    }

    /// Both factors carry the connection constants of `cs`.
    pub fn from_structure(cs: &ComplexStructure) -> Self {
        let c = cs.gaussian_c();
        Self {
            tau: cs.tau,
            c_left: c,
            c_right: c,
        }
    }

    /// `σ₁ = iτm/(n+mθ)`.
    pub fn sigma_left(&self, p: &ProductParams) -> Complex64 {
        Complex64::new(0.0, 1.0) * self.tau * p.m as f64 / p.a_len()
    }

    /// `σ₂ = iτl/(k−lθ)`.
    pub fn sigma_right(&self, p: &ProductParams) -> Complex64 {
        Complex64::new(0.0, 1.0) * self.tau * p.l as f64 / p.b_len()
    }

    fn check(&self, p: &ProductParams) -> Result<(Complex64, Complex64)> {
        let (s1, s2) = (self.sigma_left(p), self.sigma_right(p));
        for s in [s1, s2] {
            if !(s.re > 0.0) {
                return Err(Error::NoHolomorphicVectors(s.re));
            }
        }
        Ok((s1, s2))
    }

    /// Theta basis `φ′_α` of the right factor `E_{n,m}`.
    pub fn left_basis(&self, p: &ProductParams) -> Result<Vec<PolyGaussVector>> {
        let (s1, _) = self.check(p)?;
        (0..p.m as usize)
            .map(|a| PolyGaussVector::gaussian(p.m as usize, s1, self.c_left, a))
            .collect()
    }

    /// Theta basis `φ″_β` of the left factor `E′_{k,l}`.
    pub fn right_basis(&self, p: &ProductParams) -> Result<Vec<PolyGaussVector>> {
        let (_, s2) = self.check(p)?;
        (0..p.l as usize)
            .map(|b| PolyGaussVector::gaussian(p.l as usize, s2, self.c_right, b))
            .collect()
    }
}

/// The `M` product theta vectors `φ_γ = exp(−½σ′z² − (c₁+c₂)Az) δ^Δ_γ`.
pub fn product_basis(p: &ProductParams, hp: &HolomorphicPair) -> Result<Vec<PolyGaussVector>> {
    let (s1, s2) = hp.check(p)?;
    let a_len = p.a_len();
    let sigma = (s1 + s2) * a_len * a_len;
    let c = (hp.c_left + hp.c_right) * a_len;
    let mt = p.m_total() as usize;
    (0..mt)
        .map(|gamma| PolyGaussVector::gaussian(mt, sigma, c, gamma))
        .collect()
}

/// `(s, t, K)` behind one structure constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Provenance {
    pub s: Complex64,
    pub t: Complex64,
    #[serde(rename = "K")]
    pub k: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureEntry {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub value: Complex64,
    pub q0: Option<i64>,
    pub provenance: Option<Provenance>,
}

/// `c^γ_{αβ}` over `ℤ_m × ℤ_l × ℤ_M`, stored α-major.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    pub shape: [i64; 3],
    pub entries: Vec<StructureEntry>,
    pub params: ProductParams,
    pub holomorphic: HolomorphicPair,
}

impl StructureConstants {
    pub fn get(&self, alpha: i64, beta: i64, gamma: i64) -> &StructureEntry {
        let [_, l, mt] = self.shape;
        &self.entries[((alpha * l + beta) * mt + gamma) as usize]
    }

    /// `Ξ_{αβ}(z, Δ) = Σ_γ c^γ_{αβ} φ_γ(z, Δ)`.
    pub fn reconstruct(&self, basis: &[PolyGaussVector], alpha: i64, beta: i64, z: f64, delta: i64) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for gamma in 0..self.shape[2] {
            let coef = self.get(alpha, beta, gamma).value;
            if coef != Complex64::new(0.0, 0.0) {
                total += coef * basis[gamma as usize].evaluate(z, delta as usize)?;
            }
        }
        Ok(total)
    }
}

/// Expansion coefficients of `φ′_α ⊗ φ″_β` in the product theta basis.
pub fn structure_constants(p: &ProductParams, hp: &HolomorphicPair) -> Result<StructureConstants> {
    let (s1, s2) = hp.check(p)?;
    let mut entries = Vec::with_capacity((p.m * p.l * p.m_total()) as usize);
    for alpha in 0..p.m {
        for beta in 0..p.l {
            let form = tensor_gaussian_closed(alpha, beta, s1, hp.c_left, s2, hp.c_right, p)?;
            for gamma in 0..p.m_total() {
                let entry = match form.entry(gamma)? {
                    None => StructureEntry {
                        alpha,
                        beta,
                        gamma,
                        value: Complex64::new(0.0, 0.0),
                        q0: None,
                        provenance: None,
                    },
                    Some(e) => {
                        // φ_γ's exponent vanishes at z = 0, so K is ξ(0).
                        let t = e.t_at(0.0);
                        let k = e.xi_at(0.0);
                        let th = theta(&ThetaParams::new(form.s, t)?, THETA_EPS)?;
                        StructureEntry {
                            alpha,
                            beta,
                            gamma,
                            value: th * k.exp(),
                            q0: Some(e.q0),
                            provenance: Some(Provenance { s: form.s, t, k }),
                        }
                    }
                };
                entries.push(entry);
            }
        }
    }
    Ok(StructureConstants {
        shape: [p.m, p.l, p.m_total()],
        entries,
        params: *p,
        holomorphic: *hp,
    })
}

#[derive(Serialize)]
struct EntryRepr {
    alpha: i64,
    beta: i64,
    gamma: i64,
    re: f64,
    im: f64,
    q0: Option<i64>,
}

#[derive(Serialize)]
struct ParamsRepr {
    n: i64,
    m: i64,
    k: i64,
    l: i64,
    theta: f64,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    r: i64,
    #[serde(rename = "M")]
    m_total: i64,
    #[serde(rename = "N_prime")]
    n_prime: i64,
    #[serde(rename = "N_double_prime")]
    n_double_prime: i64,
    theta_prime: f64,
    theta_double_prime: f64,
    tau: Complex64,
    c1: Complex64,
    c2: Complex64,
}

impl Serialize for StructureConstants {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let p = &self.params;
        let entries: Vec<EntryRepr> = self
            .entries
            .iter()
            .map(|e| EntryRepr {
                alpha: e.alpha,
                beta: e.beta,
                gamma: e.gamma,
                re: e.value.re,
                im: e.value.im,
                q0: e.q0,
            })
            .collect();
        let params = ParamsRepr {
            n: p.n,
            m: p.m,
            k: p.k,
            l: p.l,
            theta: p.theta,
            a: p.bezout_nm.a,
            b: p.bezout_nm.b,
            c: p.bezout_kl.a,
            d: p.bezout_kl.b,
            r: p.r,
            m_total: p.profile.m_total,
            n_prime: p.profile.n_prime,
            n_double_prime: p.profile.n_double_prime,
            theta_prime: p.profile.theta_prime,
            theta_double_prime: p.profile.theta_double_prime,
            tau: self.holomorphic.tau,
            c1: self.holomorphic.c_left,
            c2: self.holomorphic.c_right,
        };
        let mut st = serializer.serialize_struct("StructureConstants", 3)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("params", &params)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{tensor_direct, DEFAULT_QMAX};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_sizes_and_support() {
        let p = ProductParams::new(1, 2, 1, 3, 0.2).unwrap();
        let hp = HolomorphicPair::new(c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let basis = product_basis(&p, &hp).unwrap();
        assert_eq!(basis.len(), 5);
        for (gamma, v) in basis.iter().enumerate() {
            assert_eq!(v.terms().len(), 1);
            assert_eq!(v.terms()[0].mu(), gamma);
            assert!(v.terms()[0].sigma().re > 0.0);
        }
        // σ′ = iτ·AM/B
        let expected = c(0.0, 1.0) * hp.tau * p.a_len() * 5.0 / p.b_len();
        assert!((basis[0].terms()[0].sigma() - expected).norm() < 1e-13);
        let wrong = HolomorphicPair::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(matches!(product_basis(&p, &wrong), Err(Error::NoHolomorphicVectors(_))));
    }

    #[test]
    fn ratio_oracle_simple_case() {
        let p = ProductParams::new(1, 1, 1, 1, 0.2).unwrap();
        let hp = HolomorphicPair::new(c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let sc = structure_constants(&p, &hp).unwrap();
        assert_eq!(sc.shape, [1, 1, 2]);
        let basis = product_basis(&p, &hp).unwrap();
        let f = &hp.left_basis(&p).unwrap()[0];
        let g = &hp.right_basis(&p).unwrap()[0];
        for gamma in 0..2 {
            let coef = sc.get(0, 0, gamma).value;
            for z in [0.0, 0.3, 0.7] {
                let direct = tensor_direct(f, g, &p, z, gamma, DEFAULT_QMAX).unwrap();
                let ratio = direct / basis[gamma as usize].evaluate(z, gamma as usize).unwrap();
                assert!((ratio - coef).norm() <= 1e-8 * coef.norm(), "γ={gamma} z={z}: {ratio} vs {coef}");
            }
        }
    }

    #[test]
    fn json_layout() {
        let p = ProductParams::new(1, 1, 1, 1, 0.2).unwrap();
        let hp = HolomorphicPair::new(c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let sc = structure_constants(&p, &hp).unwrap();
        let value = serde_json::to_value(&sc).unwrap();
        assert_eq!(value["shape"], serde_json::json!([1, 1, 2]));
        let e = &value["entries"][1];
        assert_eq!(e["gamma"], 1);
        assert_eq!(e["q0"], 0);
        assert!(e["re"].is_f64() && e["im"].is_f64());
        assert_eq!(value["params"]["M"], 2);
    }
}
