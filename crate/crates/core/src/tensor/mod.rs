//! The tensor product `E_{n,m}(θ) ⊗_{T_θ} E′_{k,l}(θ) → S(ℝ × ℤ_M)`,
//! `M = nl + mk`, given by
//!
//! ```text
//! h(z, Δ) = Σ_q f(Az − (A/m)q + lAΔ/(mM), −q + aΔ) · g(Az + (B/l)q − BΔ/M, q)
//! ```
//!
//! with `A = n + mθ`, `B = k − lθ`.

mod closed;
mod structure;
mod verify;

pub use closed::{tensor_closed_bilinear, tensor_gaussian_closed, ClosedEntry, ProductClosedForm};
pub use structure::{
    product_basis, structure_constants, HolomorphicPair, Provenance, StructureConstants,
    StructureEntry,
};
pub use verify::{
    holomorphic_closure, oracle_equivalence, verify_delta_period, verify_identification,
    verify_z_covariance, combine, ClosureReport, Generator, Residual, Z_PROBES,
};

use num_complex::Complex64;
use num_integer::Integer;

use crate::algebra::{bezout, BezoutPair};
use crate::error::{Error, Result};
use crate::gaussian::PolyGaussVector;
use crate::modules::{check_signs, BimoduleProfile, ModuleTag};

/// Default cap on `|q|` for the direct summation.
pub const DEFAULT_QMAX: i64 = 1 << 14;

/// Relative size of the last shell at which the direct sum stops.
pub const SHELL_TOL: f64 = 1e-13;

const FIRST_SHELL: i64 = 8;

/// Data of a pair `(E_{n,m}(θ), E′_{k,l}(θ))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductParams {
    pub n: i64,
    pub m: i64,
    pub k: i64,
    pub l: i64,
    pub theta: f64,
    pub bezout_nm: BezoutPair,
    pub bezout_kl: BezoutPair,
    pub profile: BimoduleProfile,
    /// `gcd(m, l)`.
    pub r: i64,
}

impl ProductParams {
    /// Parameters with canonical Bezout pairs.
    ///
    /// Only the module invariants are enforced here (`m, l > 0`, coprimality,
    /// `n + mθ ≠ 0`, `k − lθ ≠ 0`, `M ≠ 0`); the sign assumptions needed for
    /// holomorphic vectors are checked by the operations that use them.
    pub fn new(n: i64, m: i64, k: i64, l: i64, theta: f64) -> Result<Self> {
        Self::with_bezout(bezout(n, m)?, bezout(k, l)?, theta)
    }

    pub fn with_bezout(nm: BezoutPair, kl: BezoutPair, theta: f64) -> Result<Self> {
        let (n, m, k, l) = (nm.n, nm.m, kl.n, kl.m);
        ModuleTag::right(n, m, theta)?;
        ModuleTag::left(k, l, theta)?;
        let profile = BimoduleProfile::compute(&nm, &kl, theta)?;
        if profile.m_total == 0 {
            return Err(Error::DegenerateDenominator("n·l + m·k"));
        }
        Ok(Self {
            n,
            m,
            k,
            l,
            theta,
            bezout_nm: nm,
            bezout_kl: kl,
            profile,
            r: m.gcd(&l),
        })
    }

    /// `A = n + mθ`.
    pub fn a_len(&self) -> f64 {
        self.n as f64 + self.m as f64 * self.theta
    }

    /// `B = k − lθ`.
    pub fn b_len(&self) -> f64 {
        self.k as f64 - self.l as f64 * self.theta
    }

    /// `M = nl + mk`, the number of components of the product.
    pub fn m_total(&self) -> i64 {
        self.profile.m_total
    }

    /// Period `ml/r` of the solution set of the congruences in `q`.
    pub fn q_period(&self) -> i64 {
        self.m * self.l / self.r
    }

    pub fn right_tag(&self) -> ModuleTag {
        ModuleTag::right(self.n, self.m, self.theta)
            .and_then(|t| t.with_bezout(self.bezout_nm))
            .expect("validated at construction")
    }

    pub fn left_tag(&self) -> ModuleTag {
        ModuleTag::left(self.k, self.l, self.theta)
            .and_then(|t| t.with_bezout(self.bezout_kl))
            .expect("validated at construction")
    }

    /// `n + mθ > 0` and `k − lθ > 0`.
    pub fn check_signs(&self) -> Result<()> {
        check_signs(self.n, self.m, self.k, self.l, self.theta)
    }

    fn check_delta(&self, delta: i64) -> Result<()> {
        if delta < 0 || delta >= self.m_total() {
            return Err(Error::IndexOutOfRange {
                what: "Δ",
                value: delta,
                bound: self.m_total(),
            });
        }
        Ok(())
    }

    fn check_inputs(&self, f: &PolyGaussVector, g: &PolyGaussVector) -> Result<()> {
        if f.m() != self.m as usize {
            return Err(Error::DimensionMismatch {
                expected: self.m as usize,
                found: f.m(),
            });
        }
        if g.m() != self.l as usize {
            return Err(Error::DimensionMismatch {
                expected: self.l as usize,
                found: g.m(),
            });
        }
        Ok(())
    }
}

/// Smallest `q₀ ≥ 0` with `q₀ ≡ aΔ − α (mod m)` and `q₀ ≡ β (mod l)`, or `None`
/// when `aΔ − α ≢ β (mod r)`.
pub fn crt_q0(alpha: i64, beta: i64, delta: i64, p: &ProductParams) -> Option<i64> {
    let (m, l, r) = (p.m as i128, p.l as i128, p.r as i128);
    let first = (p.bezout_nm.a as i128 * delta as i128 - alpha as i128).rem_euclid(m);
    let second = (beta as i128).rem_euclid(l);
    let gap = second - first;
    if gap.rem_euclid(r) != 0 {
        return None;
    }
    // q = first + m·j with (m/r)·j ≡ gap/r (mod l/r)
    let (mr, lr) = (m / r, l / r);
    let inv = if lr == 1 {
        0
    } else {
        mr.extended_gcd(&lr).x.rem_euclid(lr)
    };
    let j = ((gap / r).rem_euclid(lr) * inv).rem_euclid(lr.max(1));
    let period = m * lr;
    Some((first + m * j).rem_euclid(period) as i64)
}

/// Arguments `(x, μ, y, ν)` of the `q`-th summand.
fn summand_args(p: &ProductParams, z: f64, delta: i64, q: i64) -> (f64, usize, f64, usize) {
    let (a_len, b_len) = (p.a_len(), p.b_len());
    let (m, l, mt) = (p.m as f64, p.l as f64, p.m_total() as f64);
    let (qf, df) = (q as f64, delta as f64);
    let x = a_len * z - a_len / m * qf + l * a_len / (m * mt) * df;
    let y = a_len * z + b_len / l * qf - b_len / mt * df;
    let mu = (-q + p.bezout_nm.a * delta).rem_euclid(p.m) as usize;
    let nu = q.rem_euclid(p.l) as usize;
    (x, mu, y, nu)
}

/// Direct summation for any integer `Δ`, doubling the window until the
/// last shell is below `SHELL_TOL` of the running total.
pub(crate) fn tensor_sum(
    f: &PolyGaussVector,
    g: &PolyGaussVector,
    p: &ProductParams,
    z: f64,
    delta: i64,
    qmax: i64,
) -> Result<Complex64> {
    let term = |q: i64| {
        let (x, mu, y, nu) = summand_args(p, z, delta, q);
        f.eval_unchecked(x, mu) * g.eval_unchecked(y, nu)
    };
    let shell = |from: i64, to: i64| -> Complex64 { (from..=to).map(|q| term(q) + term(-q)).sum() };
    let mut window = FIRST_SHELL.min(qmax.max(1));
    let mut total = term(0) + shell(1, window);
    loop {
        let next = window * 2;
        if next > qmax {
            return Err(Error::NonConvergent(qmax));
        }
        let outer = shell(window + 1, next);
        total += outer;
        window = next;
        if outer.norm() <= SHELL_TOL * total.norm() {
            return Ok(total);
        }
    }
}

/// `h(z, Δ)` by direct summation over `q`, `0 ≤ Δ < M`.
pub fn tensor_direct(
    f: &PolyGaussVector,
    g: &PolyGaussVector,
    p: &ProductParams,
    z: f64,
    delta: i64,
    qmax: i64,
) -> Result<Complex64> {
    p.check_inputs(f, g)?;
    p.check_delta(delta)?;
    tensor_sum(f, g, p, z, delta, qmax)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate_q0(alpha: i64, beta: i64, delta: i64, p: &ProductParams) -> Option<i64> {
        (0..p.q_period()).find(|&q| {
            (q - (p.bezout_nm.a * delta - alpha)).rem_euclid(p.m) == 0 && (q - beta).rem_euclid(p.l) == 0
        })
    }

    #[test]
    fn crt_examples() {
        let p = ProductParams::new(1, 2, 1, 3, 0.2).unwrap();
        assert_eq!(p.bezout_nm.a, 1);
        assert_eq!(crt_q0(0, 1, 0, &p), Some(4));
        let p = ProductParams::new(1, 1, 1, 1, 0.2).unwrap();
        for delta in 0..2 {
            assert_eq!(crt_q0(0, 0, delta, &p), Some(0));
        }
        let p = ProductParams::new(1, 2, 1, 2, 0.2).unwrap();
        assert_eq!(p.r, 2);
        // aΔ − α = 0 at Δ = 0, β = 1: parity obstruction
        assert_eq!(crt_q0(0, 1, 0, &p), None);
    }

    #[test]
    fn crt_matches_enumeration() {
        for &(n, m, k, l) in &[(1, 2, 1, 3), (3, 2, 2, 3), (1, 4, 1, 6), (3, 4, 5, 6), (1, 6, 1, 9), (5, 3, 1, 3)] {
            let p = ProductParams::new(n, m, k, l, 0.01).unwrap();
            for alpha in 0..m {
                for beta in 0..l {
                    for delta in -3..p.m_total() + 3 {
                        assert_eq!(
                            crt_q0(alpha, beta, delta, &p),
                            enumerate_q0(alpha, beta, delta, &p),
                            "({n},{m},{k},{l}) α={alpha} β={beta} Δ={delta}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(matches!(ProductParams::new(2, 4, 1, 3, 0.2), Err(Error::NotCoprime(2, 4))));
        assert!(matches!(
            ProductParams::new(1, 1, 1, 2, 0.5),
            Err(Error::DegenerateDenominator(_))
        ));
        let p = ProductParams::new(1, 2, 1, 3, 0.5).unwrap();
        assert!(matches!(p.check_signs(), Err(Error::SignAssumptionViolated(_))));
    }

    #[test]
    fn direct_sum_basics() {
        let p = ProductParams::new(1, 2, 1, 3, 0.2).unwrap();
        let f = PolyGaussVector::gaussian(2, Complex64::new(1.0, 0.2), Complex64::new(0.1, 0.0), 1).unwrap();
        let g = PolyGaussVector::gaussian(3, Complex64::new(0.8, -0.1), Complex64::new(0.0, 0.3), 2).unwrap();
        let zf = PolyGaussVector::zero(2);
        let zg = PolyGaussVector::zero(3);
        assert_eq!(tensor_direct(&zf, &zg, &p, 0.0, 0, DEFAULT_QMAX).unwrap(), Complex64::new(0.0, 0.0));
        let h = tensor_direct(&f, &g, &p, 0.3, 2, DEFAULT_QMAX).unwrap();
        let h2 = tensor_direct(&f.scale(Complex64::new(2.0, 0.0)), &g, &p, 0.3, 2, DEFAULT_QMAX).unwrap();
        assert!((h2 - 2.0 * h).norm() <= 1e-14 * h.norm());
        assert!(matches!(
            tensor_direct(&f, &g, &p, 0.0, 5, DEFAULT_QMAX),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            tensor_direct(&g, &f, &p, 0.0, 0, DEFAULT_QMAX),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(tensor_direct(&f, &g, &p, 0.0, 0, 4), Err(Error::NonConvergent(4))));
    }
}
