//! The smooth noncommutative torus `T_θ` restricted to finite Fourier sums,
//! together with the Bezout bookkeeping shared by the module code.
//!
//! Monomials obey `U_n U_k = exp(πi θ (n₁k₂ − n₂k₁)) U_{n+k}`, so that
//! `U₁U₂ = e^{2πiθ} U₂U₁`. The Weyl-ordered monomial is
//! `U_{(n₁,n₂)} = e^{−πi n₁n₂θ} U₁^{n₁} U₂^{n₂}`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lattice index `(n₁, n₂)` of a monomial `U_n`.
pub type Lattice = (i64, i64);

/// One of the two coordinate directions of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    One,
    Two,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::One, Axis::Two];

    /// Component of `n` along this axis.
    pub fn component(self, n: Lattice) -> i64 {
        match self {
            Axis::One => n.0,
            Axis::Two => n.1,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Axis::One),
            2 => Ok(Axis::Two),
            _ => Err(Error::IndexOutOfRange {
                what: "axis",
                value: i as i64,
                bound: 3,
            }),
        }
    }
}

/// Integers with `a·n − b·m = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutPair {
    pub a: i64,
    pub b: i64,
    pub n: i64,
    pub m: i64,
}

impl BezoutPair {
    /// Validating constructor for an explicitly chosen pair.
    pub fn new(a: i64, b: i64, n: i64, m: i64) -> Result<Self> {
        if (a as i128) * (n as i128) - (b as i128) * (m as i128) != 1 {
            return Err(Error::InvalidBezout { a, b, n, m });
        }
        Ok(Self { a, b, n, m })
    }
}

/// Canonical Bezout pair for coprime `(n, m)`.
///
/// For `m ≠ 0` the representative has `1 ≤ a ≤ |m|`; this coincides with
/// `0 ≤ a < |m|` except for `|m| = 1`, where it picks `a = 1`. For `m = 0`
/// (so `n = ±1`) the pair is `(a, b) = (n, 0)`.
pub fn bezout(n: i64, m: i64) -> Result<BezoutPair> {
    if n.gcd(&m) != 1 {
        return Err(Error::NotCoprime(n, m));
    }
    if m == 0 {
        return BezoutPair::new(n, 0, n, m);
    }
    let modulus = m.abs();
    // x·n + y·|m| = 1, so x is the inverse of n modulo |m|.
    let egcd = n.extended_gcd(&modulus);
    let mut a = egcd.x.rem_euclid(modulus);
    if a == 0 {
        a = modulus;
    }
    let numerator = a * n - 1;
    debug_assert_eq!(numerator % m, 0);
    BezoutPair::new(a, numerator / m, n, m)
}

/// `θ′ = (b + aθ)/(n + mθ)`, the parameter of the endomorphism torus of `E_{n,m}`.
pub fn theta_prime(theta: f64, pair: &BezoutPair) -> Result<f64> {
    let den = pair.n as f64 + pair.m as f64 * theta;
    if den == 0.0 {
        return Err(Error::DegenerateDenominator("n + m·θ"));
    }
    Ok((pair.b as f64 + pair.a as f64 * theta) / den)
}

/// `θ″ = −(d − cθ)/(k − lθ)` for a pair `c·k − d·l = 1`.
///
/// The pair is passed in the `(a, b, n, m)` slots as `(c, d, k, l)`.
pub fn theta_double_prime(theta: f64, pair: &BezoutPair) -> Result<f64> {
    let (c, d, k, l) = (pair.a as f64, pair.b as f64, pair.n as f64, pair.m as f64);
    let den = k - l * theta;
    if den == 0.0 {
        return Err(Error::DegenerateDenominator("k − l·θ"));
    }
    Ok(-(d - c * theta) / den)
}

/// Phase `e^{πiθ(n₁k₂ − n₂k₁)}` of the monomial product `U_n U_k`.
pub fn monomial_phase(n: Lattice, k: Lattice, theta: f64) -> Complex64 {
    let cross = (n.0 * k.1 - n.1 * k.0) as f64;
    Complex64::from_polar(1.0, PI * theta * cross)
}

/// Finitely supported element `Σ C_n U_n` of `T_θ`.
///
/// The parameter θ is not stored; products take it explicitly.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TorusElement {
    coeffs: BTreeMap<Lattice, Complex64>,
}

impl TorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial((0, 0))
    }

    pub fn monomial(n: Lattice) -> Self {
        Self::term(n, Complex64::new(1.0, 0.0))
    }

    pub fn term(n: Lattice, amplitude: Complex64) -> Self {
        Self::from_terms([(n, amplitude)])
    }

    /// Builds an element from `(index, amplitude)` pairs; repeated indices add up.
    pub fn from_terms<I: IntoIterator<Item = (Lattice, Complex64)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (n, c) in terms {
            *coeffs.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut out = Self { coeffs };
        out.canonicalize();
        out
    }

    fn canonicalize(&mut self) {
        self.coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
    }

    pub fn coeff(&self, n: Lattice) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Lattice, Complex64)> + '_ {
        self.coeffs.iter().map(|(n, c)| (*n, *c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.iter().map(|(n, c)| (n, c * s)))
    }

    /// Bilinear extension of the monomial rule.
    pub fn mul(&self, other: &Self, theta: f64) -> Self {
        let mut coeffs: BTreeMap<Lattice, Complex64> = BTreeMap::new();
        for (n, cn) in self.iter() {
            for (k, ck) in other.iter() {
                let idx = (n.0 + k.0, n.1 + k.1);
                *coeffs.entry(idx).or_default() += cn * ck * monomial_phase(n, k, theta);
            }
        }
        let mut out = Self { coeffs };
        out.canonicalize();
        out
    }

    /// Antilinear involution fixed by `U_n* = U_{−n}`.
    pub fn involution(&self) -> Self {
        Self::from_terms(self.iter().map(|(n, c)| ((-n.0, -n.1), c.conj())))
    }

    /// Canonical trace `Tr f = C_0`.
    pub fn trace(&self) -> Complex64 {
        self.coeff((0, 0))
    }

    /// `δ_α U_n = 2πi n_α U_n`.
    pub fn derivation(&self, axis: Axis) -> Self {
        Self::from_terms(
            self.iter()
                .map(|(n, c)| (n, c * Complex64::new(0.0, 2.0 * PI * axis.component(n) as f64))),
        )
    }

    /// `Σ |C_n|²`, which equals `Tr(f f*)`.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    /// Largest coefficient-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (n, c) in self.iter() {
            worst = worst.max((c - other.coeff(n)).norm());
        }
        for (n, c) in other.iter() {
            if !self.coeffs.contains_key(&n) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }
}

impl Add for &TorusElement {
    type Output = TorusElement;

    fn add(self, rhs: Self) -> TorusElement {
        TorusElement::from_terms(self.iter().chain(rhs.iter()))
    }
}

impl Sub for &TorusElement {
    type Output = TorusElement;

    fn sub(self, rhs: Self) -> TorusElement {
        TorusElement::from_terms(self.iter().chain(rhs.iter().map(|(n, c)| (n, -c))))
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;

    fn neg(self) -> TorusElement {
        TorusElement::from_terms(self.iter().map(|(n, c)| (n, -c)))
    }
}
