//! Seeded random inputs for the property suites.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::TorusElement;
use crate::gaussian::{PolyGaussTerm, PolyGaussVector};

/// Complex number with both parts uniform in `[-r, r]`.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// Up to `max_terms` monomials with `|n_i| ≤ radius` and unit-box coefficients.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, max_terms: usize, radius: i64) -> TorusElement {
    let count = rng.gen_range(1..=max_terms);
    TorusElement::from_terms((0..count).map(|_| {
        let n = (rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius));
        (n, random_complex(rng, 1.0))
    }))
}

/// Complex `σ` with `Re σ ∈ [0.5, 1.5]`.
pub fn random_sigma<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(0.5..=1.5), rng.gen_range(-0.5..=0.5))
}

/// Sum of up to three polynomial Gaussians of degree at most two on `m` components.
pub fn random_polygauss<R: Rng + ?Sized>(rng: &mut R, m: usize) -> PolyGaussVector {
    let count = rng.gen_range(1..=3);
    let terms = (0..count)
        .map(|_| {
            let degree = rng.gen_range(0..=2);
            let poly = (0..=degree).map(|_| random_complex(rng, 1.0)).collect();
            let sigma = random_sigma(rng);
            let c = random_complex(rng, 0.5);
            let mu = rng.gen_range(0..m);
            PolyGaussTerm::new(poly, sigma, c, mu).expect("Re σ > 0")
        })
        .collect();
    PolyGaussVector::new(m, terms).expect("μ < m")
}

/// Single Gaussian `exp(−½σx² − cx) δ^μ` with random `σ`, `c`.
pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, m: usize, mu: usize) -> PolyGaussVector {
    let sigma = random_sigma(rng);
    let c = random_complex(rng, 0.5);
    PolyGaussVector::gaussian(m, sigma, c, mu).expect("Re σ > 0")
}

/// Coprime `(n, m)` with `1 ≤ m ≤ max_m`, `1 ≤ n ≤ max_n`.
pub fn random_coprime<R: Rng + ?Sized>(rng: &mut R, max_n: i64, max_m: i64) -> (i64, i64) {
    use num_integer::Integer;
    loop {
        let n = rng.gen_range(1..=max_n);
        let m = rng.gen_range(1..=max_m);
        if n.gcd(&m) == 1 {
            return (n, m);
        }
    }
}
