//! Fixed inputs for the benchmarks.

use nctorus::sampling::{random_complex, random_gaussian};
use nctorus::{Complex64, HolomorphicPair, PolyGaussVector, ProductParams, TorusElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// Two torus elements with exactly `terms` monomials each, `terms ≤ 81`.
pub fn torus_pair(terms: usize) -> (TorusElement, TorusElement) {
    let mut rng = rng();
    let mut element = || {
        TorusElement::from_terms((0..terms as i64).map(|i| ((i % 9 - 4, i / 9 - 4), random_complex(&mut rng, 1.0))))
    };
    (element(), element())
}

pub fn product(n: i64, m: i64, k: i64, l: i64) -> ProductParams {
    ProductParams::new(n, m, k, l, 2f64.sqrt() - 1.0).expect("valid module pair")
}

/// Random Gaussians on the two factors of `p`.
pub fn gaussian_pair(p: &ProductParams) -> (PolyGaussVector, PolyGaussVector) {
    let mut rng = rng();
    (
        random_gaussian(&mut rng, p.m as usize, 0),
        random_gaussian(&mut rng, p.l as usize, 0),
    )
}

pub fn holomorphic() -> HolomorphicPair {
    HolomorphicPair::new(Complex64::new(0.0, -1.0), Complex64::new(0.1, 0.0), Complex64::new(0.0, 0.2))
        .expect("non-real tau")
}
