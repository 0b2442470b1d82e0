use nctorus::sampling::random_gaussian;
use nctorus::{
    holomorphic_closure, oracle_equivalence, verify_delta_period, verify_identification, verify_z_covariance,
    Complex64, Error, Generator, HolomorphicPair, ProductParams, DEFAULT_QMAX,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn thetas() -> [f64; 3] {
    [0.2, 2f64.sqrt() - 1.0, 0.5]
}

#[test]
fn balancing_period_and_endomorphism_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for &(n, m, k, l) in &[(1, 1, 1, 1), (1, 2, 1, 3), (1, 1, 1, 2), (3, 2, 2, 3)] {
        for theta in thetas() {
            let p = match ProductParams::new(n, m, k, l, theta) {
                Ok(p) => p,
                Err(Error::DegenerateDenominator(_)) => {
                    // k − lθ = 0: the left module does not exist
                    assert_eq!((k as f64 - l as f64 * theta), 0.0);
                    continue;
                }
                Err(e) => panic!("{e}"),
            };
            let alpha = rng.gen_range(0..m) as usize;
            let beta = rng.gen_range(0..l) as usize;
            let f = random_gaussian(&mut rng, m as usize, alpha);
            let g = random_gaussian(&mut rng, l as usize, beta);
            let label = format!("({n},{m},{k},{l}) θ={theta}");
            for gen in [Generator::U1, Generator::U2] {
                let r = verify_identification(&f, &g, &p, gen, DEFAULT_QMAX).unwrap();
                assert!(r.normalized() <= TOL, "{label} {gen:?}: {r:?}");
            }
            let r = verify_delta_period(&f, &g, &p, DEFAULT_QMAX).unwrap();
            assert!(r.normalized() <= TOL, "{label} period: {r:?}");
            let (r1, r2) = verify_z_covariance(&f, &g, &p, DEFAULT_QMAX).unwrap();
            assert!(r1.normalized() <= TOL, "{label} Z1: {r1:?}");
            assert!(r2.normalized() <= TOL, "{label} Z2: {r2:?}");
        }
    }
}

#[test]
fn closed_form_matches_direct_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let configs = [(1, 1, 1, 1, 0.2), (1, 2, 1, 3, 0.2), (3, 2, 2, 3, 2f64.sqrt() - 1.0), (1, 2, 1, 2, 0.2), (2, 3, 1, 1, 0.3)];
    for i in 0..10 {
        let (n, m, k, l, theta) = configs[i % configs.len()];
        let p = ProductParams::new(n, m, k, l, theta).unwrap();
        let s1 = Complex64::new(rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0));
        let s2 = Complex64::new(rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0));
        let c1 = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let c2 = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let r = oracle_equivalence(&p, s1, c1, s2, c2, DEFAULT_QMAX).unwrap();
        assert!(r.relative() <= 1e-10, "set {i}: {r:?}");
    }
}

#[test]
fn theta_vector_products_close() {
    let sqrt2m1 = 2f64.sqrt() - 1.0;
    for &(n, m, k, l, theta) in &[(1, 1, 1, 1, 0.2), (1, 2, 1, 3, 0.2), (1, 1, 1, 2, sqrt2m1), (3, 2, 2, 3, sqrt2m1), (1, 2, 1, 2, 0.2)] {
        let p = ProductParams::new(n, m, k, l, theta).unwrap();
        for (cl, cr) in [(0.0, 0.0), (0.3, -0.2)] {
            let hp = HolomorphicPair::new(Complex64::new(0.1, -1.0), Complex64::new(cl, 0.1), Complex64::new(cr, 0.0)).unwrap();
            let report = holomorphic_closure(&p, &hp, &[0.0, 0.3, 0.7], DEFAULT_QMAX).unwrap();
            assert_eq!(report.zero_law_violations, 0, "({n},{m},{k},{l})");
            assert!(report.worst() <= 1e-8, "({n},{m},{k},{l}): {report:?}");
        }
    }
}
