use std::f64::consts::PI;

use nctorus::sampling::{random_coprime, random_element, random_polygauss};
use nctorus::{act_element, act_u1, act_u2, bimodule_profile, Complex64, ModuleTag, TorusElement};
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn right_action_is_a_module_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let theta: f64 = rng.gen_range(0.0..1.0);
        let (n, m) = random_coprime(&mut rng, 6, 4);
        let tag = ModuleTag::right(n, m, theta).unwrap();
        let v = random_polygauss(&mut rng, m as usize);
        let f = random_element(&mut rng, 3, 2);
        let g = random_element(&mut rng, 3, 2);
        let lhs = act_element(&g, &act_element(&f, &v, &tag).unwrap(), &tag).unwrap();
        let rhs = act_element(&f.mul(&g, theta), &v, &tag).unwrap();
        assert!(lhs.probe_residual(&rhs).unwrap() <= 1e-12);
    }
}

#[test]
fn left_action_is_a_module_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let theta: f64 = rng.gen_range(0.0..1.0);
        let (k, l) = random_coprime(&mut rng, 6, 4);
        let tag = ModuleTag::left(k, l, theta).unwrap();
        let v = random_polygauss(&mut rng, l as usize);
        let f = random_element(&mut rng, 3, 2);
        let g = random_element(&mut rng, 3, 2);
        let lhs = act_element(&f, &act_element(&g, &v, &tag).unwrap(), &tag).unwrap();
        let rhs = act_element(&f.mul(&g, theta), &v, &tag).unwrap();
        assert!(lhs.probe_residual(&rhs).unwrap() <= 1e-12);
    }
}

#[test]
fn weyl_monomial_is_phase_times_ordered_product() {
    let theta = 0.3;
    let tag = ModuleTag::right(1, 2, theta).unwrap();
    let v = random_polygauss(&mut ChaCha8Rng::seed_from_u64(23), 2);
    let lhs = act_element(&TorusElement::monomial((1, 1)), &v, &tag).unwrap();
    let rhs = act_u2(&act_u1(&v, &tag).unwrap(), &tag)
        .unwrap()
        .scale(Complex64::from_polar(1.0, -PI * theta));
    assert!(lhs.probe_residual(&rhs).unwrap() <= 1e-13);
}

#[test]
fn left_module_is_right_module_at_minus_theta() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..20 {
        let theta: f64 = rng.gen_range(0.0..1.0);
        let (k, l) = random_coprime(&mut rng, 6, 5);
        let left = ModuleTag::left(k, l, theta).unwrap();
        let right = ModuleTag::right(k, l, -theta).unwrap();
        let v = random_polygauss(&mut rng, l as usize);
        assert_eq!(act_u1(&v, &left).unwrap(), act_u1(&v, &right).unwrap());
        assert_eq!(act_u2(&v, &left).unwrap(), act_u2(&v, &right).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn product_labels_are_coprime(
        (n, m) in (1i64..30, 1i64..30).prop_filter("coprime", |(n, m)| n.gcd(m) == 1),
        (k, l) in (1i64..30, 1i64..30).prop_filter("coprime", |(k, l)| k.gcd(l) == 1),
        theta in 0.0..0.03f64,
    ) {
        let profile = bimodule_profile(n, m, k, l, theta).unwrap();
        prop_assert_eq!(profile.m_total, n * l + m * k);
        prop_assert_eq!(profile.n_prime.gcd(&profile.m_total), 1);
    }
}
