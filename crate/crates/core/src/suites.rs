//! Randomized invariant suites shared by the command line and the tests.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::algebra::Axis;
use crate::connection::{curvature_commutator, curvature_constant, leibniz_defect, DerivationScale};
use crate::error::Result;
use crate::gaussian::PolyGaussVector;
use crate::modules::{act_u1, act_u2, act_z1, act_z2, ModuleTag};
use crate::sampling::{random_coprime, random_complex, random_element, random_polygauss};

/// One named residual with its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub instances: usize,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, residual: f64, tol: f64, instances: usize) -> Self {
        Self {
            name: name.to_string(),
            residual,
            tol,
            instances,
            passed: residual <= tol,
        }
    }
}

pub const ALGEBRA_TOL: f64 = 1e-12;
pub const MODULE_TOL: f64 = 1e-12;
pub const LEIBNIZ_TOL: f64 = 1e-10;

/// Associativity, `*` reversing products, trace cyclicity and the Leibniz rule
/// of `δ₁, δ₂`, each on `instances` random triples.
pub fn algebra_suite<R: Rng + ?Sized>(rng: &mut R, instances: usize) -> Vec<Check> {
    let (mut assoc, mut inv, mut trace, mut leib) = (0f64, 0f64, 0f64, 0f64);
    for _ in 0..instances {
        let theta: f64 = rng.gen_range(0.0..1.0);
        let f = random_element(rng, 5, 3);
        let g = random_element(rng, 5, 3);
        let h = random_element(rng, 5, 3);
        let fg = f.mul(&g, theta);
        let gf = g.mul(&f, theta);
        assoc = assoc.max(fg.mul(&h, theta).max_abs_diff(&f.mul(&g.mul(&h, theta), theta)));
        inv = inv.max(fg.involution().max_abs_diff(&g.involution().mul(&f.involution(), theta)));
        trace = trace.max((fg.trace() - gf.trace()).norm());
        for axis in Axis::BOTH {
            let lhs = fg.derivation(axis);
            let rhs = &f.derivation(axis).mul(&g, theta) + &f.mul(&g.derivation(axis), theta);
            leib = leib.max(lhs.max_abs_diff(&rhs));
        }
    }
    vec![
        Check::new("associativity", assoc, ALGEBRA_TOL, instances),
        Check::new("involution_antihomomorphism", inv, ALGEBRA_TOL, instances),
        Check::new("trace_cyclicity", trace, ALGEBRA_TOL, instances),
        Check::new("derivation_leibniz", leib, ALGEBRA_TOL, instances),
    ]
}

fn phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// Commutation of `U₁, U₂` and of `Z₁, Z₂` (first named acts first), and
/// `[Z_i, U_j] = 0`, on random vectors for `configs` random `(θ, n, m)`.
pub fn module_suite<R: Rng + ?Sized>(rng: &mut R, configs: usize) -> Result<Vec<Check>> {
    let (mut uu, mut zz, mut zu) = (0f64, 0f64, 0f64);
    for _ in 0..configs {
        let theta: f64 = rng.gen_range(0.0..1.0);
        let (n, m) = random_coprime(rng, 7, 6);
        let tag = ModuleTag::right(n, m, theta)?;
        let theta_prime = tag.theta_prime()?;
        let v = random_polygauss(rng, m as usize);

        let lhs = act_u2(&act_u1(&v, &tag)?, &tag)?;
        let rhs = act_u1(&act_u2(&v, &tag)?, &tag)?.scale(phase(2.0 * PI * theta));
        uu = uu.max(lhs.probe_residual(&rhs)?);

        let lhs = act_z2(&act_z1(&v, &tag)?, &tag)?;
        let rhs = act_z1(&act_z2(&v, &tag)?, &tag)?.scale(phase(-2.0 * PI * theta_prime));
        zz = zz.max(lhs.probe_residual(&rhs)?);

        type Op = fn(&PolyGaussVector, &ModuleTag) -> Result<PolyGaussVector>;
        let zs: [Op; 2] = [act_z1, act_z2];
        let us: [Op; 2] = [act_u1, act_u2];
        for z in zs {
            for u in us {
                let lhs = z(&u(&v, &tag)?, &tag)?;
                let rhs = u(&z(&v, &tag)?, &tag)?;
                zu = zu.max(lhs.probe_residual(&rhs)?);
            }
        }
    }
    Ok(vec![
        Check::new("u_commutation_phase", uu, MODULE_TOL, configs),
        Check::new("z_commutation_phase", zz, MODULE_TOL, configs),
        Check::new("z_u_commute", zu, MODULE_TOL, configs),
    ])
}

/// Curvature of the reference connection and its Leibniz defect with the
/// rescaled derivations, for `configs` random modules and constants.
pub fn connection_suite<R: Rng + ?Sized>(rng: &mut R, configs: usize) -> Result<Vec<Check>> {
    let (mut curv, mut leib) = (0f64, 0f64);
    for _ in 0..configs {
        let theta: f64 = rng.gen_range(0.0..1.0);
        let (n, m) = random_coprime(rng, 5, 4);
        let tag = ModuleTag::right(n, m, theta)?;
        let v = random_polygauss(rng, m as usize);
        let (c1, c2) = (random_complex(rng, 1.0), random_complex(rng, 1.0));
        let comm = curvature_commutator(&v, &tag, c1, c2)?;
        let diff = comm.sub(&v.scale(curvature_constant(&tag)))?;
        if !diff.is_zero() {
            curv = curv.max(diff.probe_max().max(f64::MIN_POSITIVE));
        }
        let f = random_element(rng, 3, 2);
        for (axis, c) in [(Axis::One, c1), (Axis::Two, c2)] {
            leib = leib.max(leibniz_defect(&v, &f, &tag, axis, c, DerivationScale::Rescaled)?);
        }
    }
    Ok(vec![
        Check::new("curvature_canonical_zero", curv, 0.0, configs),
        Check::new("connection_leibniz", leib, LEIBNIZ_TOL, configs),
    ])
}

/// All invariant suites of the algebra and module layers.
pub fn invariant_suites<R: Rng + ?Sized>(rng: &mut R) -> Result<Vec<Check>> {
    let mut checks = algebra_suite(rng, 200);
    checks.extend(module_suite(rng, 20)?);
    checks.extend(connection_suite(rng, 20)?);
    Ok(checks)
}

