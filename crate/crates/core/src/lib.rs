//! Noncommutative two-torus `T_θ`, its basic projective modules realized on
//! `S(ℝ × ℤ_m)`, constant curvature connections, theta vectors, and the
//! tensor product of theta vectors expressed through theta functions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod connection;
pub mod error;
pub mod gaussian;
pub mod modules;
pub mod sampling;
pub mod suites;
pub mod tensor;
pub mod theta;

pub use num_complex::Complex64;

pub use algebra::{bezout, monomial_phase, theta_double_prime, theta_prime, Axis, BezoutPair, Lattice, TorusElement};
pub use connection::{
    anti_hermitian_defect, curvature_commutator, curvature_constant, dbar, dbar_residual, holomorphic_basis,
    leibniz_defect, nabla, nabla1, nabla2, ComplexStructure, DerivationScale,
};
pub use error::{Error, Result};
pub use gaussian::{probe_grid, PolyGaussTerm, PolyGaussVector};
pub use modules::{
    act_element, act_u1, act_u1_pow, act_u2, act_u2_pow, act_z1, act_z2, bimodule_profile, check_signs,
    BimoduleProfile, ModuleTag, Side,
};
pub use suites::Check;
pub use tensor::{
    crt_q0, holomorphic_closure, oracle_equivalence, product_basis, structure_constants, tensor_closed_bilinear,
    tensor_direct, tensor_gaussian_closed, verify_delta_period, verify_identification, verify_z_covariance,
    ClosedEntry, ClosureReport, Generator, HolomorphicPair, ProductClosedForm, ProductParams, Residual,
    StructureConstants, StructureEntry, DEFAULT_QMAX, Z_PROBES,
};
pub use theta::{theta, theta_truncated, truncation_radius, ThetaParams};
