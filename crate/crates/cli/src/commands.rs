use std::path::{Path, PathBuf};

use nctorus::sampling::{random_complex, random_polygauss, random_sigma};
use nctorus::suites::invariant_suites;
use nctorus::{
    bimodule_profile, dbar_residual, holomorphic_basis, holomorphic_closure, oracle_equivalence,
    structure_constants, tensor_closed_bilinear, tensor_direct, verify_delta_period, verify_identification,
    verify_z_covariance, Check, ClosureReport, Complex64, Generator, PolyGaussVector,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::RunConfig;

/// Relative tolerance of the closed form against direct summation.
pub const ORACLE_TOL: f64 = 1e-10;
/// Relative tolerance of the theta-vector closure checks.
pub const CLOSURE_TOL: f64 = 1e-8;
/// `z` values used for closure checks.
pub const CLOSURE_Z: [f64; 3] = [0.0, 0.3, 0.7];

/// Command result before the schema envelope is added.
pub struct Report {
    pub body: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub passed: bool,
}

pub type CmdResult = Result<Report, String>;

fn err(e: nctorus::Error) -> String {
    e.to_string()
}

fn num(v: f64) -> String {
    serde_json::to_string(&v).unwrap_or_else(|_| v.to_string())
}

fn check_rows(checks: &[Check]) -> Vec<Vec<String>> {
    checks
        .iter()
        .map(|c| vec![c.name.clone(), num(c.residual), num(c.tol), c.passed.to_string()])
        .collect()
}

pub fn algebra_check(cfg: &RunConfig) -> CmdResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let checks = invariant_suites(&mut rng).map_err(err)?;
    let passed = checks.iter().all(|c| c.passed);
    Ok(Report {
        body: json!({ "seed": cfg.seed, "checks": checks, "passed": passed }),
        header: vec!["name", "residual", "tol", "passed"],
        rows: check_rows(&checks),
        passed,
    })
}

pub fn theta_basis(cfg: &RunConfig) -> CmdResult {
    let tag = cfg.right_tag().map_err(err)?;
    let cs = cfg.complex_structure().map_err(err)?;
    let basis = holomorphic_basis(&tag, &cs).map_err(err)?;
    let mut vectors = Vec::new();
    let mut rows = Vec::new();
    let mut passed = true;
    for (mu, v) in basis.iter().enumerate() {
        let term = &v.terms()[0];
        let residual = dbar_residual(v, &tag, &cs).map_err(err)?;
        passed &= residual <= cfg.tol;
        vectors.push(json!({
            "mu": mu,
            "sigma": term.sigma(),
            "c": term.c(),
            "dbar_residual": residual,
            "vector": v,
        }));
        rows.push(vec![
            mu.to_string(),
            num(term.sigma().re),
            num(term.sigma().im),
            num(term.c().re),
            num(term.c().im),
            num(residual),
        ]);
    }
    Ok(Report {
        body: json!({
            "module": tag,
            "complex_structure": cs,
            "vectors": vectors,
            "tol": cfg.tol,
            "passed": passed,
        }),
        header: vec!["mu", "sigma_re", "sigma_im", "c_re", "c_im", "dbar_residual"],
        rows,
        passed,
    })
}

fn read_vector(path: &Path) -> Result<PolyGaussVector, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub struct TensorInputs {
    pub z: f64,
    pub delta: i64,
    pub f: Option<PathBuf>,
    pub g: Option<PathBuf>,
    pub alpha: usize,
    pub beta: usize,
}

pub fn tensor(cfg: &RunConfig, input: &TensorInputs) -> CmdResult {
    let p = cfg.product().map_err(err)?;
    let (f, g) = match (&input.f, &input.g) {
        (Some(f), Some(g)) => (read_vector(f)?, read_vector(g)?),
        (None, None) => {
            let hp = cfg.holomorphic_pair().map_err(err)?;
            let lefts = hp.left_basis(&p).map_err(err)?;
            let rights = hp.right_basis(&p).map_err(err)?;
            let f = lefts.get(input.alpha).ok_or(format!("--alpha must be below m = {}", p.m))?;
            let g = rights.get(input.beta).ok_or(format!("--beta must be below l = {}", p.l))?;
            (f.clone(), g.clone())
        }
        _ => return Err("--f and --g must be given together".into()),
    };
    let direct = tensor_direct(&f, &g, &p, input.z, input.delta, cfg.qmax).map_err(err)?;
    let closed = tensor_closed_bilinear(&f, &g, &p, input.z, input.delta).map_err(err)?;
    let abs_diff = closed.map(|c| (c - direct).norm());
    let passed = abs_diff.is_none_or(|d| d <= cfg.tol * (1.0 + direct.norm()));
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    Ok(Report {
        body: json!({
            "z": input.z,
            "delta": input.delta,
            "direct": direct,
            "closed_form": closed,
            "abs_diff": abs_diff,
            "tol": cfg.tol,
            "passed": passed,
        }),
        header: vec!["z", "delta", "direct_re", "direct_im", "closed_re", "closed_im", "abs_diff"],
        rows: vec![vec![
            num(input.z),
            input.delta.to_string(),
            num(direct.re),
            num(direct.im),
            opt(closed.map(|c| c.re)),
            opt(closed.map(|c| c.im)),
            opt(abs_diff),
        ]],
        passed,
    })
}

fn closure_checks(report: &ClosureReport) -> Vec<Check> {
    let n = report.entries;
    vec![
        Check::new("closure_z_independence", report.z_independence, CLOSURE_TOL, n),
        Check::new("closure_ratio_match", report.ratio_match, CLOSURE_TOL, n),
        Check::new("closure_reconstruction", report.reconstruction, CLOSURE_TOL, n),
        Check::new("closure_zero_law", report.zero_law_violations as f64, 0.0, n),
    ]
}

pub fn structure(cfg: &RunConfig) -> CmdResult {
    let p = cfg.product().map_err(err)?;
    bimodule_profile(p.n, p.m, p.k, p.l, p.theta).map_err(err)?;
    let hp = cfg.holomorphic_pair().map_err(err)?;
    let sc = structure_constants(&p, &hp).map_err(err)?;
    let report = holomorphic_closure(&p, &hp, &CLOSURE_Z, cfg.qmax).map_err(err)?;
    let checks = closure_checks(&report);
    let passed = checks.iter().all(|c| c.passed);
    let rows = sc
        .entries
        .iter()
        .map(|e| {
            vec![
                e.alpha.to_string(),
                e.beta.to_string(),
                e.gamma.to_string(),
                num(e.value.re),
                num(e.value.im),
                e.q0.map(|q| q.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Report {
        body: json!({
            "structure_constants": sc,
            "cross_validation": { "z": CLOSURE_Z, "report": report, "checks": checks },
            "passed": passed,
        }),
        header: vec!["alpha", "beta", "gamma", "re", "im", "q0"],
        rows,
        passed,
    })
}

pub fn verify_all(cfg: &RunConfig) -> CmdResult {
    let p = cfg.product().map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let f = random_polygauss(&mut rng, p.m as usize);
    let g = random_polygauss(&mut rng, p.l as usize);
    let grid = nctorus::Z_PROBES.len() * p.m_total() as usize;

    let mut checks = Vec::new();
    for (name, gen) in [("identification_u1", Generator::U1), ("identification_u2", Generator::U2)] {
        let r = verify_identification(&f, &g, &p, gen, cfg.qmax).map_err(err)?;
        checks.push(Check::new(name, r.normalized(), cfg.tol, grid));
    }
    let r = verify_delta_period(&f, &g, &p, cfg.qmax).map_err(err)?;
    checks.push(Check::new("delta_period", r.normalized(), cfg.tol, grid));
    let (r1, r2) = verify_z_covariance(&f, &g, &p, cfg.qmax).map_err(err)?;
    checks.push(Check::new("z1_covariance", r1.normalized(), cfg.tol, grid));
    checks.push(Check::new("z2_covariance", r2.normalized(), cfg.tol, grid));

    let (s1, c1, s2, c2): (Complex64, Complex64, Complex64, Complex64) = (
        random_sigma(&mut rng),
        random_complex(&mut rng, 0.5),
        random_sigma(&mut rng),
        random_complex(&mut rng, 0.5),
    );
    let r = oracle_equivalence(&p, s1, c1, s2, c2, cfg.qmax).map_err(err)?;
    checks.push(Check::new("oracle_equivalence", r.relative(), ORACLE_TOL, grid * (p.m * p.l) as usize));

    let mut skipped = Vec::new();
    let closure = p
        .check_signs()
        .and_then(|_| cfg.holomorphic_pair())
        .and_then(|hp| holomorphic_closure(&p, &hp, &CLOSURE_Z, cfg.qmax));
    match closure {
        Ok(report) => checks.extend(closure_checks(&report)),
        Err(e) => skipped.push(json!({ "name": "holomorphic_closure", "reason": e.to_string() })),
    }

    let passed = checks.iter().all(|c| c.passed);
    let mut rows = check_rows(&checks);
    for s in &skipped {
        rows.push(vec![s["name"].as_str().unwrap_or_default().to_string(), String::new(), String::new(), "skipped".into()]);
    }
    Ok(Report {
        body: json!({
            "params": {
                "n": p.n, "m": p.m, "k": p.k, "l": p.l, "theta": p.theta,
                "M": p.m_total(), "r": p.r, "profile": p.profile,
            },
            "seed": cfg.seed,
            "inputs": { "f": f, "g": g, "oracle": { "sigma1": s1, "c1": c1, "sigma2": s2, "c2": c2 } },
            "checks": checks,
            "skipped": skipped,
            "passed": passed,
        }),
        header: vec!["name", "residual", "tol", "passed"],
        rows,
        passed,
    })
}
