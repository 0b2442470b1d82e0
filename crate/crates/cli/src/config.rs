use std::path::PathBuf;

use clap::{Args, ValueEnum};
use nctorus::{bezout, BezoutPair, Complex64, ComplexStructure, HolomorphicPair, ModuleTag, ProductParams};

use crate::expr::parse_real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Torus parameter, e.g. `0.2` or `sqrt2-1`.
    #[arg(long, global = true, default_value = "0.2", allow_hyphen_values = true)]
    pub theta: String,
    /// Right module `E_{n,m}` as `n,m`.
    #[arg(long, global = true, default_value = "1,1", allow_hyphen_values = true)]
    pub nm: String,
    /// Left module `E'_{k,l}` as `k,l`.
    #[arg(long, global = true, default_value = "1,1", allow_hyphen_values = true)]
    pub kl: String,
    /// Bezout pair `a,b` with `an − bm = 1`; canonical when omitted.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub ab: Option<String>,
    /// Bezout pair `c,d` with `ck − dl = 1`; canonical when omitted.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub cd: Option<String>,
    /// Complex structure `τ` as `re,im`.
    #[arg(long, global = true, default_value = "0,-1", allow_hyphen_values = true)]
    pub tau: String,
    #[arg(long, global = true, default_value = "0,0", allow_hyphen_values = true)]
    pub c1: String,
    #[arg(long, global = true, default_value = "0,0", allow_hyphen_values = true)]
    pub c2: String,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Cap on `|q|` in direct summation.
    #[arg(long, global = true, default_value_t = 16384)]
    pub qmax: i64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub theta: f64,
    pub nm: (i64, i64),
    pub bezout_nm: BezoutPair,
    pub bezout_kl: BezoutPair,
    pub tau: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub tol: f64,
    pub qmax: i64,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

fn parse_pair(flag: &str, text: &str) -> Result<(i64, i64), String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("--{flag} expects two integers `a,b`, got {text:?}"));
    }
    let parse = |s: &str| s.parse::<i64>().map_err(|_| format!("--{flag}: {s:?} is not an integer"));
    Ok((parse(parts[0])?, parse(parts[1])?))
}

pub fn parse_complex(flag: &str, text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |s: &str| parse_real(s).map_err(|e| format!("--{flag}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(format!("--{flag} expects `re,im`, got {text:?}")),
    }
}

impl RunConfig {
    pub fn from_args(args: &RunArgs) -> Result<Self, String> {
        let theta = parse_real(&args.theta).map_err(|e| format!("--theta: {e}"))?;
        let nm = parse_pair("nm", &args.nm)?;
        let kl = parse_pair("kl", &args.kl)?;
        if nm.1 <= 0 || kl.1 <= 0 {
            return Err("--nm and --kl need a positive second entry (number of components)".into());
        }
        if !(args.tol > 0.0) {
            return Err(format!("--tol must be positive, got {}", args.tol));
        }
        if args.qmax < 1 {
            return Err(format!("--qmax must be at least 1, got {}", args.qmax));
        }
        let pair = |flag: &str, given: &Option<String>, (n, m): (i64, i64)| -> Result<BezoutPair, String> {
            match given {
                None => bezout(n, m).map_err(|e| e.to_string()),
                Some(text) => {
                    let (a, b) = parse_pair(flag, text)?;
                    BezoutPair::new(a, b, n, m).map_err(|e| format!("--{flag}: {e}"))
                }
            }
        };
        Ok(Self {
            theta,
            nm,
            bezout_nm: pair("ab", &args.ab, nm)?,
            bezout_kl: pair("cd", &args.cd, kl)?,
            tau: parse_complex("tau", &args.tau)?,
            c1: parse_complex("c1", &args.c1)?,
            c2: parse_complex("c2", &args.c2)?,
            tol: args.tol,
            qmax: args.qmax,
            seed: args.seed,
            output: args.output.clone(),
            format: args.format,
        })
    }

    pub fn right_tag(&self) -> nctorus::Result<ModuleTag> {
        ModuleTag::right(self.nm.0, self.nm.1, self.theta)?.with_bezout(self.bezout_nm)
    }

    pub fn product(&self) -> nctorus::Result<ProductParams> {
        ProductParams::with_bezout(self.bezout_nm, self.bezout_kl, self.theta)
    }

    /// `τ` with the connection constants `c1`, `c2`.
    pub fn complex_structure(&self) -> nctorus::Result<ComplexStructure> {
        ComplexStructure::new(self.tau, self.c1, self.c2)
    }

    /// `τ` with `c1`, `c2` read as the linear coefficients of the two theta bases.
    pub fn holomorphic_pair(&self) -> nctorus::Result<HolomorphicPair> {
        HolomorphicPair::new(self.tau, self.c1, self.c2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_and_complex() {
        assert_eq!(parse_pair("nm", "3, 2").unwrap(), (3, 2));
        assert!(parse_pair("nm", "3").is_err());
        assert!(parse_pair("nm", "a,2").is_err());
        assert_eq!(parse_complex("tau", "0,-1").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("c1", "0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert!(parse_complex("tau", "1,2,3").is_err());
    }
}
