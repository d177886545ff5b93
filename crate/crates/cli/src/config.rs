//! Run configuration: environment overrides, generator choices and generator files.
//!
//! A generator file holds one or more `d x d` Hermitian matrices, each written
//! as `d` consecutive lines of `d` whitespace-separated complex entries such as
//! `1`, `-0.5i`, `0.25-1e-3i`. Blank lines and text after `#` are ignored.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use ucr_core::channel::{gell_mann_matrices, Angles, GeneratorSet};
use ucr_core::{ComplexMatrix, Limits, C64};

use crate::Failure;

pub const STATE_CAP_VAR: &str = "UCR_STATE_CAP";
pub const TOL_VAR: &str = "UCR_TOL";
pub const DEFAULT_TOL: f64 = 1e-9;

/// Settings taken from the environment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub state_cap: usize,
    pub tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            state_cap: Limits::default().state_cap,
            tol: DEFAULT_TOL,
        }
    }
}

impl Settings {
    pub fn from_env() -> Result<Self, Failure> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> Result<Self, Failure> {
        let mut s = Self::default();
        if let Some(v) = get(STATE_CAP_VAR) {
            s.state_cap = v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{STATE_CAP_VAR} must be a positive integer, got {v:?}")))?;
            if s.state_cap == 0 {
                return Err(Failure::Usage(format!("{STATE_CAP_VAR} must be positive")));
            }
        }
        if let Some(v) = get(TOL_VAR) {
            s.tol = v
                .trim()
                .parse()
                .ok()
                .filter(|t: &f64| t.is_finite() && *t > 0.0)
                .ok_or_else(|| Failure::Usage(format!("{TOL_VAR} must be a positive number, got {v:?}")))?;
        }
        Ok(s)
    }

    pub fn limits(&self) -> Limits {
        Limits {
            state_cap: self.state_cap,
            ..Limits::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorChoice {
    GellMann,
    Pauli,
    File(PathBuf),
}

impl FromStr for GeneratorChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "gellmann" | "gell-mann" => GeneratorChoice::GellMann,
            "pauli" => GeneratorChoice::Pauli,
            "" => return Err("empty generator choice".into()),
            path => GeneratorChoice::File(PathBuf::from(path)),
        })
    }
}

impl fmt::Display for GeneratorChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorChoice::GellMann => write!(f, "gellmann"),
            GeneratorChoice::Pauli => write!(f, "pauli"),
            GeneratorChoice::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl GeneratorChoice {
    pub fn load(&self, d: usize, angles: &AnglesArg) -> Result<GeneratorSet, Failure> {
        let generators = match self {
            GeneratorChoice::GellMann => gell_mann_matrices(d),
            GeneratorChoice::Pauli => {
                if d != 2 {
                    return Err(Failure::Usage(format!("the Pauli set needs --d 2, got {d}")));
                }
                gell_mann_matrices(2)
            }
            GeneratorChoice::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                let gens = parse_generator_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                if gens[0].rows() != d {
                    return Err(Failure::Usage(format!(
                        "{} holds {}x{} matrices but --d is {d}",
                        path.display(),
                        gens[0].rows(),
                        gens[0].rows()
                    )));
                }
                gens
            }
        };
        Ok(GeneratorSet::new(generators, angles.to_angles())?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnglesArg {
    Auto,
    List(Vec<f64>),
}

impl AnglesArg {
    pub fn to_angles(&self) -> Angles {
        match self {
            AnglesArg::Auto => Angles::Auto,
            AnglesArg::List(v) => Angles::Explicit(v.clone()),
        }
    }
}

impl FromStr for AnglesArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "auto" {
            return Ok(AnglesArg::Auto);
        }
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad angle {t:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(AnglesArg::List)
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (with optional exponents, `i` alone meaning `1i`).
pub fn parse_complex(token: &str) -> Result<C64, String> {
    let t = token.trim();
    let bad = || format!("bad complex number {token:?}");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not the leading one and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| bad())? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(C64::new(re, im))
}

pub fn parse_generator_file(text: &str) -> Result<Vec<ComplexMatrix>, String> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let row = content
            .split_whitespace()
            .map(parse_complex)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        rows.push(row);
    }
    let d = rows.first().ok_or("no matrices found")?.len();
    if let Some(bad) = rows.iter().position(|r| r.len() != d) {
        return Err(format!("row {} has {} entries, expected {d}", bad + 1, rows[bad].len()));
    }
    if rows.len() % d != 0 {
        return Err(format!("{} rows do not split into {d}x{d} matrices", rows.len()));
    }
    Ok(rows
        .chunks(d)
        .map(|chunk| ComplexMatrix::from_vec(d, d, chunk.concat()))
        .collect())
}
