//! File formats: profile/fiber/density CSV, solve-report JSON and the run
//! manifest. Parsers are total functions over arbitrary input — every
//! malformed byte sequence maps to an error, never a panic — and writers
//! emit 17 significant digits so parsing back is exact.

use crate::fields::RadialProfile;
use crate::hopf::FiberCurve;
use crate::solver::SolveReport;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("unexpected header {found:?}, expected {expected:?}")]
    BadHeader { found: String, expected: String },
    #[error("profile needs at least 3 rows, got {0}")]
    TooShort(usize),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Profile(#[from] crate::fields::profile::ProfileError),
    #[error("io: {0}")]
    File(#[from] std::io::Error),
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_field(tok: &str, line: usize) -> Result<f64, IoError> {
    let v: f64 = tok.trim().parse().map_err(|_| IoError::Malformed {
        line,
        msg: format!("not a number: {tok:?}"),
    })?;
    if !v.is_finite() {
        return Err(IoError::Malformed {
            line,
            msg: format!("non-finite value {tok:?}"),
        });
    }
    Ok(v)
}

/// Serialise a profile as `r,f,g` CSV.
pub fn profile_to_csv(prof: &RadialProfile) -> String {
    let mut out = String::from("r,f,g\n");
    for i in 0..prof.radii().len() {
        out.push_str(&fmt17(prof.radii()[i]));
        out.push(',');
        out.push_str(&fmt17(prof.f_nodes()[i]));
        out.push(',');
        out.push_str(&fmt17(prof.g_nodes()[i]));
        out.push('\n');
    }
    out
}

/// Parse a `r,f,g` CSV produced by [`profile_to_csv`] (or any conforming
/// file). Rejects wrong headers, ragged rows, non-finite numbers and
/// non-increasing meshes.
pub fn profile_from_csv(text: &str) -> Result<RadialProfile, IoError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break l,
            None => {
                return Err(IoError::BadHeader {
                    found: String::new(),
                    expected: "r,f,g".into(),
                })
            }
        }
    };
    if header.trim() != "r,f,g" {
        return Err(IoError::BadHeader {
            found: header.trim().into(),
            expected: "r,f,g".into(),
        });
    }
    let mut radii = Vec::new();
    let mut f = Vec::new();
    let mut g = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let (a, b, c) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), Some(c), None) => (a, b, c),
            _ => {
                return Err(IoError::Malformed {
                    line: idx + 1,
                    msg: "expected exactly 3 comma-separated fields".into(),
                })
            }
        };
        radii.push(parse_field(a, idx + 1)?);
        f.push(parse_field(b, idx + 1)?);
        g.push(parse_field(c, idx + 1)?);
    }
    if radii.len() < 3 {
        return Err(IoError::TooShort(radii.len()));
    }
    Ok(RadialProfile::new(radii, f, g)?)
}

/// Serialise a fiber curve as `phi,x1,x2,x3,x4` CSV (one row per sample,
/// closing duplicate included).
pub fn fiber_to_csv(curve: &FiberCurve) -> String {
    let mut out = String::from("phi,x1,x2,x3,x4\n");
    let n = curve.len();
    for (k, q) in curve.samples.iter().enumerate() {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        out.push_str(&fmt17(phi));
        for c in q.0 {
            out.push(',');
            out.push_str(&fmt17(c));
        }
        out.push('\n');
    }
    out
}

/// `r,kinetic,gauge,potential,total` rows for the action density split.
pub fn density_csv(
    prof: &RadialProfile,
    params: &crate::fields::ModelParams,
) -> Result<String, crate::fields::FieldError> {
    let mut out = String::from("r,kinetic,gauge,potential,total\n");
    for &r in prof.radii() {
        let d = if r < crate::fields::R_MIN {
            crate::fields::ActionDensity::default()
        } else {
            crate::fields::action_density_split(r, prof, params)?
        };
        out.push_str(&fmt17(r));
        for v in [d.kinetic, d.gauge, d.potential, d.total()] {
            out.push(',');
            out.push_str(&fmt17(v));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Field samples along a radial ray for external plotting:
/// `x1,x2,x3,x4,phi1,phi2,phi3,A1_1,...,A4_3` (gauge columns ordered by
/// spacetime index μ then adjoint index a).
pub fn field_samples_csv(
    prof: &RadialProfile,
    radii: &[f64],
    direction: &crate::algebra::Point4,
) -> Result<String, crate::fields::FieldError> {
    let mut out = String::from("x1,x2,x3,x4,phi1,phi2,phi3");
    for mu in 1..=4 {
        for a in 1..=3 {
            out.push_str(&format!(",A{mu}_{a}"));
        }
    }
    out.push('\n');
    let n = direction.norm();
    for &r in radii {
        let x = direction.scale(r / n);
        let s = crate::fields::eval_fields(&x, prof)?;
        let mut row: Vec<String> = x.0.iter().map(|&v| fmt17(v)).collect();
        row.extend(s.phi.0.iter().map(|&v| fmt17(v)));
        for mu in 0..4 {
            for a in 0..3 {
                row.push(fmt17(s.a_real[mu].0[a]));
            }
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// JSON view of a solve report (the profile itself travels as CSV).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportDoc {
    pub residual_norm: f64,
    pub iterations: usize,
    pub action: f64,
    pub s_f: f64,
    pub s_g: f64,
    pub tail_slope: f64,
    pub converged: bool,
}

impl ReportDoc {
    pub fn from_report(r: &SolveReport) -> Self {
        ReportDoc {
            residual_norm: r.residual_norm,
            iterations: r.iterations,
            action: r.action,
            s_f: r.s_f,
            s_g: r.s_g,
            tail_slope: r.tail_slope,
            converged: r.converged,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Everything needed to reproduce a run byte for byte (at a fixed worker
/// count): the subcommand, its resolved parameters, file paths, the seed
/// and the tool version.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub seed: u64,
    pub workers: usize,
    pub version: String,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        RunManifest {
            subcommand: subcommand.into(),
            parameters: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            seed: 0,
            workers: 1,
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.parameters.insert(key.into(), value.into());
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.parameters.get(key).and_then(|v| v.as_f64())
    }

    pub fn get_u64(&self, key: &str) -> Option<u64> {
        self.parameters.get(key).and_then(|v| v.as_u64())
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.parameters.get(key).and_then(|v| v.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Parse a comma-separated 3-vector such as `0,0,1`.
pub fn parse_vec3(text: &str) -> Result<[f64; 3], IoError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(IoError::Malformed {
            line: 1,
            msg: format!("expected 3 comma-separated components, got {}", parts.len()),
        });
    }
    let mut out = [0.0; 3];
    for (slot, tok) in out.iter_mut().zip(parts) {
        *slot = parse_field(tok, 1)?;
    }
    Ok(out)
}
