//! Flat `key=value` configuration files and parameter resolution.
//!
//! ```text
//! # Fig. 5 operating point
//! delta = 40.27
//! J = 20
//! omegaD = 4
//! ```
//!
//! Blank lines and everything after `#` are ignored. Keys are the camelCase
//! names of [`SystemParams`] fields. Precedence is command-line flags over
//! file keys over built-in defaults.

use std::path::Path;

use blockade_core::model::SystemParams;

use crate::error::{AppError, Result};

/// Recognised configuration keys.
pub const KEYS: [&str; 10] =
    ["delta", "g", "phiZ", "J", "omegaP", "omegaD", "gammaGE", "gammaSE", "gammaGS", "fockCutoff"];

/// Splits a configuration text into `(key, value)` pairs, in order.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| AppError::config(format!("line {}", lineno + 1), "expected `key=value`"))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(AppError::config(key, "unknown key"));
        }
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|e| AppError::config(key, format!("`{value}`: {e}")))
}

/// Sets one field from its textual value.
pub fn apply_setting(p: &mut SystemParams, key: &str, value: &str) -> Result<()> {
    match key {
        "delta" => p.delta = parse_f64(key, value)?,
        "g" => p.g = parse_f64(key, value)?,
        "phiZ" => p.phi_z = parse_f64(key, value)?,
        "J" => p.j = parse_f64(key, value)?,
        "omegaP" => p.omega_p = parse_f64(key, value)?,
        "omegaD" => p.omega_d = parse_f64(key, value)?,
        "gammaGE" => p.gamma_ge = parse_f64(key, value)?,
        "gammaSE" => p.gamma_se = parse_f64(key, value)?,
        "gammaGS" => p.gamma_gs = parse_f64(key, value)?,
        "fockCutoff" => p.fock_cutoff = value.parse().map_err(|e| AppError::config(key, format!("`{value}`: {e}")))?,
        _ => return Err(AppError::config(key, "unknown key")),
    }
    Ok(())
}

/// Optional per-field overrides, as given on the command line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub delta: Option<f64>,
    pub g: Option<f64>,
    pub phi_z: Option<f64>,
    pub j: Option<f64>,
    pub omega_p: Option<f64>,
    pub omega_d: Option<f64>,
    pub gamma_ge: Option<f64>,
    pub gamma_se: Option<f64>,
    pub gamma_gs: Option<f64>,
    pub fock_cutoff: Option<usize>,
}

impl Overrides {
    pub fn apply(&self, p: &mut SystemParams) {
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut p.delta, self.delta);
        set(&mut p.g, self.g);
        set(&mut p.phi_z, self.phi_z);
        set(&mut p.j, self.j);
        set(&mut p.omega_p, self.omega_p);
        set(&mut p.omega_d, self.omega_d);
        set(&mut p.gamma_ge, self.gamma_ge);
        set(&mut p.gamma_se, self.gamma_se);
        set(&mut p.gamma_gs, self.gamma_gs);
        if let Some(n) = self.fock_cutoff {
            p.fock_cutoff = n;
        }
    }
}

/// Validates parameters, naming the offending key on failure.
pub fn validate(p: &SystemParams) -> Result<()> {
    p.validate().map_err(|e| match e {
        blockade_core::Error::InvalidParameter { name, reason } => AppError::config(name, reason),
        blockade_core::Error::CutoffTooSmall { cutoff, min } => {
            AppError::config("fockCutoff", format!("{cutoff} is below the minimum {min}"))
        }
        other => AppError::Core(other),
    })
}

/// `defaults`, then the file (if any), then `flags`; validated.
pub fn resolve(defaults: SystemParams, file: Option<&Path>, flags: &Overrides) -> Result<SystemParams> {
    let mut p = defaults;
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
        for (k, v) in parse_config(&text)? {
            apply_setting(&mut p, &k, &v)?;
        }
    }
    flags.apply(&mut p);
    validate(&p)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# header\n\ndelta = 40.27  # peak\nJ=20\n";
        let kv = parse_config(text).unwrap();
        assert_eq!(kv, vec![("delta".into(), "40.27".into()), ("J".into(), "20".into())]);
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse_config("omega=3").unwrap_err();
        assert!(err.to_string().contains("`omega`"));
    }

    #[test]
    fn bad_value_is_named() {
        let mut p = SystemParams::default();
        let err = apply_setting(&mut p, "omegaD", "strong").unwrap_err();
        assert!(err.to_string().contains("omegaD"));
    }

    #[test]
    fn flags_override_file_override_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "J = 7\nomegaD = 4\nfockCutoff = 3\n").unwrap();
        let flags = Overrides { j: Some(14.5), ..Default::default() };
        let p = resolve(SystemParams::default(), Some(&path), &flags).unwrap();
        assert_eq!(p.j, 14.5);
        assert_eq!(p.omega_d, 4.0);
        assert_eq!(p.fock_cutoff, 3);
        assert_eq!(p.g, 20.0);
    }

    #[test]
    fn invalid_value_rejected_after_merge() {
        let flags = Overrides { gamma_ge: Some(-1.0), ..Default::default() };
        let err = resolve(SystemParams::default(), None, &flags).unwrap_err();
        assert!(err.to_string().contains("gammaGE"));
        let flags = Overrides { fock_cutoff: Some(1), ..Default::default() };
        assert!(resolve(SystemParams::default(), None, &flags).unwrap_err().to_string().contains("fockCutoff"));
    }
}
