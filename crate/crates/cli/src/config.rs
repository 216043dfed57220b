//! Scenario configuration: a flat `key = value` file plus overrides.
//!
//! Later sources win: defaults, then the file, then `TAUSPINOR_OUT` (output
//! directory only), then command-line flags.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Serialize;
use tauspinor::kinematics::Sign;
use tauspinor::solver::{grid_bin, FieldDims};
use thiserror::Error;

pub const OUT_ENV: &str = "TAUSPINOR_OUT";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown config key `{0}` (known keys: {known})", known = KEYS.join(", "))]
    UnknownKey(String),
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("invalid value {value:?} for `{key}`: {reason}")]
    Value { key: String, value: String, reason: String },
    #[error("`{key}`: {constraint}")]
    Invariant { key: &'static str, constraint: String },
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
}

/// Which energy branch(es) a packet carries. Serialized as it is written in
/// config files: `+1`, `-1` or `both`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "both")]
    Both,
}

fn sign_as_int<S: serde::Serializer>(s: &Sign, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_i8(if *s == Sign::Plus { 1 } else { -1 })
}

impl Branch {
    pub fn sign(self) -> Option<Sign> {
        match self {
            Branch::Plus => Some(Sign::Plus),
            Branch::Minus => Some(Sign::Minus),
            Branch::Both => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Option<String>,
    pub nx: usize,
    pub ntau: usize,
    pub lx: f64,
    pub ltau: f64,
    pub k0: f64,
    pub kappa0: f64,
    /// Packet width in x (density standard deviation).
    pub sigma_x: f64,
    /// Gaussian width in τ for the τ-profile scenarios.
    pub sigma_tau: f64,
    pub branch: Branch,
    #[serde(serialize_with = "sign_as_int")]
    pub helicity: Sign,
    /// Classical speed for the timeline scenario, along +x.
    pub velocity: f64,
    pub t_final: f64,
    pub n_snapshots: usize,
    /// Step for finite-difference diagnostics (Ehrenfest slope).
    pub dt: f64,
    pub seed: u64,
    pub out: PathBuf,
    /// Replaces every claim tolerance in `verify` when set.
    pub tolerance: Option<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: None,
            nx: 256,
            ntau: 64,
            lx: 64.0,
            ltau: 16.0,
            k0: PI / 4.0,
            kappa0: PI / 2.0,
            sigma_x: 2.0,
            sigma_tau: 0.8,
            branch: Branch::Plus,
            helicity: Sign::Plus,
            velocity: 0.6,
            t_final: 10.0,
            n_snapshots: 11,
            dt: 1e-3,
            seed: 0,
            out: PathBuf::from("out"),
            tolerance: None,
        }
    }
}

pub const KEYS: &[&str] = &[
    "scenario", "nx", "ntau", "lx", "ltau", "k0", "kappa0", "sigma_x", "sigma_tau", "branch",
    "helicity", "velocity", "t_final", "n_snapshots", "dt", "seed", "out", "tolerance",
];

/// Reals may be written as multiples of π: `pi`, `-pi/4`, `0.5pi`, `3pi/8`.
fn parse_real(text: &str) -> Option<f64> {
    let t = text.trim();
    if let Some(idx) = t.find("pi") {
        let (coef, rest) = (&t[..idx], &t[idx + 2..]);
        let c = match coef.trim_end_matches('*') {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse::<f64>().ok()?,
        };
        let d = match rest {
            "" => 1.0,
            r => r.strip_prefix('/')?.parse::<f64>().ok()?,
        };
        return Some(c * PI / d);
    }
    t.parse::<f64>().ok()
}

impl ScenarioConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = |reason: &str| ConfigError::Value {
            key: key.to_string(),
            value: value.to_string(),
            reason: reason.to_string(),
        };
        let real = || parse_real(value).ok_or_else(|| bad("expected a number"));
        let uint = || value.trim().parse::<usize>().map_err(|_| bad("expected a non-negative integer"));
        let sign = || match value.trim() {
            "+1" | "1" | "+" | "plus" => Ok(Sign::Plus),
            "-1" | "-" | "minus" => Ok(Sign::Minus),
            _ => Err(bad("expected +1 or -1")),
        };
        match key {
            "scenario" => self.scenario = Some(value.trim().to_string()),
            "nx" => self.nx = uint()?,
            "ntau" => self.ntau = uint()?,
            "lx" => self.lx = real()?,
            "ltau" => self.ltau = real()?,
            "k0" => self.k0 = real()?,
            "kappa0" => self.kappa0 = real()?,
            "sigma_x" => self.sigma_x = real()?,
            "sigma_tau" => self.sigma_tau = real()?,
            "branch" => {
                self.branch = match value.trim() {
                    "both" => Branch::Both,
                    _ => match sign().map_err(|_| bad("expected +1, -1 or both"))? {
                        Sign::Plus => Branch::Plus,
                        Sign::Minus => Branch::Minus,
                    },
                }
            }
            "helicity" => self.helicity = sign()?,
            "velocity" => self.velocity = real()?,
            "t_final" => self.t_final = real()?,
            "n_snapshots" => self.n_snapshots = uint()?,
            "dt" => self.dt = real()?,
            "seed" => self.seed = value.trim().parse().map_err(|_| bad("expected an unsigned 64-bit integer"))?,
            "out" => self.out = PathBuf::from(value.trim()),
            "tolerance" => self.tolerance = Some(real()?),
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Applies every `key = value` line of `text`. Blank lines and `#`
    /// comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line: i + 1, text: raw.to_string() })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn dims(&self) -> FieldDims {
        FieldDims { nx: self.nx, ntau: self.ntau, lx: self.lx, ltau: self.ltau }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |key, constraint: &str| Err(ConfigError::Invariant { key, constraint: constraint.to_string() });
        for (key, n) in [("nx", self.nx), ("ntau", self.ntau)] {
            if !n.is_power_of_two() {
                return fail(key, &format!("grid size must be a power of two, got {n}"));
            }
            if n < 4 {
                return fail(key, &format!("grid size must be at least 4, got {n}"));
            }
        }
        for (key, v) in [("lx", self.lx), ("ltau", self.ltau), ("sigma_x", self.sigma_x), ("sigma_tau", self.sigma_tau), ("dt", self.dt)] {
            if !(v.is_finite() && v > 0.0) {
                return fail(key, &format!("must be positive and finite, got {v}"));
            }
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return fail("t_final", &format!("must be >= 0, got {}", self.t_final));
        }
        if self.n_snapshots < 1 {
            return fail("n_snapshots", "must be at least 1");
        }
        if !(self.velocity.abs() < 1.0) {
            return fail("velocity", &format!("speed must be below 1, got {}", self.velocity));
        }
        if grid_bin(self.k0, self.nx, self.lx).is_none() {
            return fail("k0", &format!("{} is not a multiple of 2pi/lx inside the x grid", self.k0));
        }
        if grid_bin(self.kappa0, self.ntau, self.ltau).is_none() {
            return fail("kappa0", &format!("{} is not a multiple of 2pi/ltau inside the tau grid", self.kappa0));
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0) {
                return fail("tolerance", &format!("must be >= 0, got {t}"));
            }
        }
        Ok(())
    }
}

/// Everything that feeds a [`ScenarioConfig`], in increasing precedence.
#[derive(Debug, Default, Clone)]
pub struct Sources<'a> {
    pub file: Option<&'a Path>,
    pub env_out: Option<String>,
    pub overrides: Vec<(String, String)>,
}

pub fn parse_config(sources: &Sources) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg = ScenarioConfig::default();
    if let Some(path) = sources.file {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
        cfg.apply_text(&text)?;
    }
    if let Some(out) = sources.env_out.as_deref().filter(|s| !s.is_empty()) {
        cfg.out = PathBuf::from(out);
    }
    for (k, v) in &sources.overrides {
        cfg.set(k, v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Splits a `key=value` flag argument.
pub fn split_override(arg: &str) -> Result<(String, String), String> {
    arg.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected KEY=VALUE, got {arg:?}"))
}

/// Flat view of the config for manifests.
pub fn as_map(cfg: &ScenarioConfig) -> BTreeMap<String, serde_json::Value> {
    match serde_json::to_value(cfg) {
        Ok(serde_json::Value::Object(m)) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_text(text: &str) -> Result<ScenarioConfig, ConfigError> {
        let mut cfg = ScenarioConfig::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    #[test]
    fn empty_text_gives_defaults() {
        let cfg = parse_text("").unwrap();
        assert_eq!((cfg.nx, cfg.ntau, cfg.lx, cfg.ltau, cfg.seed), (256, 64, 64.0, 16.0, 0));
        assert_eq!(cfg, ScenarioConfig::default());
    }

    #[test]
    fn non_power_of_two_rejected() {
        let err = parse_text("nx=100").unwrap_err().to_string();
        assert!(err.contains("grid size must be a power of two"), "{err}");
        assert!(err.contains("nx"));
        assert!(parse_text("ntau = 2").unwrap_err().to_string().contains("at least 4"));
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse_text("nx = 64\nwidth = 3").unwrap_err();
        assert!(matches!(&err, ConfigError::UnknownKey(k) if k == "width"));
        assert!(err.to_string().contains("width"));
    }

    #[test]
    fn comments_blank_lines_and_pi_values() {
        let cfg = parse_text("# grid\n\nnx = 128  # smaller\nk0 = pi/8\nkappa0 = 0.25pi\nbranch = both\n").unwrap();
        assert_eq!(cfg.nx, 128);
        assert!((cfg.k0 - PI / 8.0).abs() < 1e-15);
        assert!((cfg.kappa0 - PI / 4.0).abs() < 1e-15);
        assert_eq!(cfg.branch, Branch::Both);
        assert!(parse_text("nx 64").is_err());
    }

    #[test]
    fn parse_real_forms() {
        assert_eq!(parse_real("pi"), Some(PI));
        assert_eq!(parse_real("-pi/4"), Some(-PI / 4.0));
        assert_eq!(parse_real("3pi/8"), Some(3.0 * PI / 8.0));
        assert_eq!(parse_real("2*pi"), Some(2.0 * PI));
        assert_eq!(parse_real("1.5e-3"), Some(1.5e-3));
        assert_eq!(parse_real("pie"), None);
        assert_eq!(parse_real("x"), None);
    }

    #[test]
    fn invariants_checked() {
        assert!(parse_text("t_final = -1").unwrap_err().to_string().contains("t_final"));
        assert!(parse_text("kappa0 = 0.3").unwrap_err().to_string().contains("kappa0"));
        assert!(parse_text("k0 = 0.1").unwrap_err().to_string().contains("k0"));
        assert!(parse_text("velocity = 1").is_err());
        assert!(parse_text("lx = 0").is_err());
        assert!(parse_text("tolerance = -1").is_err());
        assert!(parse_text("helicity = 2").is_err());
        assert!(parse_text("seed = -3").is_err());
    }

    #[test]
    fn overrides_beat_file_and_env() {
        let dir = std::env::temp_dir().join(format!("tauspinor-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.cfg");
        std::fs::write(&path, "nx = 64\nseed = 5\nout = from_file\n").unwrap();

        let mut sources = Sources { file: Some(&path), ..Default::default() };
        let cfg = parse_config(&sources).unwrap();
        assert_eq!((cfg.nx, cfg.seed), (64, 5));
        assert_eq!(cfg.out, PathBuf::from("from_file"));

        sources.env_out = Some("from_env".into());
        assert_eq!(parse_config(&sources).unwrap().out, PathBuf::from("from_env"));

        sources.overrides = vec![("nx".into(), "32".into()), ("out".into(), "from_flag".into())];
        let cfg = parse_config(&sources).unwrap();
        assert_eq!(cfg.nx, 32);
        assert_eq!(cfg.out, PathBuf::from("from_flag"));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn missing_file_is_read_error() {
        let p = Path::new("/nonexistent/tauspinor.cfg");
        let err = parse_config(&Sources { file: Some(p), ..Default::default() }).unwrap_err();
        assert!(matches!(err, ConfigError::Read { .. }));
    }

    #[test]
    fn split_override_forms() {
        assert_eq!(split_override("nx=64").unwrap(), ("nx".into(), "64".into()));
        assert_eq!(split_override(" k0 = pi/4 ").unwrap(), ("k0".into(), "pi/4".into()));
        assert!(split_override("nx").is_err());
    }
}
