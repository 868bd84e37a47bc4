//! Run configuration: a TOML file, overridden by command-line flags.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}: {source}")]
    Parse { path: PathBuf, source: toml::de::Error },
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// `r`-coefficient of the volume and `v1` agreement
    pub linear: f64,
    /// CR Stokes routes, relative to `sup |a|`
    pub stokes: f64,
    /// transformation laws vs recomputation, relative
    pub law: f64,
    pub composition: f64,
    /// `d(u eta) - i thetahat ^ thetahatbar`
    pub contact: f64,
    pub cocycle: f64,
    pub linearity: f64,
    /// allowed distance of the observed step order from 2
    pub order_band: f64,
    pub ch2_leading: f64,
    pub ch2_v1: f64,
    pub ch2_bulk: f64,
    pub ch2_chi: f64,
    pub ch2_curly_v: f64,
    pub ch2_oracle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            linear: 1e-8,
            stokes: 1e-8,
            law: 1e-6,
            composition: 1e-6,
            contact: 1e-10,
            cocycle: 1e-8,
            linearity: 1e-6,
            order_band: 0.2,
            ch2_leading: 1e-9,
            ch2_v1: 1e-9,
            ch2_bulk: 1e-9,
            ch2_chi: 1e-7,
            ch2_curly_v: 1e-6,
            ch2_oracle: 1e-10,
        }
    }
}

impl Tolerances {
    fn entries(&self) -> [(&'static str, f64); 14] {
        [
            ("linear", self.linear),
            ("stokes", self.stokes),
            ("law", self.law),
            ("composition", self.composition),
            ("contact", self.contact),
            ("cocycle", self.cocycle),
            ("linearity", self.linearity),
            ("order_band", self.order_band),
            ("ch2_leading", self.ch2_leading),
            ("ch2_v1", self.ch2_v1),
            ("ch2_bulk", self.ch2_bulk),
            ("ch2_chi", self.ch2_chi),
            ("ch2_curly_v", self.ch2_curly_v),
            ("ch2_oracle", self.ch2_oracle),
        ]
    }
}

pub const MANIFOLDS: [&str; 6] = ["all", "round-s3", "berger", "heisenberg", "conformal-s3", "ch2"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// one of `MANIFOLDS`
    pub manifold: String,
    /// Berger squash parameters
    pub lambda: Vec<f64>,
    /// quadrature resolution
    pub resolution: usize,
    /// series truncation in units of `e^{-r}`
    pub truncation: i32,
    pub seed: u64,
    pub out_dir: PathBuf,
    /// random conformal factors per base manifold
    pub factors: usize,
    /// factors stay in `[1 - amplitude, 1 + amplitude]`
    pub amplitude: f64,
    /// first-variation step
    pub step: f64,
    /// random (1,0)-forms in the Stokes run
    pub forms: usize,
    /// sample points for the model curvature
    pub ch2_points: usize,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            manifold: "all".into(),
            lambda: vec![0.8, 1.25, 1.5],
            resolution: 8,
            truncation: 2,
            seed: 1,
            out_dir: PathBuf::from("out"),
            factors: 20,
            amplitude: 0.5,
            step: 0.05,
            forms: 10,
            ch2_points: 100,
            tolerances: Tolerances::default(),
        }
    }
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.into(), reason: reason.into() }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        Self::parse(&text).map_err(|source| ConfigError::Parse { path: path.into(), source })
    }

    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    /// Truncation as an order in `e^{-r/2}`.
    pub fn eps_order(&self) -> i32 {
        2 * self.truncation
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !MANIFOLDS.contains(&self.manifold.as_str()) {
            return Err(invalid("manifold", format!("`{}` is not one of {}", self.manifold, MANIFOLDS.join(", "))));
        }
        if self.truncation < 2 {
            return Err(invalid(
                "truncation",
                format!(
                    "order {} (in units of e^-r) is below 2; the constant term of the boundary series needs the e^-2r terms of the metric",
                    self.truncation
                ),
            ));
        }
        if self.truncation > 2 {
            return Err(invalid("truncation", format!("order {} exceeds the implemented e^-2r expansion", self.truncation)));
        }
        if self.resolution < 2 || self.resolution > 64 {
            return Err(invalid("resolution", "must lie in 2..=64"));
        }
        if self.lambda.is_empty() || self.lambda.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(invalid("lambda", "needs at least one positive Berger parameter"));
        }
        if !(self.amplitude > 0.0 && self.amplitude < 1.0) {
            return Err(invalid("amplitude", "must lie in (0, 1) to keep factors positive"));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(invalid("step", "must be positive"));
        }
        for (k, v) in [("factors", self.factors), ("forms", self.forms), ("ch2_points", self.ch2_points)] {
            if v == 0 {
                return Err(invalid(k, "must be at least 1"));
            }
        }
        for (k, v) in self.tolerances.entries() {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(&format!("tolerances.{k}"), "must be positive"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::parse("resolution = 4\nbogus = 1\n").is_err());
        assert!(RunConfig::parse("[tolerances]\nlaw = 1e-6\nnope = 2\n").is_err());
        let c = RunConfig::parse("resolution = 4\n[tolerances]\nlaw = 1e-5\n").unwrap();
        assert_eq!(c.resolution, 4);
        assert_eq!(c.tolerances.law, 1e-5);
        assert_eq!(c.tolerances.stokes, 1e-8);
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = |f: &dyn Fn(&mut RunConfig)| {
            let mut c = RunConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(&|c| c.truncation = 1));
        assert!(bad(&|c| c.manifold = "torus".into()));
        assert!(bad(&|c| c.tolerances.law = 0.0));
        assert!(bad(&|c| c.tolerances.ch2_chi = f64::NAN));
        assert!(bad(&|c| c.lambda.clear()));
        assert!(bad(&|c| c.amplitude = 1.0));
        assert_eq!(RunConfig::default().eps_order(), 4);
    }
}
