//! Run configuration: JSON file, command-line overrides, defaults.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classifier::VerdictCase;
use crate::error::{Error, Result};
use crate::torus::{TorusParam, DEFAULT_TOLERANCE};

pub const OUTPUT_DIR_ENV: &str = "BGDUAL_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    #[default]
    Auto,
    Fixed(usize),
}

impl Serialize for Truncation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Auto => s.serialize_str("auto"),
            Self::Fixed(t) => s.serialize_u64(*t as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Truncation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(usize),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(t) => Ok(Self::Fixed(t)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl FromStr for Truncation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "auto" {
            return Ok(Self::Auto);
        }
        s.parse().map(Self::Fixed).map_err(|_| format!("truncation must be \"auto\" or an integer, got {s:?}"))
    }
}

impl Truncation {
    pub fn as_option(&self) -> Option<usize> {
        match self {
            Self::Auto => None,
            Self::Fixed(t) => Some(*t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Line-bundle class given by degree and Abel-Jacobi point `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    pub degree: i64,
    pub aj: [f64; 2],
}

/// Affine map `x -> m x + t` with `t = [re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub m: i64,
    pub t: [f64; 2],
}

/// Contents of a configuration file; every field optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub tau: Option<[f64; 2]>,
    pub n: Option<usize>,
    pub tolerance: Option<f64>,
    pub truncation: Option<Truncation>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    #[serde(rename = "L")]
    pub l: Option<ClassSpec>,
    pub components: Option<Vec<ComponentSpec>>,
    pub expected: Option<VerdictCase>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(self, other: ConfigFile) -> Self {
        Self {
            tau: other.tau.or(self.tau),
            n: other.n.or(self.n),
            tolerance: other.tolerance.or(self.tolerance),
            truncation: other.truncation.or(self.truncation),
            seed: other.seed.or(self.seed),
            output: other.output.or(self.output),
            format: other.format.or(self.format),
            l: other.l.or(self.l),
            components: other.components.or(self.components),
            expected: other.expected.or(self.expected),
        }
    }
}

/// Fully resolved configuration; determines a run completely.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub tau: [f64; 2],
    pub n: usize,
    pub tolerance: f64,
    pub truncation: Truncation,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<ClassSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentSpec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<VerdictCase>,
}

impl RunConfig {
    pub fn resolve(file: ConfigFile) -> Result<Self> {
        let cfg = Self {
            tau: file.tau.unwrap_or([0.0, 1.0]),
            n: file.n.unwrap_or(3),
            tolerance: file.tolerance.unwrap_or(DEFAULT_TOLERANCE),
            truncation: file.truncation.unwrap_or_default(),
            seed: file.seed.unwrap_or(0),
            output: file.output,
            format: file.format.unwrap_or_default(),
            l: file.l,
            components: file.components,
            expected: file.expected,
        };
        cfg.param()?;
        if cfg.truncation == Truncation::Fixed(0) {
            return Err(Error::Config("truncation must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn param(&self) -> Result<TorusParam> {
        TorusParam::new(Complex64::new(self.tau[0], self.tau[1]), self.tolerance)
    }

    /// Report destination: `output`, moved into `$BGDUAL_OUTPUT_DIR` when set;
    /// `<command>.json` in that directory when only the variable is set.
    pub fn destination(&self, command: &str, env_dir: Option<PathBuf>) -> Option<PathBuf> {
        let ext = match self.format {
            Format::Json => "json",
            Format::Text => "txt",
        };
        match (env_dir, &self.output) {
            (Some(dir), Some(out)) => Some(dir.join(out.file_name().unwrap_or(out.as_os_str()))),
            (Some(dir), None) => Some(dir.join(format!("{command}.{ext}"))),
            (None, out) => out.clone(),
        }
    }
}
