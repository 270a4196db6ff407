//! Config file loading. Values from the file sit between the built-in
//! defaults and command-line flags.

use std::path::Path;

use besselcert::certify::{Spacing, SweepGrid, XSpec};
use besselcert::{EvalConfig, OracleConfig};
use serde::Deserialize;

/// Overrides `eval.target_rel_tol` after the file is read.
pub const REL_TOL_ENV: &str = "BESSELCERT_REL_TOL";

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub eval: EvalConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default)]
    pub grid: GridOverrides,
    #[serde(default)]
    pub certify: CertifySection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    pub nu_values: Option<Vec<f64>>,
    pub beta_values: Option<Vec<f64>>,
    #[serde(default)]
    pub x_spec: XSpecOverrides,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XSpecOverrides {
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub count: Option<usize>,
    pub spacing: Option<Spacing>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifySection {
    pub refine_rounds: Option<u32>,
    pub records: Option<Vec<String>>,
    pub threads: Option<usize>,
}

impl GridOverrides {
    /// Layers `other` on top of `self`.
    pub fn merge(&mut self, other: GridOverrides) {
        if other.nu_values.is_some() {
            self.nu_values = other.nu_values;
        }
        if other.beta_values.is_some() {
            self.beta_values = other.beta_values;
        }
        let x = other.x_spec;
        self.x_spec.min = x.min.or(self.x_spec.min);
        self.x_spec.max = x.max.or(self.x_spec.max);
        self.x_spec.count = x.count.or(self.x_spec.count);
        self.x_spec.spacing = x.spacing.or(self.x_spec.spacing);
    }

    pub fn resolve(&self) -> SweepGrid {
        let base = SweepGrid::default();
        SweepGrid {
            nu_values: self.nu_values.clone().unwrap_or(base.nu_values),
            beta_values: self.beta_values.clone().unwrap_or(base.beta_values),
            x_spec: XSpec {
                min: self.x_spec.min.unwrap_or(base.x_spec.min),
                max: self.x_spec.max.unwrap_or(base.x_spec.max),
                count: self.x_spec.count.unwrap_or(base.x_spec.count),
                spacing: self.x_spec.spacing.unwrap_or(base.x_spec.spacing),
            },
        }
    }
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| format!("invalid config: {e}"))
    }

    /// Reads `path` if given, then applies [`REL_TOL_ENV`].
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
                Self::parse(&text)?
            }
            None => Self::default(),
        };
        if let Ok(raw) = std::env::var(REL_TOL_ENV) {
            let tol: f64 = raw
                .trim()
                .parse()
                .map_err(|_| format!("{REL_TOL_ENV} must be a number, got {raw:?}"))?;
            cfg.eval.target_rel_tol = tol;
        }
        cfg.eval.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}
