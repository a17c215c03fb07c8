//! Run configuration: a TOML file whose keys mirror the command-line flags.
//!
//! ```toml
//! engine = "jump:right,lex"
//! family = "bs"
//! radius = 5
//! seed = 12648430
//! power_bound = 8
//! emit = "csv"
//! output = "frame.csv"
//! ```
//!
//! Unknown keys are rejected. Flags given on the command line win.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use crate::spec::{EngineSpec, FamilySpec};

/// Largest radius accepted; ball sizes grow exponentially.
pub const MAX_RADIUS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub engine: Option<String>,
    pub family: Option<String>,
    pub radius: Option<usize>,
    pub seed: Option<u64>,
    pub power_bound: Option<u32>,
    pub emit: Option<Emit>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: RunConfig = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Fills unset fields of `self` from `base`.
    pub fn or(self, base: &RunConfig) -> RunConfig {
        RunConfig {
            engine: self.engine.or_else(|| base.engine.clone()),
            family: self.family.or_else(|| base.family.clone()),
            radius: self.radius.or(base.radius),
            seed: self.seed.or(base.seed),
            power_bound: self.power_bound.or(base.power_bound),
            emit: self.emit.or(base.emit),
            output: self.output.or_else(|| base.output.clone()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(e) = &self.engine {
            e.parse::<EngineSpec>()?;
        }
        if let Some(f) = &self.family {
            f.parse::<FamilySpec>()?;
        }
        if let Some(r) = self.radius {
            if r == 0 || r > MAX_RADIUS {
                bail!("radius must be between 1 and {MAX_RADIUS}");
            }
        }
        if self.power_bound == Some(0) {
            bail!("power bound must be positive");
        }
        Ok(())
    }

    pub fn engine(&self) -> Result<Option<EngineSpec>> {
        self.engine.as_deref().map(str::parse).transpose()
    }

    /// Explicit family, else the engine's natural one.
    pub fn family(&self, engine: Option<&EngineSpec>) -> Result<Option<FamilySpec>> {
        match &self.family {
            Some(f) => Ok(Some(f.parse()?)),
            None => Ok(engine.map(EngineSpec::default_family)),
        }
    }
}
