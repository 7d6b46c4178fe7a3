//! Run configuration: TOML schema, validation, and resolution into a
//! [`Scenario`] plus transport network.
//!
//! ```toml
//! study = "BASELINE"          # or an inline [tech] table
//! market = "OPTIMISTIC"
//! sep = true
//! years = 30
//! output_dir = "out"
//!
//! [variant]                   # optional study overrides
//! r0 = 0.70
//!
//! [econ.discount]
//! mode = "constant"
//! r_start = 0.12
//!
//! [sweep]
//! parameter = "r0"
//! values = [0.55, 0.70, 0.85]
//! ```
//!
//! Unknown keys are rejected everywhere. The network defaults to the
//! built-in one; `network_file` or an inline `[network]` table replace it,
//! and `[[delta_v]]` entries patch individual pairs.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, CatalogError, Overrides};
use crate::costmodel::{EconomicParams, MarketName, Scenario, TechnologyParams};
use crate::finance::DiscountSchedule;
use crate::transport::{DeltaVEntry, ResolvedNetwork, TransportNetwork};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

/// Scalar inputs a sweep can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    /// Baseline reliability before optimization.
    R0,
    /// Constant discount rate.
    DiscountRate,
    /// Initial launch cost ($/kg).
    L0,
    /// Multiplier on annual product.
    YieldFactor,
    /// Capital gear ratio on cost.
    CapitalGear,
    Buildup,
    /// Lunar progress ratio.
    ProgressRatio,
    /// Lunar EOS exponent.
    EosExponent,
    /// Firm-level EOS cap (t/y).
    XMax,
}

impl SweepParam {
    pub const ALL: [SweepParam; 9] = [
        SweepParam::R0,
        SweepParam::DiscountRate,
        SweepParam::L0,
        SweepParam::YieldFactor,
        SweepParam::CapitalGear,
        SweepParam::Buildup,
        SweepParam::ProgressRatio,
        SweepParam::EosExponent,
        SweepParam::XMax,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::R0 => "r0",
            SweepParam::DiscountRate => "discount_rate",
            SweepParam::L0 => "l0",
            SweepParam::YieldFactor => "yield_factor",
            SweepParam::CapitalGear => "capital_gear",
            SweepParam::Buildup => "buildup",
            SweepParam::ProgressRatio => "progress_ratio",
            SweepParam::EosExponent => "eos_exponent",
            SweepParam::XMax => "x_max",
        }
    }

    /// Copy of `s` with this parameter set to `v`.
    pub fn apply(self, s: &Scenario, v: f64) -> Scenario {
        let mut s = s.clone();
        match self {
            SweepParam::R0 => s.econ.reliability.r0 = v,
            SweepParam::DiscountRate => s.econ.discount = DiscountSchedule::constant(v),
            SweepParam::L0 => s.econ.l0 = v,
            SweepParam::YieldFactor => s.tech.annual_product *= v,
            SweepParam::CapitalGear => s.capital_gear_override = Some(v),
            SweepParam::Buildup => s.tech.buildup = v,
            SweepParam::ProgressRatio => s.econ.b = v,
            SweepParam::EosExponent => s.econ.a = v,
            SweepParam::XMax => s.econ.x_max = Some(v),
        }
        s
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepParam {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown sweep parameter `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParam,
    pub values: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.values.is_empty() {
            return Err(invalid("sweep.values is empty"));
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(invalid(format!("sweep value {v} is not finite")));
        }
        Ok(())
    }

    /// One labelled scenario per value, in the listed order.
    pub fn scenarios(&self, base: &Scenario) -> Vec<(String, Scenario)> {
        self.values
            .iter()
            .map(|&v| {
                (
                    format!("{}={v}", self.parameter),
                    self.parameter.apply(base, v),
                )
            })
            .collect()
    }
}

fn default_market() -> MarketName {
    MarketName::Optimistic
}

fn default_true() -> bool {
    true
}

fn default_years() -> u32 {
    30
}

fn is_default_econ(e: &EconomicParams) -> bool {
    *e == EconomicParams::default()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Scenario label in reports; defaults to the study id or tech label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Catalog study id. Exactly one of `study` and `tech` must be set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub study: Option<String>,
    #[serde(default = "default_market")]
    pub market: MarketName,
    #[serde(default = "default_true")]
    pub sep: bool,
    #[serde(default = "default_years")]
    pub years: u32,
    /// Capital gear ratio on cost, replacing the computed one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capital_gear: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Reserved; the model is deterministic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub network_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tech: Option<TechnologyParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Overrides>,
    #[serde(default, skip_serializing_if = "is_default_econ")]
    pub econ: EconomicParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub network: Option<TransportNetwork>,
    /// Pairs patched into the network's Δv table.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delta_v: Vec<DeltaVEntry>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            name: None,
            study: Some("BASELINE".into()),
            market: default_market(),
            sep: true,
            years: default_years(),
            capital_gear: None,
            output_dir: None,
            seed: None,
            network_file: None,
            tech: None,
            variant: None,
            econ: EconomicParams::default(),
            sweep: None,
            network: None,
            delta_v: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = Self::from_toml(&text)?;
        // relative network paths are taken from the config's directory
        if let (Some(f), Some(dir)) = (cfg.network_file.as_mut(), path.parent()) {
            if f.is_relative() {
                *f = dir.join(&*f);
            }
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config always serializes")
    }

    /// Structural checks that need no catalog or file access.
    pub fn validate(&self) -> Result<(), ConfigError> {
        match (&self.study, &self.tech) {
            (Some(_), Some(_)) => return Err(invalid("set either `study` or `tech`, not both")),
            (None, None) => return Err(invalid("one of `study` or `tech` is required")),
            _ => {}
        }
        if self.network.is_some() && self.network_file.is_some() {
            return Err(invalid("set either `network` or `network_file`, not both"));
        }
        if self.years == 0 {
            return Err(invalid("years must be at least 1"));
        }
        if let Some(g) = self.capital_gear {
            if !(g > 0.0 && g.is_finite()) {
                return Err(invalid("capital_gear must be positive"));
            }
        }
        if let Some(s) = &self.sweep {
            s.validate()?;
        }
        self.econ
            .discount
            .validate()
            .map_err(|e| invalid(format!("econ.discount: {e}")))?;
        self.econ
            .reliability
            .validate()
            .map_err(|e| invalid(format!("econ.reliability: {e}")))?;
        Ok(())
    }

    /// Use a catalog study, dropping any inline technology.
    pub fn set_study(&mut self, id: &str) {
        self.name = None;
        self.study = Some(id.to_string());
        self.tech = None;
    }

    /// Run label used in report rows.
    pub fn label(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        match (&self.study, &self.tech) {
            (Some(s), _) => s.clone(),
            (None, Some(t)) => t.label.clone(),
            (None, None) => "custom".into(),
        }
    }

    pub fn scenario(&self) -> Result<Scenario, ConfigError> {
        self.validate()?;
        let tech = match (&self.study, &self.tech) {
            (Some(id), _) => catalog::load_study(id)?,
            (None, Some(t)) => t.clone(),
            (None, None) => unreachable!("checked by validate"),
        };
        let mut s = Scenario::new(tech, self.market);
        s.econ = self.econ.clone();
        s.sep = self.sep;
        s.years = self.years;
        s.capital_gear_override = self.capital_gear;
        if let Some(v) = &self.variant {
            v.apply(&mut s);
        }
        s.tech
            .validate()
            .map_err(|e| invalid(format!("tech: {e}")))?;
        Ok(s)
    }

    pub fn network(&self) -> Result<TransportNetwork, ConfigError> {
        let mut net = match (&self.network, &self.network_file) {
            (Some(n), _) => n.clone(),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                    path: path.clone(),
                    source,
                })?;
                toml::from_str(&text)?
            }
            (None, None) => catalog::default_network()?,
        };
        for e in &self.delta_v {
            net.delta_v = net
                .delta_v
                .with(e.from, e.to, e.dv)
                .map_err(|err| invalid(format!("delta_v: {err}")))?;
        }
        Ok(net)
    }

    pub fn resolved_network(&self) -> Result<ResolvedNetwork, ConfigError> {
        self.network()?
            .resolve()
            .map_err(|e| invalid(format!("network: {e}")))
    }

    /// Fully inline equivalent: technology, overrides and network are all
    /// written out, so the result needs neither the catalog nor any file.
    pub fn effective(&self) -> Result<RunConfig, ConfigError> {
        let s = self.scenario()?;
        let net = self.network()?;
        net.resolve()
            .map_err(|e| invalid(format!("network: {e}")))?;
        Ok(RunConfig {
            name: Some(self.label()),
            study: None,
            market: s.market,
            sep: s.sep,
            years: s.years,
            capital_gear: s.capital_gear_override,
            output_dir: self.output_dir.clone(),
            seed: self.seed,
            network_file: None,
            tech: Some(s.tech),
            variant: None,
            econ: s.econ,
            sweep: self.sweep.clone(),
            network: Some(net),
            delta_v: Vec::new(),
        })
    }
}
