//! Built-in parameter sets: study technology columns, the default
//! transport network, market scenarios and study variants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::costmodel::{MarketName, ModelError, Scenario, TechnologyParams};
use crate::finance::DiscountSchedule;
use crate::scaling::{self, LaunchModel};
use crate::transport::{Node, ResolvedNetwork, TransportError, TransportNetwork};

const STUDIES: &str = include_str!("../data/studies.toml");
const NETWORK: &str = include_str!("../data/network.toml");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown study `{0}`")]
    UnknownStudy(String),
    #[error("conflicting overrides for `{0}`")]
    ConflictingOverrides(&'static str),
    #[error("unknown CD curve {0} (expected 1-5)")]
    UnknownCurve(u8),
    #[error("catalog data: {0}")]
    Data(#[from] toml::de::Error),
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Study identifiers in report order.
pub const STUDY_IDS: [&str; 7] = ["K", "S", "CD", "J", "B", "M", "BASELINE"];

pub fn studies() -> Result<BTreeMap<String, TechnologyParams>, CatalogError> {
    Ok(toml::from_str(STUDIES)?)
}

pub fn load_study(id: &str) -> Result<TechnologyParams, CatalogError> {
    studies()?
        .remove(id)
        .ok_or_else(|| CatalogError::UnknownStudy(id.to_string()))
}

pub fn default_network() -> Result<TransportNetwork, CatalogError> {
    Ok(toml::from_str(NETWORK)?)
}

pub fn default_resolved_network() -> Result<ResolvedNetwork, CatalogError> {
    Ok(default_network()?.resolve()?)
}

/// Production mass ratios as published, including the two P technologies
/// that have no parameter column.
pub const PUBLISHED_PHI: [(&str, f64); 9] = [
    ("K", 442.0),
    ("S", 534.0),
    ("P-borehole", 16.1),
    ("CD", 26.5),
    ("J", 22.2),
    ("B", 43.4),
    ("P-strip", 3.7),
    ("M", 36.5),
    ("BASELINE", 167.0),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiRow {
    pub study: String,
    pub computed: Option<f64>,
    pub published: f64,
    /// Computed value disagrees with the published one by more than 1%.
    pub mismatch: bool,
}

/// φ recomputed from each parameter column next to the published value.
pub fn phi_table() -> Result<Vec<PhiRow>, CatalogError> {
    let all = studies()?;
    Ok(PUBLISHED_PHI
        .iter()
        .map(|&(id, published)| {
            let computed = all.get(id).map(TechnologyParams::phi);
            PhiRow {
                study: id.to_string(),
                computed,
                published,
                mismatch: computed.is_some_and(|c| ((c - published) / published).abs() > 0.01),
            }
        })
        .collect())
}

/// Field overrides applied on top of a study.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    /// Multiplier on annual product (ore yield).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub yield_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gear_override: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub buildup: Option<f64>,
    /// Fraction of development cost paid by someone else.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_d_subsidy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discount: Option<DiscountSchedule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sep: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimize_reliability: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub market: Option<MarketName>,
}

fn merge_field<T: PartialEq + Clone>(
    name: &'static str,
    a: &Option<T>,
    b: &Option<T>,
) -> Result<Option<T>, CatalogError> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(CatalogError::ConflictingOverrides(name)),
        (Some(x), _) | (None, Some(x)) => Ok(Some(x.clone())),
        (None, None) => Ok(None),
    }
}

impl Overrides {
    /// Combine two overlays. Fields set in both must agree, which keeps
    /// the result independent of order.
    pub fn merge(&self, other: &Overrides) -> Result<Overrides, CatalogError> {
        Ok(Overrides {
            yield_factor: merge_field("yield_factor", &self.yield_factor, &other.yield_factor)?,
            gear_override: merge_field("gear_override", &self.gear_override, &other.gear_override)?,
            buildup: merge_field("buildup", &self.buildup, &other.buildup)?,
            zeta_d_subsidy: merge_field(
                "zeta_d_subsidy",
                &self.zeta_d_subsidy,
                &other.zeta_d_subsidy,
            )?,
            discount: merge_field("discount", &self.discount, &other.discount)?,
            sep: merge_field("sep", &self.sep, &other.sep)?,
            optimize_reliability: merge_field(
                "optimize_reliability",
                &self.optimize_reliability,
                &other.optimize_reliability,
            )?,
            r0: merge_field("r0", &self.r0, &other.r0)?,
            market: merge_field("market", &self.market, &other.market)?,
        })
    }

    pub fn apply(&self, s: &mut Scenario) {
        if let Some(k) = self.yield_factor {
            s.tech.annual_product *= k;
        }
        if let Some(g) = self.gear_override {
            s.capital_gear_override = Some(g);
        }
        if let Some(b) = self.buildup {
            s.tech.buildup = b;
        }
        if let Some(f) = self.zeta_d_subsidy {
            s.tech.zeta_d *= 1.0 - f;
        }
        if let Some(d) = self.discount {
            s.econ.discount = d;
        }
        if let Some(v) = self.sep {
            s.sep = v;
        }
        if let Some(v) = self.optimize_reliability {
            s.econ.optimize_reliability = v;
        }
        if let Some(r) = self.r0 {
            s.econ.reliability.r0 = r;
        }
        if let Some(m) = self.market {
            s.market = m;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyVariant {
    pub base: String,
    #[serde(default)]
    pub overrides: Overrides,
}

/// Scenario for a study with its overrides applied.
pub fn apply_variant(v: &StudyVariant) -> Result<Scenario, CatalogError> {
    let mut s = Scenario::new(load_study(&v.base)?, MarketName::Optimistic);
    v.overrides.apply(&mut s);
    s.tech.validate()?;
    Ok(s)
}

/// Discount rate the strip-mining study judged necessary to attract investors.
pub const CD_RATE: f64 = 0.272;

/// The five CD curves; each is a complete overlay on the published study.
pub fn cd_curve(n: u8) -> Result<StudyVariant, CatalogError> {
    let mut o = Overrides {
        gear_override: Some(64.9),
        optimize_reliability: Some(false),
        sep: Some(false),
        discount: Some(DiscountSchedule::constant(CD_RATE)),
        ..Overrides::default()
    };
    if n >= 2 {
        o.yield_factor = Some(5.0);
    }
    if n >= 3 {
        o.gear_override = Some(8.0);
        o.optimize_reliability = Some(true);
        o.sep = Some(true);
    }
    if n >= 4 {
        o.buildup = Some(4.0);
        o.zeta_d_subsidy = Some(0.5);
    }
    if n >= 5 {
        o.discount = Some(DiscountSchedule::ppp());
    }
    if !(1..=5).contains(&n) {
        return Err(CatalogError::UnknownCurve(n));
    }
    Ok(StudyVariant {
        base: "CD".into(),
        overrides: o,
    })
}

/// Capital gear on cost for J's heavy-lift choice at today's prices.
pub const J_SLS_GEAR: f64 = 41.8;
/// The same vehicle's gear on mass when it was priced competitively.
pub const J_SLS_GEAR_MASS: f64 = 5.4;

pub fn j_sls() -> StudyVariant {
    StudyVariant {
        base: "J".into(),
        overrides: Overrides {
            gear_override: Some(J_SLS_GEAR),
            ..Overrides::default()
        },
    }
}

/// B at its stated demand rather than system capacity.
pub fn b_demand() -> StudyVariant {
    StudyVariant {
        base: "B".into(),
        overrides: Overrides {
            yield_factor: Some(166.44 / 190.0),
            ..Overrides::default()
        },
    }
}

/// Derived quantities of a market scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarketScenario {
    pub name: MarketName,
    pub u30: f64,
    pub tau_l: f64,
    pub l30: f64,
    /// Year-30 lunar demand (kg/y).
    pub d30: f64,
}

pub fn market_scenario(
    name: MarketName,
    net: &ResolvedNetwork,
    sep: bool,
    l0: f64,
) -> Result<MarketScenario, CatalogError> {
    let m = LaunchModel::with_u30(l0, name.u30()).map_err(ModelError::from)?;
    Ok(MarketScenario {
        name,
        u30: name.u30(),
        tau_l: m.tau_l,
        l30: scaling::launch_cost(30.0, &m),
        d30: net.lunar_gear(Node::Leo, sep)? * name.u30(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_studies_load() {
        let s = studies().unwrap();
        for id in STUDY_IDS {
            s[id].validate().unwrap();
        }
        assert!(matches!(
            load_study("P"),
            Err(CatalogError::UnknownStudy(_))
        ));
    }

    #[test]
    fn curves_defined() {
        for n in 1..=5 {
            apply_variant(&cd_curve(n).unwrap()).unwrap();
        }
        assert!(cd_curve(6).is_err());
        assert!(cd_curve(0).is_err());
    }

    #[test]
    fn conflicting_merge_rejected() {
        let a = Overrides {
            gear_override: Some(8.0),
            ..Overrides::default()
        };
        let b = Overrides {
            gear_override: Some(64.9),
            ..Overrides::default()
        };
        assert!(matches!(
            a.merge(&b),
            Err(CatalogError::ConflictingOverrides("gear_override"))
        ));
        assert_eq!(a.merge(&a).unwrap(), a);
    }
}
