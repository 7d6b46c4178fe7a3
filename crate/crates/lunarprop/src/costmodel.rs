//! Dimensionless cost parameters, their evolution over 30 sales years, and
//! the comparison against Earth-launched propellant at each node.
//!
//! Each sales year is priced as its own capital vintage: the year's launch
//! cost, learning and scale effects, optimal reliability and discount rate
//! are frozen for that vintage's buildup and amortization.
//!
//! ```text
//! psi0  = (x + g)/phi + omega + xi
//! psi_X = psi0 * Gamma_X          lunar cheaper at X when psi_X < 1
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finance::{self, DiscountSchedule, FinanceError, Vintage};
use crate::reliability::{self, CapitalCostInputs, ReliabilityError, ReliabilityParams};
use crate::scaling::{self, BetaSchedule, LaunchModel, MarketModel, ScaleParams, ScalingError};
use crate::transport::{
    architecture_gear_ratio, gear_ratio_on_cost, DeltaVTable, Node, ResolvedNetwork,
    TransportArchitecture, TransportError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error(transparent)]
    Reliability(#[from] ReliabilityError),
    #[error(transparent)]
    Scaling(#[from] ScalingError),
    #[error(transparent)]
    Finance(#[from] FinanceError),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("year {year}: {source}")]
    Year {
        year: u32,
        #[source]
        source: Box<ModelError>,
    },
}

/// One study's technology parameters, in the units the studies publish.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechnologyParams {
    pub label: String,
    /// Surface capital (t).
    pub m_k_surface: f64,
    /// Space segment, lander or transfer vehicle (t).
    pub m_k_space: f64,
    /// Space segment payload and propellant capacity (t).
    pub payload_capacity: f64,
    pub imf: f64,
    /// Development cost (k$/kg).
    pub zeta_d: f64,
    /// Fabrication cost (k$/kg).
    pub zeta_f: f64,
    /// Years.
    pub buildup: f64,
    /// $M per year.
    pub annual_ops: f64,
    /// Years.
    pub life: f64,
    /// Product at LS (t/y).
    pub annual_product: f64,
    /// Per-field source notes.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub provenance: BTreeMap<String, String>,
}

impl TechnologyParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        let fields = [
            ("m_k_surface", self.m_k_surface),
            ("m_k_space", self.m_k_space),
            ("payload_capacity", self.payload_capacity),
            ("imf", self.imf),
            ("zeta_d", self.zeta_d),
            ("zeta_f", self.zeta_f),
            ("annual_ops", self.annual_ops),
            ("annual_product", self.annual_product),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, v)| !(*v >= 0.0 && v.is_finite())) {
            return Err(ModelError::Params(format!(
                "{}: {name} must be non-negative",
                self.label
            )));
        }
        if self.capital_mass_kg() <= 0.0 || self.annual_product <= 0.0 {
            return Err(ModelError::Params(format!(
                "{}: capital mass and product must be positive",
                self.label
            )));
        }
        if !(self.life >= 1.0 && self.buildup > 0.0) {
            return Err(ModelError::Params(format!(
                "{}: need life >= 1 and buildup > 0",
                self.label
            )));
        }
        Ok(())
    }

    pub fn capital_mass_kg(&self) -> f64 {
        (self.m_k_surface + self.m_k_space) * 1000.0
    }

    pub fn product_kg_per_year(&self) -> f64 {
        self.annual_product * 1000.0
    }

    pub fn lifetime_product_kg(&self) -> f64 {
        self.product_kg_per_year() * self.life
    }

    /// Production mass ratio: lifetime product per unit capital mass.
    pub fn phi(&self) -> f64 {
        self.lifetime_product_kg() / self.capital_mass_kg()
    }

    pub fn zeta_d_usd(&self) -> f64 {
        self.zeta_d * 1000.0
    }

    pub fn zeta_f_usd(&self) -> f64 {
        self.zeta_f * 1000.0
    }

    pub fn annual_ops_usd(&self) -> f64 {
        self.annual_ops * 1e6
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EconomicParams {
    /// Lunar progress ratio.
    pub b: f64,
    /// Lunar EOS exponent.
    pub a: f64,
    /// Firm-level EOS cap (t/y).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_max: Option<f64>,
    pub f_overlap: f64,
    pub f_firm_soe: f64,
    pub beta: BetaSchedule,
    pub reliability: ReliabilityParams,
    pub optimize_reliability: bool,
    pub discount: DiscountSchedule,
    /// Launch cost at t = 0 ($/kg).
    pub l0: f64,
    pub launch_a: f64,
    pub launch_b: f64,
}

impl Default for EconomicParams {
    fn default() -> Self {
        Self {
            b: 0.75,
            a: 0.6,
            x_max: None,
            f_overlap: 0.5,
            f_firm_soe: 0.2,
            beta: BetaSchedule::default(),
            reliability: ReliabilityParams::default(),
            optimize_reliability: true,
            discount: DiscountSchedule::default(),
            l0: 2000.0,
            launch_a: 0.66,
            launch_b: 0.80,
        }
    }
}

impl EconomicParams {
    /// No learning, no scale effects and no interest.
    pub fn null_evolution() -> Self {
        Self {
            b: 1.0,
            a: 1.0,
            beta: BetaSchedule::OFF,
            discount: DiscountSchedule::constant(0.0),
            launch_a: 1.0,
            launch_b: 1.0,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MarketName {
    Optimistic,
    Moderate,
    Pessimistic,
}

impl MarketName {
    pub const ALL: [MarketName; 3] = [
        MarketName::Optimistic,
        MarketName::Moderate,
        MarketName::Pessimistic,
    ];

    /// Year-30 launch up-mass (kg/y); each step down is a factor of ten.
    pub fn u30(self) -> f64 {
        match self {
            MarketName::Optimistic => 436e6,
            MarketName::Moderate => 43.6e6,
            MarketName::Pessimistic => 4.36e6,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MarketName::Optimistic => "OPTIMISTIC",
            MarketName::Moderate => "MODERATE",
            MarketName::Pessimistic => "PESSIMISTIC",
        }
    }
}

/// Everything that defines a run apart from the transport network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub tech: TechnologyParams,
    pub econ: EconomicParams,
    pub market: MarketName,
    /// Electric propulsion on the legs below LLO.
    pub sep: bool,
    /// Capital gear ratio on cost, replacing the computed one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capital_gear_override: Option<f64>,
    /// Multiplier on the computed capital gear.
    #[serde(default = "one")]
    pub gear_scale: f64,
    #[serde(default = "thirty")]
    pub years: u32,
}

fn one() -> f64 {
    1.0
}

fn thirty() -> u32 {
    30
}

impl Scenario {
    pub fn new(tech: TechnologyParams, market: MarketName) -> Self {
        Self {
            tech,
            econ: EconomicParams::default(),
            market,
            sep: true,
            capital_gear_override: None,
            gear_scale: 1.0,
            years: 30,
        }
    }

    pub fn launch_model(&self) -> Result<LaunchModel, ModelError> {
        let mut m = LaunchModel::with_u30(self.econ.l0, self.market.u30())?;
        m.a = self.econ.launch_a;
        m.b = self.econ.launch_b;
        Ok(m)
    }

    pub fn market_model(&self, net: &ResolvedNetwork) -> Result<MarketModel, ModelError> {
        Ok(MarketModel {
            d1: self.tech.product_kg_per_year(),
            d30: net.lunar_gear(Node::Leo, self.sep)? * self.market.u30(),
        })
    }

    /// Capital gear ratio on mass (L_K = L_p, so also on cost).
    pub fn capital_gear(&self, net: &ResolvedNetwork) -> Result<f64, ModelError> {
        Ok(match self.capital_gear_override {
            Some(g) => g,
            None => net.capital_gear()? * self.gear_scale,
        })
    }
}

/// Dimensionless cost parameters for one year.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionlessState {
    pub phi: f64,
    pub x: f64,
    pub omega: f64,
    pub xi: f64,
    pub chi: f64,
    /// Capital gear on cost including the 1/R spares stream.
    pub g: f64,
    pub gamma: BTreeMap<Node, f64>,
    pub psi0: f64,
    pub psi: BTreeMap<Node, f64>,
}

impl DimensionlessState {
    /// Shares of ψ₀ as (labor, capital, finance).
    pub fn cost_shares(&self) -> (f64, f64, f64) {
        (
            self.omega / self.psi0,
            self.chi / self.psi0,
            self.xi / self.psi0,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct YearlyCostRecord {
    pub year: u32,
    pub state: DimensionlessState,
    pub lunar_cost: BTreeMap<Node, f64>,
    pub terrestrial_cost: BTreeMap<Node, f64>,
    pub l_p: f64,
    pub r_opt: f64,
    pub rate: f64,
}

/// Per-run constants that do not change from year to year.
struct Fixed {
    nodes: Vec<Node>,
    base_gamma: BTreeMap<Node, f64>,
    electric: BTreeMap<Node, f64>,
    terrestrial_gear: BTreeMap<Node, f64>,
    capital_gear: f64,
    launch: LaunchModel,
    market: MarketModel,
    tau: f64,
}

fn fixed(s: &Scenario, net: &ResolvedNetwork) -> Result<Fixed, ModelError> {
    let nodes = net.sale_nodes();
    let mut base_gamma = BTreeMap::new();
    let mut electric = BTreeMap::new();
    let mut terrestrial_gear = BTreeMap::new();
    for &n in &nodes {
        let tg = net.terrestrial_gear(n)?;
        base_gamma.insert(n, net.lunar_gear(n, s.sep)? / tg);
        terrestrial_gear.insert(n, tg);
        electric.insert(
            n,
            if s.sep {
                net.electric_fraction(n)?
            } else {
                0.0
            },
        );
    }
    let market = s.market_model(net)?;
    Ok(Fixed {
        nodes,
        base_gamma,
        electric,
        terrestrial_gear,
        capital_gear: s.capital_gear(net)?,
        launch: s.launch_model()?,
        tau: market.tau()?,
        market,
    })
}

/// Launch-normalized state for sales year `year` (1-based; t = year − 1).
pub fn dimensionless_state(
    s: &Scenario,
    net: &ResolvedNetwork,
    year: u32,
) -> Result<YearlyCostRecord, ModelError> {
    s.tech.validate()?;
    s.econ.discount.validate()?;
    let fx = fixed(s, net)?;
    year_record(s, &fx, year)
}

fn year_record(s: &Scenario, fx: &Fixed, year: u32) -> Result<YearlyCostRecord, ModelError> {
    let tech = &s.tech;
    let econ = &s.econ;
    let t = f64::from(year) - 1.0;
    let l_p = scaling::launch_cost(t, &fx.launch);

    let d1 = fx.market.d1;
    let x_props = d1 * (t / fx.tau).exp();
    let cum = scaling::cumulative_production(t, d1, fx.tau, d1);
    let learn = scaling::wright_factor(cum, &scaling::LearningParams { b: econ.b, s0: d1 })?;
    let scale = scaling::scale_factors(
        x_props,
        t,
        &ScaleParams {
            a: econ.a,
            x0: d1,
            x_max: econ.x_max.map(|m| m * 1000.0),
            f_overlap: econ.f_overlap,
            f_firm_soe: econ.f_firm_soe,
            beta: econ.beta,
        },
    )?;
    let hardware = learn * scale.hardware;

    let m_k = tech.capital_mass_kg();
    let zeta_d = tech.zeta_d_usd() * hardware;
    let zeta_f = tech.zeta_f_usd() * hardware;
    let g_cap = gear_ratio_on_cost(l_p, fx.capital_gear, l_p);
    let t_k = l_p * g_cap;
    let rel = &econ.reliability;
    let r = if econ.optimize_reliability {
        let inputs = CapitalCostInputs {
            zeta_d,
            zeta_f,
            m_k,
            t_k,
        };
        reliability::optimize_reliability(rel, &inputs)?.r_opt
    } else {
        rel.validate()?;
        rel.r0
    };
    let zeta = (zeta_d + zeta_f / r) * reliability::reliability_cost_factor(r, rel)?;

    let labor = tech.annual_ops_usd() * learn * scale.labor;
    let rate = econ.discount.rate_at(t);
    let fin = finance::finance_vintage(
        &Vintage {
            capital: zeta * m_k,
            annual_labor: labor,
            launch: m_k / r * t_k,
            buildup: tech.buildup,
            life: tech.life,
            m_p_total: tech.lifetime_product_kg(),
            rate,
        },
        l_p,
    )?;

    let phi = tech.phi();
    let x = zeta / l_p;
    let g = g_cap / r;
    let chi = (x + g) / phi;
    let omega = labor / tech.product_kg_per_year() / l_p;
    let psi0 = chi + omega + fin.xi;

    let mut gamma = BTreeMap::new();
    let mut psi = BTreeMap::new();
    let mut lunar_cost = BTreeMap::new();
    let mut terrestrial_cost = BTreeMap::new();
    for &n in &fx.nodes {
        let gm = fx.base_gamma[&n] * finance::sep_transit_penalty(fx.electric[&n], rate);
        let terr = l_p * fx.terrestrial_gear[&n];
        gamma.insert(n, gm);
        psi.insert(n, psi0 * gm);
        terrestrial_cost.insert(n, terr);
        lunar_cost.insert(n, psi0 * gm * terr);
    }
    Ok(YearlyCostRecord {
        year,
        state: DimensionlessState {
            phi,
            x,
            omega,
            xi: fin.xi,
            chi,
            g,
            gamma,
            psi0,
            psi,
        },
        lunar_cost,
        terrestrial_cost,
        l_p,
        r_opt: r,
        rate,
    })
}

/// Price every sales year 1..=years.
pub fn run_scenario(
    s: &Scenario,
    net: &ResolvedNetwork,
) -> Result<Vec<YearlyCostRecord>, ModelError> {
    s.tech.validate()?;
    s.econ.discount.validate()?;
    if s.years == 0 {
        return Err(ModelError::Params("years must be at least 1".into()));
    }
    let fx = fixed(s, net)?;
    (1..=s.years)
        .map(|y| {
            year_record(s, &fx, y).map_err(|e| ModelError::Year {
                year: y,
                source: Box::new(e),
            })
        })
        .collect()
}

/// First year with ψ_X < 1.
pub fn advantage_year(node: Node, records: &[YearlyCostRecord]) -> Option<u32> {
    records
        .iter()
        .find(|r| r.state.psi.get(&node).is_some_and(|&p| p < 1.0))
        .map(|r| r.year)
}

/// Advantage year for every sale node of the run.
pub fn advantage_years(records: &[YearlyCostRecord]) -> BTreeMap<Node, Option<u32>> {
    records
        .first()
        .map(|r| {
            r.state
                .psi
                .keys()
                .map(|&n| (n, advantage_year(n, records)))
                .collect()
        })
        .unwrap_or_default()
}

/// Lunar propellant cost at `node` ($/kg).
pub fn lunar_cost_at(
    node: Node,
    st: &DimensionlessState,
    l_p: f64,
    terrestrial_gear: f64,
) -> Option<f64> {
    st.gamma
        .get(&node)
        .map(|g| st.psi0 * g * l_p * terrestrial_gear)
}

/// Earth-launched propellant cost at `node` ($/kg).
pub fn terrestrial_cost_at(
    l_p: f64,
    arch: &TransportArchitecture,
    dvs: &DeltaVTable,
) -> Result<f64, TransportError> {
    Ok(l_p * architecture_gear_ratio(arch, dvs)?.gear_mass)
}

/// Propellant payback ratio.
pub fn ppr(g: f64, phi: f64, gamma_x: f64) -> f64 {
    phi / (g * gamma_x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElasticityParam {
    #[serde(rename = "M_p")]
    ProductMass,
    #[serde(rename = "M_K")]
    CapitalMass,
    #[serde(rename = "zeta")]
    Zeta,
    #[serde(rename = "G")]
    Gear,
    #[serde(rename = "IMF")]
    Imf,
    #[serde(rename = "I_sp")]
    Isp,
    #[serde(rename = "L_0")]
    L0,
}

impl ElasticityParam {
    pub const ALL: [ElasticityParam; 7] = [
        ElasticityParam::ProductMass,
        ElasticityParam::CapitalMass,
        ElasticityParam::Zeta,
        ElasticityParam::Gear,
        ElasticityParam::Imf,
        ElasticityParam::Isp,
        ElasticityParam::L0,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ElasticityParam::ProductMass => "M_p",
            ElasticityParam::CapitalMass => "M_K",
            ElasticityParam::Zeta => "zeta",
            ElasticityParam::Gear => "G",
            ElasticityParam::Imf => "IMF",
            ElasticityParam::Isp => "I_sp",
            ElasticityParam::L0 => "L_0",
        }
    }
}

fn perturbed(
    p: ElasticityParam,
    s: &Scenario,
    net: &ResolvedNetwork,
    k: f64,
) -> (Scenario, ResolvedNetwork) {
    let mut s = s.clone();
    let mut net = net.clone();
    match p {
        ElasticityParam::ProductMass => s.tech.annual_product *= k,
        ElasticityParam::CapitalMass => {
            s.tech.m_k_surface *= k;
            s.tech.m_k_space *= k;
        }
        ElasticityParam::Zeta => {
            s.tech.zeta_d *= k;
            s.tech.zeta_f *= k;
        }
        ElasticityParam::Gear => match s.capital_gear_override.as_mut() {
            Some(g) => *g *= k,
            None => s.gear_scale *= k,
        },
        ElasticityParam::Imf => net.capital.legs.iter_mut().for_each(|l| l.stage.imf *= k),
        ElasticityParam::Isp => net.capital.legs.iter_mut().for_each(|l| l.stage.isp *= k),
        ElasticityParam::L0 => s.econ.l0 *= k,
    }
    (s, net)
}

/// Elasticity of year-1 ψ₀ by central log difference at ±`step`.
pub fn elasticity_with_step(
    p: ElasticityParam,
    s: &Scenario,
    net: &ResolvedNetwork,
    step: f64,
) -> Result<f64, ModelError> {
    let k = 1.0 + step;
    let psi = |k: f64| -> Result<f64, ModelError> {
        let (s, n) = perturbed(p, s, net, k);
        Ok(dimensionless_state(&s, &n, 1)?.state.psi0)
    };
    Ok((psi(k)?.ln() - psi(1.0 / k)?.ln()) / (2.0 * k.ln()))
}

pub fn elasticity(
    p: ElasticityParam,
    s: &Scenario,
    net: &ResolvedNetwork,
) -> Result<f64, ModelError> {
    elasticity_with_step(p, s, net, 0.01)
}

/// Rebuild `s` so capital gear and equipment cost sit at the given G/x
/// ratio. The larger of the two is pinned at the computed baseline gear
/// and the smaller is set from the ratio.
pub fn regime_scenario(
    s: &Scenario,
    net: &ResolvedNetwork,
    ratio: f64,
) -> Result<Scenario, ModelError> {
    if !(ratio > 0.0) {
        return Err(ModelError::Params("G/x ratio must be positive".into()));
    }
    let g0 = net.capital_gear()?;
    let g_target = g0 * ratio.max(1.0);
    let x_target = g0 * (1.0 / ratio).max(1.0);
    let x_now = (s.tech.zeta_d_usd() + s.tech.zeta_f_usd()) / s.econ.l0;
    let mut out = s.clone();
    out.capital_gear_override = None;
    out.gear_scale = g_target / g0;
    out.tech.zeta_d *= x_target / x_now;
    out.tech.zeta_f *= x_target / x_now;
    Ok(out)
}
