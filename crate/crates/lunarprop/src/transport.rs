//! Rocket-equation gear ratios over cislunar transport architectures.
//!
//! A gear ratio is the mass that must leave the origin per unit mass
//! delivered at the destination. Chained legs multiply. Round-trip legs
//! carry the vehicle's return propellant as an effective inert mass
//! fraction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Standard gravity as used throughout the model (m/s²).
pub const G0: f64 = 9.8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransportError {
    #[error("infeasible leg {from}->{to}: payload fraction {fraction:.4} <= 0")]
    InfeasibleLeg { from: Node, to: Node, fraction: f64 },
    #[error("no delta-v entry for {from}->{to}")]
    MissingDeltaV { from: Node, to: Node },
    #[error("invalid stage `{label}`: {reason}")]
    InvalidStage { label: String, reason: &'static str },
    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),
    #[error("invalid delta-v table: {0}")]
    InvalidDeltaV(String),
    #[error("unknown stage `{0}`")]
    UnknownStage(String),
}

/// Cislunar locations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Node {
    Earth,
    Leo,
    Gto,
    Geo,
    Dro,
    Eml1,
    Llo,
    Ls,
}

impl Node {
    pub const ALL: [Node; 8] = [
        Node::Earth,
        Node::Leo,
        Node::Gto,
        Node::Geo,
        Node::Dro,
        Node::Eml1,
        Node::Llo,
        Node::Ls,
    ];

    /// Points of sale in report order, nearest the Moon first.
    pub const SALE: [Node; 7] = [
        Node::Ls,
        Node::Llo,
        Node::Eml1,
        Node::Geo,
        Node::Dro,
        Node::Gto,
        Node::Leo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Node::Earth => "EARTH",
            Node::Leo => "LEO",
            Node::Gto => "GTO",
            Node::Geo => "GEO",
            Node::Dro => "DRO",
            Node::Eml1 => "EML1",
            Node::Llo => "LLO",
            Node::Ls => "LS",
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown node `{0}`")]
pub struct UnknownNode(pub String);

impl FromStr for Node {
    type Err = UnknownNode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Node::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| UnknownNode(s.to_string()))
    }
}

/// One Δv entry. Symmetric entries answer both directions unless an
/// asymmetric entry for the reverse direction exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaVEntry {
    pub from: Node,
    pub to: Node,
    pub dv: f64,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub symmetric: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

/// Δv lookup table in m/s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<DeltaVEntry>", into = "Vec<DeltaVEntry>")]
pub struct DeltaVTable {
    entries: Vec<DeltaVEntry>,
    exact: BTreeMap<(Node, Node), f64>,
    mirrored: BTreeMap<(Node, Node), f64>,
}

impl DeltaVTable {
    pub fn new(entries: Vec<DeltaVEntry>) -> Result<Self, TransportError> {
        let mut exact = BTreeMap::new();
        let mut mirrored = BTreeMap::new();
        for e in &entries {
            if !(e.dv >= 0.0 && e.dv.is_finite()) {
                return Err(TransportError::InvalidDeltaV(format!(
                    "{}->{} has dv {}",
                    e.from, e.to, e.dv
                )));
            }
            if e.from == e.to {
                return Err(TransportError::InvalidDeltaV(format!(
                    "self pair {}",
                    e.from
                )));
            }
            if exact.insert((e.from, e.to), e.dv).is_some() {
                return Err(TransportError::InvalidDeltaV(format!(
                    "duplicate entry {}->{}",
                    e.from, e.to
                )));
            }
            if e.symmetric {
                mirrored.insert((e.to, e.from), e.dv);
            }
        }
        Ok(Self {
            entries,
            exact,
            mirrored,
        })
    }

    pub fn entries(&self) -> &[DeltaVEntry] {
        &self.entries
    }

    /// Δv between two nodes; zero for a node to itself.
    pub fn get(&self, from: Node, to: Node) -> Result<f64, TransportError> {
        if from == to {
            return Ok(0.0);
        }
        self.exact
            .get(&(from, to))
            .or_else(|| self.mirrored.get(&(from, to)))
            .copied()
            .ok_or(TransportError::MissingDeltaV { from, to })
    }

    /// Copy with one pair replaced (or added) symmetrically.
    pub fn with(&self, from: Node, to: Node, dv: f64) -> Result<Self, TransportError> {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .filter(|e| !((e.from, e.to) == (from, to) || (e.from, e.to) == (to, from)))
            .cloned()
            .collect();
        entries.push(DeltaVEntry {
            from,
            to,
            dv,
            symmetric: true,
        });
        Self::new(entries)
    }
}

impl TryFrom<Vec<DeltaVEntry>> for DeltaVTable {
    type Error = TransportError;

    fn try_from(v: Vec<DeltaVEntry>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<DeltaVTable> for Vec<DeltaVEntry> {
    fn from(t: DeltaVTable) -> Self {
        t.entries
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PropellantClass {
    #[default]
    Chemical,
    Electric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropulsionStage {
    pub label: String,
    /// Specific impulse (s).
    pub isp: f64,
    /// Inert mass fraction.
    pub imf: f64,
    #[serde(default)]
    pub class: PropellantClass,
}

impl PropulsionStage {
    pub fn new(
        label: impl Into<String>,
        isp: f64,
        imf: f64,
        class: PropellantClass,
    ) -> Result<Self, TransportError> {
        let s = Self {
            label: label.into(),
            isp,
            imf,
            class,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), TransportError> {
        let bad = |reason| TransportError::InvalidStage {
            label: self.label.clone(),
            reason,
        };
        if !(self.isp > 0.0 && self.isp.is_finite()) {
            return Err(bad("isp must be positive"));
        }
        if !(self.imf > 0.0 && self.imf < 1.0) {
            return Err(bad("imf must lie in (0, 1)"));
        }
        Ok(())
    }

    fn exhaust_velocity(&self) -> f64 {
        G0 * self.isp
    }
}

/// IMF including the propellant needed to fly the empty vehicle home.
pub fn effective_imf(stage: &PropulsionStage, dv_return: f64) -> f64 {
    stage.imf * (dv_return / stage.exhaust_velocity()).exp()
}

/// Delivered mass per unit initial mass. Values ≤ 0 are returned as-is.
pub fn payload_fraction(stage: &PropulsionStage, dv: f64) -> f64 {
    payload_fraction_with(stage, dv, stage.imf)
}

fn payload_fraction_with(stage: &PropulsionStage, dv: f64, imf_eff: f64) -> f64 {
    if dv == 0.0 {
        return 1.0;
    }
    (1.0 + imf_eff) * (-dv / stage.exhaust_velocity()).exp() - imf_eff
}

/// Gear ratio of a single leg for a given (possibly effective) IMF.
pub fn leg_gear_ratio(
    stage: &PropulsionStage,
    dv: f64,
    imf_eff: f64,
) -> Result<f64, TransportError> {
    let p = payload_fraction_with(stage, dv, imf_eff);
    if p <= 0.0 {
        return Err(TransportError::InfeasibleLeg {
            from: Node::Earth,
            to: Node::Earth,
            fraction: p,
        });
    }
    Ok(1.0 / p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Leg {
    pub from: Node,
    pub to: Node,
    pub stage: PropulsionStage,
    #[serde(default)]
    pub round_trip: bool,
}

impl Leg {
    pub fn new(from: Node, to: Node, stage: PropulsionStage, round_trip: bool) -> Self {
        Self {
            from,
            to,
            stage,
            round_trip,
        }
    }

    pub fn gear(&self, dvs: &DeltaVTable) -> Result<f64, TransportError> {
        let dv = dvs.get(self.from, self.to)?;
        let imf = if self.round_trip {
            effective_imf(&self.stage, dvs.get(self.to, self.from)?)
        } else {
            self.stage.imf
        };
        leg_gear_ratio(&self.stage, dv, imf).map_err(|e| match e {
            TransportError::InfeasibleLeg { fraction, .. } => TransportError::InfeasibleLeg {
                from: self.from,
                to: self.to,
                fraction,
            },
            other => other,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlightCount {
    pub flights_per_delivery: u32,
    /// Tonnes carried per flight.
    pub payload_per_flight: f64,
    /// Tonnes delivered at the destination.
    pub delivered: f64,
}

/// How mass gets from one node to another. At most one of the override
/// and the flight-count model may be set, and either excludes legs.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportArchitecture {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub legs: Vec<Leg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_gear_override: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flight_count_model: Option<FlightCount>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GearResult {
    pub gear_mass: f64,
    pub per_leg: Vec<f64>,
}

impl TransportArchitecture {
    pub fn legs(legs: Vec<Leg>) -> Self {
        Self {
            legs,
            ..Self::default()
        }
    }

    pub fn fixed(gear: f64) -> Self {
        Self {
            fixed_gear_override: Some(gear),
            ..Self::default()
        }
    }

    pub fn flights(model: FlightCount) -> Self {
        Self {
            flight_count_model: Some(model),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), TransportError> {
        let bad = |m: &str| Err(TransportError::InvalidArchitecture(m.to_string()));
        match (
            self.legs.is_empty(),
            self.fixed_gear_override,
            self.flight_count_model,
        ) {
            (_, Some(_), Some(_)) => return bad("both a fixed gear and a flight-count model"),
            (false, Some(_), _) | (false, _, Some(_)) => {
                return bad("legs cannot be combined with a fixed gear or flight count")
            }
            (_, Some(g), _) if !(g >= 1.0 && g.is_finite()) => {
                return bad("fixed gear must be >= 1")
            }
            (_, _, Some(f))
                if f.flights_per_delivery == 0
                    || !(f.payload_per_flight > 0.0)
                    || !(f.delivered > 0.0) =>
            {
                return bad("flight count needs >= 1 flight and positive payloads")
            }
            _ => {}
        }
        for leg in &self.legs {
            leg.stage.validate()?;
            if leg.from == leg.to {
                return bad("leg origin equals destination");
            }
        }
        for w in self.legs.windows(2) {
            if w[0].to != w[1].from {
                return Err(TransportError::InvalidArchitecture(format!(
                    "legs do not chain: {} then {}",
                    w[0].to, w[1].from
                )));
            }
        }
        Ok(())
    }

    pub fn origin(&self) -> Option<Node> {
        self.legs.first().map(|l| l.from)
    }

    pub fn destination(&self) -> Option<Node> {
        self.legs.last().map(|l| l.to)
    }

    /// Sum of Δv flown on electric-propulsion legs.
    pub fn electric_dv(&self, dvs: &DeltaVTable) -> Result<f64, TransportError> {
        self.legs
            .iter()
            .filter(|l| l.stage.class == PropellantClass::Electric)
            .map(|l| dvs.get(l.from, l.to))
            .sum()
    }

    /// Same route with every electric stage replaced by `fallback`.
    pub fn without_electric(&self, fallback: &PropulsionStage) -> Self {
        let legs = self
            .legs
            .iter()
            .map(|l| {
                let mut l = l.clone();
                if l.stage.class == PropellantClass::Electric {
                    l.stage = fallback.clone();
                }
                l
            })
            .collect();
        Self {
            legs,
            ..self.clone()
        }
    }
}

/// Gear ratio on mass for a whole architecture. An empty architecture is
/// the identity (delivery to the node itself).
pub fn architecture_gear_ratio(
    arch: &TransportArchitecture,
    dvs: &DeltaVTable,
) -> Result<GearResult, TransportError> {
    arch.validate()?;
    if let Some(g) = arch.fixed_gear_override {
        return Ok(GearResult {
            gear_mass: g,
            per_leg: Vec::new(),
        });
    }
    if let Some(f) = arch.flight_count_model {
        return Ok(GearResult {
            gear_mass: f64::from(f.flights_per_delivery) * f.payload_per_flight / f.delivered,
            per_leg: Vec::new(),
        });
    }
    let per_leg = arch
        .legs
        .iter()
        .map(|l| l.gear(dvs))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GearResult {
        gear_mass: per_leg.iter().product(),
        per_leg,
    })
}

/// Capital delivery cost per kg normalized by the propellant launch cost.
pub fn gear_ratio_on_cost(l_k: f64, gear_mass_k: f64, l_p: f64) -> f64 {
    l_k * gear_mass_k / l_p
}

/// Γ_X: lunar delivery gear over terrestrial delivery gear.
pub fn propellant_use_ratio(
    lunar: &TransportArchitecture,
    terrestrial: &TransportArchitecture,
    dvs: &DeltaVTable,
) -> Result<f64, TransportError> {
    Ok(architecture_gear_ratio(lunar, dvs)?.gear_mass
        / architecture_gear_ratio(terrestrial, dvs)?.gear_mass)
}

/// Route definition with stages referenced by name, as stored in config.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RouteSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub legs: Vec<LegSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_gear: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flights: Option<FlightCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegSpec {
    pub from: Node,
    pub to: Node,
    pub stage: String,
    #[serde(default)]
    pub round_trip: bool,
}

impl RouteSpec {
    pub fn resolve(
        &self,
        stages: &BTreeMap<String, PropulsionStage>,
    ) -> Result<TransportArchitecture, TransportError> {
        let legs = self
            .legs
            .iter()
            .map(|l| {
                let stage = stages
                    .get(&l.stage)
                    .cloned()
                    .ok_or_else(|| TransportError::UnknownStage(l.stage.clone()))?;
                Ok(Leg::new(l.from, l.to, stage, l.round_trip))
            })
            .collect::<Result<Vec<_>, TransportError>>()?;
        let arch = TransportArchitecture {
            legs,
            fixed_gear_override: self.fixed_gear,
            flight_count_model: self.flights,
        };
        arch.validate()?;
        Ok(arch)
    }
}

/// Every route the cost model needs: lunar product delivery to each point
/// of sale, terrestrial delivery from LEO, and capital delivery to LS.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportNetwork {
    pub stages: BTreeMap<String, PropulsionStage>,
    /// Chemical stage used on electric legs when SEP is switched off.
    pub chemical_fallback: String,
    pub delta_v: DeltaVTable,
    pub lunar: BTreeMap<Node, RouteSpec>,
    pub terrestrial: BTreeMap<Node, RouteSpec>,
    pub capital: RouteSpec,
}

/// Network with stage names resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedNetwork {
    pub delta_v: DeltaVTable,
    pub lunar: BTreeMap<Node, TransportArchitecture>,
    pub terrestrial: BTreeMap<Node, TransportArchitecture>,
    pub capital: TransportArchitecture,
    pub fallback: PropulsionStage,
}

impl TransportNetwork {
    pub fn resolve(&self) -> Result<ResolvedNetwork, TransportError> {
        for s in self.stages.values() {
            s.validate()?;
        }
        let fallback = self
            .stages
            .get(&self.chemical_fallback)
            .cloned()
            .ok_or_else(|| TransportError::UnknownStage(self.chemical_fallback.clone()))?;
        let map = |routes: &BTreeMap<Node, RouteSpec>| {
            routes
                .iter()
                .map(|(n, r)| Ok((*n, r.resolve(&self.stages)?)))
                .collect::<Result<BTreeMap<_, _>, TransportError>>()
        };
        let net = ResolvedNetwork {
            delta_v: self.delta_v.clone(),
            lunar: map(&self.lunar)?,
            terrestrial: map(&self.terrestrial)?,
            capital: self.capital.resolve(&self.stages)?,
            fallback,
        };
        for (node, arch) in &net.lunar {
            check_ends(arch, Node::Ls, *node)?;
        }
        for (node, arch) in &net.terrestrial {
            check_ends(arch, Node::Leo, *node)?;
        }
        for anchor in [Node::Ls, Node::Leo] {
            if !net.lunar.contains_key(&anchor) || !net.terrestrial.contains_key(&anchor) {
                return Err(TransportError::InvalidArchitecture(format!(
                    "routes to {anchor} are required"
                )));
            }
        }
        Ok(net)
    }
}

fn check_ends(arch: &TransportArchitecture, from: Node, to: Node) -> Result<(), TransportError> {
    match (arch.origin(), arch.destination()) {
        (None, None) => Ok(()),
        (Some(a), Some(b)) if a == from && b == to => Ok(()),
        (a, b) => Err(TransportError::InvalidArchitecture(format!(
            "route to {to} runs {a:?}->{b:?}, expected {from}->{to}"
        ))),
    }
}

impl ResolvedNetwork {
    /// Nodes served by both the lunar and terrestrial route sets.
    pub fn sale_nodes(&self) -> Vec<Node> {
        Node::SALE
            .into_iter()
            .filter(|n| self.lunar.contains_key(n) && self.terrestrial.contains_key(n))
            .collect()
    }

    pub fn lunar_route(&self, node: Node, sep: bool) -> Option<TransportArchitecture> {
        let arch = self.lunar.get(&node)?;
        Some(if sep {
            arch.clone()
        } else {
            arch.without_electric(&self.fallback)
        })
    }

    pub fn capital_gear(&self) -> Result<f64, TransportError> {
        Ok(architecture_gear_ratio(&self.capital, &self.delta_v)?.gear_mass)
    }

    pub fn terrestrial_gear(&self, node: Node) -> Result<f64, TransportError> {
        let arch = self.terrestrial.get(&node).ok_or_else(|| {
            TransportError::InvalidArchitecture(format!("no terrestrial route to {node}"))
        })?;
        Ok(architecture_gear_ratio(arch, &self.delta_v)?.gear_mass)
    }

    pub fn lunar_gear(&self, node: Node, sep: bool) -> Result<f64, TransportError> {
        let arch = self.lunar_route(node, sep).ok_or_else(|| {
            TransportError::InvalidArchitecture(format!("no lunar route to {node}"))
        })?;
        Ok(architecture_gear_ratio(&arch, &self.delta_v)?.gear_mass)
    }

    /// Share of the LS→LEO electric Δv flown on the way to `node`. Zero
    /// when the LEO route has no electric legs.
    pub fn electric_fraction(&self, node: Node) -> Result<f64, TransportError> {
        let total = match self.lunar.get(&Node::Leo) {
            Some(a) => a.electric_dv(&self.delta_v)?,
            None => 0.0,
        };
        if total <= 0.0 {
            return Ok(0.0);
        }
        let here = match self.lunar.get(&node) {
            Some(a) => a.electric_dv(&self.delta_v)?,
            None => 0.0,
        };
        Ok((here / total).min(1.0))
    }
}
