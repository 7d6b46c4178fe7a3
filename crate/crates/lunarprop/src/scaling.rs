//! Learning curves, economies of scale and scope, launch cost and market
//! demand over time. Time `t` is in years from the start of sales.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalingError {
    #[error("cumulative production {s} below baseline {s0}")]
    BelowBaseline { s: f64, s0: f64 },
    #[error("{0}")]
    Domain(&'static str),
    #[error("economies-of-scope factor {0} is not positive")]
    Degenerate(f64),
}

/// Wright's-law settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LearningParams {
    /// Progress ratio: unit cost multiplier per doubling.
    pub b: f64,
    /// Cumulative production at baseline (kg).
    pub s0: f64,
}

/// Cost factor after cumulative production `s_t`.
pub fn wright_factor(s_t: f64, lp: &LearningParams) -> Result<f64, ScalingError> {
    if s_t < lp.s0 {
        return Err(ScalingError::BelowBaseline { s: s_t, s0: lp.s0 });
    }
    Ok((s_t / lp.s0).powf(lp.b.log2()))
}

/// Closed-form integral of exponentially growing production plus `s0`.
pub fn cumulative_production(t: f64, p0: f64, tau: f64, s0: f64) -> f64 {
    p0 * tau * (t / tau).exp_m1() + s0
}

pub fn eos_factor(x: f64, x0: f64, a: f64) -> f64 {
    (x / x0).powf(a - 1.0)
}

/// Metals-industry ramp β(t): zero, then linear, then flat.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BetaSchedule {
    pub start: f64,
    pub end: f64,
    pub max: f64,
}

impl Default for BetaSchedule {
    fn default() -> Self {
        Self {
            start: 10.0,
            end: 15.0,
            max: 0.3,
        }
    }
}

impl BetaSchedule {
    pub const OFF: Self = Self {
        start: 0.0,
        end: 0.0,
        max: 0.0,
    };

    pub fn at(&self, t: f64) -> f64 {
        if t < self.start {
            0.0
        } else if t < self.end {
            self.max * (t - self.start) / (self.end - self.start)
        } else {
            self.max
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleParams {
    /// EOS exponent.
    pub a: f64,
    /// Baseline production rate (kg/y).
    pub x0: f64,
    /// Firm-level EOS cap (kg/y); `None` means no cap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_max: Option<f64>,
    pub f_overlap: f64,
    pub f_firm_soe: f64,
    pub beta: BetaSchedule,
}

impl ScaleParams {
    pub fn new(x0: f64) -> Self {
        Self {
            a: 0.6,
            x0,
            x_max: None,
            f_overlap: 0.5,
            f_firm_soe: 0.2,
            beta: BetaSchedule::default(),
        }
    }
}

/// Multipliers on the hardware (x) and labor (ω) cost parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleFactors {
    pub hardware: f64,
    pub labor: f64,
}

/// EOS and SOE multipliers at production rate `x_props` and time `t`.
pub fn scale_factors(x_props: f64, t: f64, sp: &ScaleParams) -> Result<ScaleFactors, ScalingError> {
    if !(x_props > 0.0) {
        return Err(ScalingError::Domain("production rate must be positive"));
    }
    let half = (sp.a - 1.0) / 2.0;
    let metals = sp.beta.at(t) * x_props;
    let firm = sp.x_max.map_or(x_props, |m| x_props.min(m));
    let soe = 1.0 - sp.f_firm_soe * metals / x_props;
    if soe <= 0.0 {
        return Err(ScalingError::Degenerate(soe));
    }
    let supply = ((x_props + sp.f_overlap * metals) / sp.x0).powf(half);
    Ok(ScaleFactors {
        hardware: supply * (firm / sp.x0).powf(half) * soe,
        labor: (firm / sp.x0).powf(sp.a - 1.0) * soe,
    })
}

/// Hardware and labor cost parameters with EOS and SOE applied.
pub fn scaled_costs(
    x_raw: f64,
    omega_raw: f64,
    x_props: f64,
    t: f64,
    sp: &ScaleParams,
) -> Result<(f64, f64), ScalingError> {
    let f = scale_factors(x_props, t, sp)?;
    Ok((x_raw * f.hardware, omega_raw * f.labor))
}

/// EOS only, with no economies of scope.
pub fn eos_only_costs(x_raw: f64, omega_raw: f64, x_props: f64, sp: &ScaleParams) -> (f64, f64) {
    let half = (sp.a - 1.0) / 2.0;
    let firm = sp.x_max.map_or(x_props, |m| x_props.min(m));
    let hardware = (x_props / sp.x0).powf(half) * (firm / sp.x0).powf(half);
    (
        x_raw * hardware,
        omega_raw * (firm / sp.x0).powf(sp.a - 1.0),
    )
}

/// Exponential time constant that takes `u0` to `u30` in 30 years.
pub fn fit_tau(u30: f64, u0: f64) -> Result<f64, ScalingError> {
    if !(u0 > 0.0 && u30 > u0) {
        return Err(ScalingError::Domain("need u30 > u0 > 0"));
    }
    Ok(30.0 / (u30 / u0).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaunchModel {
    /// Initial launch cost ($/kg).
    pub l0: f64,
    /// Initial up-mass rate (kg/y).
    pub u0: f64,
    /// Cumulative launched mass at t = 0 (kg).
    pub s0: f64,
    pub tau_l: f64,
    pub a: f64,
    pub b: f64,
}

/// 31 launches of 22.8 t per year.
pub const U0_KG_PER_YEAR: f64 = 31.0 * 22_800.0;
/// 171 launches of 22.8 t to date.
pub const S0_KG: f64 = 171.0 * 22_800.0;

impl LaunchModel {
    /// Model anchored to a year-30 up-mass rate (kg/y).
    pub fn with_u30(l0: f64, u30: f64) -> Result<Self, ScalingError> {
        Ok(Self {
            l0,
            u0: U0_KG_PER_YEAR,
            s0: S0_KG,
            tau_l: fit_tau(u30, U0_KG_PER_YEAR)?,
            a: 0.66,
            b: 0.80,
        })
    }

    pub fn upmass(&self, t: f64) -> f64 {
        self.u0 * (t / self.tau_l).exp()
    }
}

pub fn launch_cost(t: f64, m: &LaunchModel) -> f64 {
    let s = cumulative_production(t, m.u0, m.tau_l, m.s0);
    m.l0 * ((m.a - 1.0) * t / m.tau_l).exp() * (s / m.s0).powf(m.b.log2())
}

/// Price elasticity of demand implied by up-mass growth against cost decline.
pub fn implied_elasticity(m: &LaunchModel, t: f64) -> Result<f64, ScalingError> {
    let l = launch_cost(t, m);
    if !(l < m.l0) {
        return Err(ScalingError::Domain("launch cost unchanged"));
    }
    Ok(-(m.upmass(t) / m.u0).ln() / (l / m.l0).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarketModel {
    /// Demand at t = 0, the first sales year (kg/y).
    pub d1: f64,
    /// Demand at t = 30 (kg/y).
    pub d30: f64,
}

impl MarketModel {
    pub fn tau(&self) -> Result<f64, ScalingError> {
        if !(self.d1 > 0.0 && self.d30 > 0.0) || self.d30 == self.d1 {
            return Err(ScalingError::Domain("need positive, distinct d1 and d30"));
        }
        Ok(30.0 / (self.d30 / self.d1).ln())
    }
}

pub fn market_demand(t: f64, m: &MarketModel) -> Result<f64, ScalingError> {
    Ok(m.d1 * (t / m.tau()?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn wright_values() {
        let lp = LearningParams { b: 0.75, s0: 10.0 };
        assert_eq!(wright_factor(10.0, &lp).unwrap(), 1.0);
        assert_relative_eq!(wright_factor(20.0, &lp).unwrap(), 0.75, epsilon = 1e-12);
        let lp = LearningParams { b: 0.8, s0: 10.0 };
        assert_relative_eq!(wright_factor(40.0, &lp).unwrap(), 0.64, epsilon = 1e-12);
        assert!(wright_factor(5.0, &lp).is_err());
    }

    #[test]
    fn cumulative_values() {
        assert_eq!(cumulative_production(0.0, 5.0, 3.0, 7.0), 7.0);
        let s = cumulative_production(30.0, U0_KG_PER_YEAR, 4.669, S0_KG);
        assert_relative_eq!(s, 2.037e9, max_relative = 2e-3);
        let lin = cumulative_production(30.0, 5.0, 1e9, 7.0);
        assert_relative_eq!(lin, 157.0, max_relative = 1e-6);
    }

    #[test]
    fn eos_values() {
        assert_eq!(eos_factor(3.0, 3.0, 0.6), 1.0);
        assert_relative_eq!(eos_factor(10.0, 1.0, 0.6), 0.398_107, epsilon = 1e-6);
        assert_relative_eq!(eos_factor(10.0, 1.0, 0.8), 0.630_957, epsilon = 1e-6);
    }

    #[test]
    fn scope_factor() {
        let sp = ScaleParams::new(1000.0);
        let (x, w) = scaled_costs(2.0, 3.0, 1000.0, 5.0, &sp).unwrap();
        assert_eq!((x, w), (2.0, 3.0));
        let f = scale_factors(1000.0, 20.0, &sp).unwrap();
        let supply = (1.15f64).powf(-0.2);
        assert_relative_eq!(f.hardware, supply * 0.94, epsilon = 1e-12);
        assert_relative_eq!(f.labor, 0.94, epsilon = 1e-12);
    }

    #[test]
    fn firm_cap_freezes_firm_term() {
        let mut sp = ScaleParams::new(1000.0);
        sp.x_max = Some(2000.0);
        sp.beta = BetaSchedule::OFF;
        let f = scale_factors(8000.0, 0.0, &sp).unwrap();
        let expect = 8f64.powf(-0.2) * 2f64.powf(-0.2);
        assert_relative_eq!(f.hardware, expect, epsilon = 1e-12);
        assert_relative_eq!(f.labor, 2f64.powf(-0.4), epsilon = 1e-12);
    }

    #[test]
    fn beta_ramp() {
        let b = BetaSchedule::default();
        assert_eq!(b.at(9.99), 0.0);
        assert_relative_eq!(b.at(12.5), 0.15, epsilon = 1e-12);
        assert_eq!(b.at(15.0), 0.3);
        assert_eq!(b.at(29.0), 0.3);
    }

    #[test]
    fn tau_values() {
        assert_relative_eq!(fit_tau(30f64.exp(), 1.0).unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(fit_tau(436e6, 706_800.0).unwrap(), 4.669, epsilon = 1e-3);
        assert_relative_eq!(fit_tau(43.6e6, 706_800.0).unwrap(), 7.278, epsilon = 1e-3);
        assert!(fit_tau(1.0, 2.0).is_err());
    }

    #[test]
    fn market_endpoints() {
        let m = MarketModel {
            d1: 5.0,
            d30: 500.0,
        };
        assert_eq!(market_demand(0.0, &m).unwrap(), 5.0);
        assert_relative_eq!(
            market_demand(30.0, &m).unwrap(),
            500.0,
            max_relative = 1e-12
        );
        let m = MarketModel {
            d1: 1.0,
            d30: std::f64::consts::E,
        };
        assert_relative_eq!(m.tau().unwrap(), 30.0, epsilon = 1e-12);
    }

    #[test]
    fn symmetric_elasticity() {
        // constant-cost-elasticity toy: U grows e-fold while L falls e-fold
        let m = LaunchModel {
            l0: 100.0,
            u0: 1.0,
            s0: 1.0,
            tau_l: 1.0,
            a: 0.0,
            b: 1.0,
        };
        assert_relative_eq!(implied_elasticity(&m, 1.0).unwrap(), 1.0, epsilon = 1e-12);
    }
}
