//! Exponential cost of reliability and the cost-optimal as-built reliability.
//!
//! Building hardware to a reliability `r` above the baseline `r0` costs
//! `c_R = exp[(1 - E_R)(r - r0)/(r_max - r)]` times the baseline. Failed
//! units are replaced at a rate that scales as `1/r`, so spares add
//! fabrication and transport cost. The optimum balances the two.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReliabilityError {
    #[error("reliability {r} outside (0, {r_max})")]
    Domain { r: f64, r_max: f64 },
    #[error("invalid reliability parameters: {0}")]
    Params(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReliabilityParams {
    pub r0: f64,
    pub r_max: f64,
    pub e_r: f64,
}

impl Default for ReliabilityParams {
    fn default() -> Self {
        Self::new(0.78)
    }
}

impl ReliabilityParams {
    pub fn new(r0: f64) -> Self {
        Self {
            r0,
            r_max: 1.0,
            e_r: 0.5,
        }
    }

    pub fn validate(&self) -> Result<(), ReliabilityError> {
        if !(0.0 < self.r0 && self.r0 < self.r_max && self.r_max <= 1.0) {
            return Err(ReliabilityError::Params("need 0 < r0 < r_max <= 1"));
        }
        if !(0.0..=1.0).contains(&self.e_r) {
            return Err(ReliabilityError::Params("e_r must lie in [0, 1]"));
        }
        Ok(())
    }

    fn check(&self, r: f64) -> Result<(), ReliabilityError> {
        if r > 0.0 && r < self.r_max {
            Ok(())
        } else {
            Err(ReliabilityError::Domain {
                r,
                r_max: self.r_max,
            })
        }
    }
}

/// Inputs to the capital cost trade. Costs in $/kg, mass in kg.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapitalCostInputs {
    pub zeta_d: f64,
    pub zeta_f: f64,
    pub m_k: f64,
    /// Capital transportation cost to LS, $/kg.
    pub t_k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReliabilityOptimum {
    pub r_opt: f64,
    pub total_cost: f64,
    pub c_r_at_opt: f64,
}

pub fn reliability_cost_factor(r: f64, p: &ReliabilityParams) -> Result<f64, ReliabilityError> {
    p.check(r)?;
    Ok(((1.0 - p.e_r) * (r - p.r0) / (p.r_max - r)).exp())
}

/// Development plus fabrication (with spares) plus transport of spares.
pub fn capital_total_cost(
    r: f64,
    p: &ReliabilityParams,
    c: &CapitalCostInputs,
) -> Result<f64, ReliabilityError> {
    let c_r = reliability_cost_factor(r, p)?;
    Ok((c.zeta_d + c.zeta_f / r) * c.m_k * c_r + c.m_k / r * c.t_k)
}

/// Search settings for [`optimize_reliability_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub lower: f64,
    /// Distance kept from `r_max`.
    pub upper_gap: f64,
    pub step: f64,
    /// Grid offset as a fraction of `step`.
    pub offset: f64,
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            lower: 0.01,
            upper_gap: 1e-6,
            step: 1e-3,
            offset: 0.0,
            tol: 1e-6,
        }
    }
}

pub fn optimize_reliability(
    p: &ReliabilityParams,
    c: &CapitalCostInputs,
) -> Result<ReliabilityOptimum, ReliabilityError> {
    optimize_reliability_with(p, c, &SearchOptions::default())
}

/// Grid scan to bracket the global minimum, then golden-section refinement.
pub fn optimize_reliability_with(
    p: &ReliabilityParams,
    c: &CapitalCostInputs,
    opts: &SearchOptions,
) -> Result<ReliabilityOptimum, ReliabilityError> {
    p.validate()?;
    let lo = opts.lower;
    let hi = p.r_max - opts.upper_gap;
    let cost = |r: f64| capital_total_cost(r, p, c);

    let start = lo + opts.offset * opts.step;
    let mut grid: Vec<f64> = (0..)
        .map(|i| start + i as f64 * opts.step)
        .take_while(|&r| r <= hi)
        .collect();
    if grid.first() != Some(&lo) {
        grid.insert(0, lo);
    }
    let mut best = (0, f64::INFINITY);
    for (i, &r) in grid.iter().enumerate() {
        let v = cost(r)?;
        if v < best.1 {
            best = (i, v);
        }
    }
    let i = best.0;
    let mut a = grid[i.saturating_sub(1)];
    let mut b = grid.get(i + 1).copied().unwrap_or(hi);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = cost(x1)?;
    let mut f2 = cost(x2)?;
    while b - a > opts.tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = cost(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = cost(x2)?;
        }
    }
    let mut r_opt = 0.5 * (a + b);
    let mut total = cost(r_opt)?;
    if best.1 < total {
        r_opt = grid[i];
        total = best.1;
    }
    Ok(ReliabilityOptimum {
        r_opt,
        total_cost: total,
        c_r_at_opt: reliability_cost_factor(r_opt, p)?,
    })
}
