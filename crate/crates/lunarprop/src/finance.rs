//! Debt during buildup, amortization over the operating life, and the
//! transit-time penalty for slow electric delivery.
//!
//! Buildup outlays are paid at the start of each year and compound to the
//! end of buildup. The launch of the capital is paid at the end of buildup.
//! The resulting debt is retired by equal end-of-year payments.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FinanceError {
    #[error("invalid discount schedule: {0}")]
    Schedule(&'static str),
    #[error("{0}")]
    Domain(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateMode {
    LinearDeclining,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiscountSchedule {
    pub r_start: f64,
    pub r_end: f64,
    pub span: f64,
    pub mode: RateMode,
}

impl Default for DiscountSchedule {
    fn default() -> Self {
        Self {
            r_start: 0.217,
            r_end: 0.12,
            span: 30.0,
            mode: RateMode::LinearDeclining,
        }
    }
}

impl DiscountSchedule {
    pub fn constant(rate: f64) -> Self {
        Self {
            r_start: rate,
            r_end: rate,
            span: 30.0,
            mode: RateMode::Constant,
        }
    }

    /// Public-private partnership: a flat 12%.
    pub fn ppp() -> Self {
        Self::constant(0.12)
    }

    pub fn validate(&self) -> Result<(), FinanceError> {
        match self.mode {
            RateMode::Constant if (0.0..1.0).contains(&self.r_start) => Ok(()),
            RateMode::Constant => Err(FinanceError::Schedule("rate must lie in [0, 1)")),
            RateMode::LinearDeclining => {
                if !(0.0 <= self.r_end && self.r_end <= self.r_start && self.r_start < 1.0) {
                    Err(FinanceError::Schedule("need 0 <= r_end <= r_start < 1"))
                } else if !(self.span > 0.0) {
                    Err(FinanceError::Schedule("span must be positive"))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Rate for the vintage starting at `t`.
    pub fn rate_at(&self, t: f64) -> f64 {
        match self.mode {
            RateMode::Constant => self.r_start,
            RateMode::LinearDeclining => {
                let s = (t / self.span).clamp(0.0, 1.0);
                self.r_start - (self.r_start - self.r_end) * s
            }
        }
    }
}

/// Debt at the start of production. `annual_outlays[i]` is paid at the
/// start of buildup year `i` and compounds at `rates[i]` from then on.
pub fn accumulate_buildup_debt(
    annual_outlays: &[f64],
    launch_cost_total: f64,
    rates: &[f64],
) -> f64 {
    let n = annual_outlays.len();
    let grown: f64 = annual_outlays
        .iter()
        .enumerate()
        .map(|(i, o)| {
            (i..n)
                .map(|k| 1.0 + rates.get(k).copied().unwrap_or(0.0))
                .product::<f64>()
                * o
        })
        .sum();
    grown + launch_cost_total
}

/// Future value of `years` equal start-of-year payments. `years` may be
/// fractional; for whole years this equals [`accumulate_buildup_debt`].
pub fn annuity_due_fv(payment: f64, years: f64, rate: f64) -> f64 {
    if rate == 0.0 {
        payment * years
    } else {
        payment * ((1.0 + rate).powf(years) - 1.0) / rate * (1.0 + rate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amortization {
    pub payment: f64,
    pub total_interest: f64,
}

/// Equal end-of-year payments retiring `debt` over `life` years.
pub fn amortize(debt: f64, life: f64, rate: f64) -> Result<Amortization, FinanceError> {
    if !(life >= 1.0) {
        return Err(FinanceError::Domain("life must be at least one year"));
    }
    if rate == 0.0 {
        return Ok(Amortization {
            payment: debt / life,
            total_interest: 0.0,
        });
    }
    let payment = debt * rate / (1.0 - (1.0 + rate).powf(-life));
    Ok(Amortization {
        payment,
        total_interest: payment * life - debt,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinanceResult {
    pub debt_at_production: f64,
    pub annual_payment: f64,
    pub total_interest: f64,
    /// $/kg of lifetime product.
    pub f: f64,
    /// f normalized by the launch cost.
    pub xi: f64,
}

/// f = interest per kg of lifetime product; ξ = f / L_p.
pub fn specific_finance_cost(
    total_interest: f64,
    m_p_total: f64,
    l_p: f64,
) -> Result<(f64, f64), FinanceError> {
    if !(m_p_total > 0.0) {
        return Err(FinanceError::Domain("product mass must be positive"));
    }
    let f = total_interest / m_p_total;
    Ok((f, f / l_p))
}

/// Inputs for one capital vintage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vintage {
    /// Capital acquisition cost ($), spread evenly over buildup.
    pub capital: f64,
    /// Labor during each buildup year ($/y).
    pub annual_labor: f64,
    /// Capital launch cost paid at the end of buildup ($).
    pub launch: f64,
    pub buildup: f64,
    pub life: f64,
    /// Lifetime product (kg).
    pub m_p_total: f64,
    pub rate: f64,
}

/// Full finance chain for a vintage at a single frozen rate.
pub fn finance_vintage(v: &Vintage, l_p: f64) -> Result<FinanceResult, FinanceError> {
    if !(v.buildup > 0.0) {
        return Err(FinanceError::Domain("buildup must be positive"));
    }
    let per_year = v.capital / v.buildup + v.annual_labor;
    let outlays = per_year * v.buildup;
    let grown = annuity_due_fv(per_year, v.buildup, v.rate);
    let buildup_interest = grown - outlays;
    let debt = grown + v.launch;
    let am = amortize(debt, v.life, v.rate)?;
    let total_interest = buildup_interest + am.total_interest;
    let (f, xi) = specific_finance_cost(total_interest, v.m_p_total, l_p)?;
    Ok(FinanceResult {
        debt_at_production: debt,
        annual_payment: am.payment,
        total_interest,
        f,
        xi,
    })
}

/// Cost multiplier for product in transit: the rate applied over 1.5 years
/// of the full LLO→LEO trip, prorated by Δv.
pub fn sep_transit_penalty(dv_fraction: f64, rate: f64) -> f64 {
    (1.0 + rate).powf(1.5 * dv_fraction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn schedule_endpoints() {
        let s = DiscountSchedule::default();
        assert_eq!(s.rate_at(0.0), 0.217);
        assert_relative_eq!(s.rate_at(30.0), 0.12, epsilon = 1e-12);
        assert_relative_eq!(s.rate_at(15.0), 0.1685, epsilon = 1e-12);
        assert_eq!(DiscountSchedule::ppp().rate_at(7.0), 0.12);
    }

    #[test]
    fn buildup_debt() {
        assert_eq!(accumulate_buildup_debt(&[1.0, 2.0], 5.0, &[0.0, 0.0]), 8.0);
        assert_relative_eq!(
            accumulate_buildup_debt(&[100.0], 7.0, &[0.2]),
            127.0,
            epsilon = 1e-12
        );
        let d = accumulate_buildup_debt(&[100e6; 5], 0.0, &[0.217; 5]);
        let fv = 100e6 * (1.217f64.powi(5) - 1.0) / 0.217 * 1.217;
        assert_relative_eq!(d, fv, max_relative = 1e-12);
        assert_relative_eq!(annuity_due_fv(100e6, 5.0, 0.217), d, max_relative = 1e-12);
    }

    #[test]
    fn amortization_values() {
        let a = amortize(10.0, 5.0, 0.0).unwrap();
        assert_eq!((a.payment, a.total_interest), (2.0, 0.0));
        let a = amortize(1e9, 10.0, 0.12).unwrap();
        assert_relative_eq!(a.payment, 176.98e6, max_relative = 1e-4);
        let a = amortize(1e9, 1.0, 0.217).unwrap();
        assert_relative_eq!(a.payment, 1.217e9, max_relative = 1e-12);
    }

    #[test]
    fn finance_cost_values() {
        assert_eq!(specific_finance_cost(0.0, 1.0, 2000.0).unwrap(), (0.0, 0.0));
        let (f, xi) = specific_finance_cost(500e6, 5e6, 2000.0).unwrap();
        assert_relative_eq!(f, 100.0, epsilon = 1e-12);
        assert_relative_eq!(xi, 0.05, epsilon = 1e-12);
    }

    #[test]
    fn transit_penalty() {
        assert_eq!(sep_transit_penalty(0.0, 0.2), 1.0);
        assert_eq!(sep_transit_penalty(0.7, 0.0), 1.0);
        assert_relative_eq!(sep_transit_penalty(1.0, 0.12), 1.185_297, epsilon = 1e-6);
    }
}
