use approx::assert_relative_eq;
use proptest::prelude::*;

use lunarprop::finance::{
    accumulate_buildup_debt, amortize, annuity_due_fv, finance_vintage, DiscountSchedule, RateMode,
    Vintage,
};

#[test]
fn five_years_of_outlays() {
    // $100M paid at the start of each of five years, compounding at 21.7%
    let fv = annuity_due_fv(100e6, 5.0, 0.217);
    assert_relative_eq!(fv, 936.4e6, max_relative = 1e-4);
    assert_relative_eq!(
        fv,
        accumulate_buildup_debt(&[100e6; 5], 0.0, &[0.217; 5]),
        max_relative = 1e-12
    );
}

#[test]
fn schedule_validation() {
    assert!(DiscountSchedule::constant(1.2).validate().is_err());
    let bad = DiscountSchedule {
        r_start: 0.1,
        r_end: 0.2,
        span: 30.0,
        mode: RateMode::LinearDeclining,
    };
    assert!(bad.validate().is_err());
    assert!(amortize(1.0, 0.5, 0.1).is_err());
}

proptest! {
    #[test]
    fn zero_rate_adds_nothing(cap in 1e6..1e10f64, labor in 0.0..1e8f64, launch in 0.0..1e9f64,
                              buildup in 1.0..10.0f64, life in 1.0..20.0f64) {
        let v = Vintage { capital: cap, annual_labor: labor, launch, buildup, life, m_p_total: 1e6, rate: 0.0 };
        let f = finance_vintage(&v, 1000.0).unwrap();
        prop_assert_eq!(f.total_interest, 0.0);
        prop_assert_eq!(f.xi, 0.0);
    }

    #[test]
    fn payments_discount_back_to_debt(debt in 1e3..1e12f64, life in 1u32..40, rate in 0.001..0.5f64) {
        let a = amortize(debt, f64::from(life), rate).unwrap();
        let pv: f64 = (1..=life).map(|k| a.payment / (1.0 + rate).powi(k as i32)).sum();
        prop_assert!((pv / debt - 1.0).abs() < 1e-6);
        prop_assert!((a.payment * f64::from(life) - debt - a.total_interest).abs() < 1e-6 * debt);
    }

    #[test]
    fn closed_form_matches_year_sum(p in 1.0..1e9f64, n in 1usize..12, rate in 0.0..0.4f64) {
        let sum = accumulate_buildup_debt(&vec![p; n], 0.0, &vec![rate; n]);
        prop_assert!((annuity_due_fv(p, n as f64, rate) / sum - 1.0).abs() < 1e-10);
    }

    #[test]
    fn declining_rate_stays_in_band(t in -5.0..50.0f64) {
        let s = DiscountSchedule::default();
        let r = s.rate_at(t);
        prop_assert!((0.12 - 1e-12..=0.217).contains(&r));
    }
}
