//! Buildup debt, amortization and the finance cost ratio of one vintage.
//!
//!     cargo run --example vintage_finance

use lunarprop::finance::{amortize, annuity_due_fv, finance_vintage, DiscountSchedule, Vintage};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sched = DiscountSchedule::default();
    for t in [0.0, 10.0, 20.0, 29.0] {
        println!("rate for vintage at t={t:>4}: {:.4}", sched.rate_at(t));
    }

    // five equal $100M outlays at the start of each buildup year
    let debt = annuity_due_fv(100e6, 5.0, 0.217);
    let a = amortize(debt, 10.0, 0.217)?;
    println!(
        "debt {:.1} $M, payment {:.1} $M/y, interest {:.1} $M",
        debt / 1e6,
        a.payment / 1e6,
        a.total_interest / 1e6
    );

    let v = Vintage {
        capital: 4.8e9,
        annual_labor: 50e6,
        launch: 0.5e9,
        buildup: 5.0,
        life: 10.0,
        m_p_total: 5e6,
        rate: 0.217,
    };
    let f = finance_vintage(&v, 2000.0)?;
    println!("xi = {:.3} (finance cost per kg over launch cost)", f.xi);
    Ok(())
}
