//! Cost-optimal reliability as the price of hauling capital falls.
//!
//!     cargo run --example reliability_optimum

use lunarprop::reliability::{
    capital_total_cost, optimize_reliability, reliability_cost_factor, CapitalCostInputs,
    ReliabilityParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = ReliabilityParams::default();
    println!("c_R(0.96) = {:.4}", reliability_cost_factor(0.96, &p)?);

    for t_k in [1e2, 1e3, 1e4, 1e5] {
        let c = CapitalCostInputs {
            zeta_d: 120_000.0,
            zeta_f: 40_000.0,
            m_k: 30_000.0,
            t_k,
        };
        let o = optimize_reliability(&p, &c)?;
        let at_r0 = capital_total_cost(p.r0, &p, &c)?;
        println!(
            "T_K {t_k:>8} $/kg  R_opt {:.4}  c_R {:.3}  saves {:.1}% vs R0",
            o.r_opt,
            o.c_r_at_opt,
            100.0 * (1.0 - o.total_cost / at_r0)
        );
    }
    Ok(())
}
