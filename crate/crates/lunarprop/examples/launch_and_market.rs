//! Launch cost decline and lunar demand growth for the three markets.
//!
//!     cargo run --example launch_and_market

use lunarprop::catalog;
use lunarprop::costmodel::MarketName;
use lunarprop::scaling::{implied_elasticity, launch_cost, LaunchModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = catalog::default_resolved_network()?;
    for m in MarketName::ALL {
        let model = LaunchModel::with_u30(2000.0, m.u30())?;
        let ms = catalog::market_scenario(m, &net, true, 2000.0)?;
        println!(
            "{:<11} tau_L {:.3} y  L(10) {:>7.1}  L(30) {:>6.1} $/kg  elasticity {:.3}  D30 {:.3e} kg/y",
            m.as_str(),
            ms.tau_l,
            launch_cost(10.0, &model),
            ms.l30,
            implied_elasticity(&model, 30.0)?,
            ms.d30,
        );
    }
    Ok(())
}
