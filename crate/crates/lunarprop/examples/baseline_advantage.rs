//! Thirty sales years of the baseline technology and the first year lunar
//! propellant wins at each node, for every market.
//!
//!     cargo run --example baseline_advantage

use lunarprop::catalog;
use lunarprop::costmodel::{advantage_years, run_scenario, MarketName, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = catalog::default_resolved_network()?;
    let tech = catalog::load_study("BASELINE")?;

    for m in MarketName::ALL {
        let records = run_scenario(&Scenario::new(tech.clone(), m), &net)?;
        let first = &records[0].state;
        let last = &records[records.len() - 1].state;
        println!("{}: psi0 {:.3} -> {:.3}", m.as_str(), first.psi0, last.psi0);
        for (node, year) in advantage_years(&records) {
            let y = year.map_or("never".to_string(), |y| y.to_string());
            println!("  {node:>5}  {y}");
        }
    }
    Ok(())
}
