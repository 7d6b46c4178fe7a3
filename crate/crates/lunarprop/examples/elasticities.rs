//! Sensitivity of the year-1 cost ratio in three capital regimes.
//!
//!     cargo run --example elasticities

use lunarprop::costmodel::{MarketName, Scenario};
use lunarprop::{catalog, exhibits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = catalog::default_resolved_network()?;
    let s = Scenario::new(catalog::load_study("BASELINE")?, MarketName::Optimistic);

    for ratio in exhibits::REGIMES {
        print!("G/x = {ratio:<5}");
        for (p, e) in exhibits::elasticity_row(&s, &net, ratio)? {
            print!("  {}={e:+.3}", p.as_str());
        }
        println!();
    }
    Ok(())
}
