//! Load a TOML run config, price it and print the fully resolved form.
//!
//!     cargo run --example run_from_config

use lunarprop::config::RunConfig;
use lunarprop::costmodel::{advantage_years, run_scenario};

const CONFIG: &str = r#"
study = "M"
market = "MODERATE"

[variant]
r0 = 0.85

[econ]
b = 0.8

[[delta_v]]
from = "LLO"
to = "GTO"
dv = 1200.0
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig::from_toml(CONFIG)?;
    let records = run_scenario(&cfg.scenario()?, &cfg.resolved_network()?)?;
    println!("{:?}", advantage_years(&records));

    let eff = cfg.effective()?;
    let text = eff.to_toml();
    println!("effective config is {} lines", text.lines().count());
    let again = RunConfig::from_toml(&text)?;
    assert_eq!(again.scenario()?, cfg.scenario()?);
    Ok(())
}
