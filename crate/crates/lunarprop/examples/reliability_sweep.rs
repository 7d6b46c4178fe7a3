//! Parallel sweep of baseline reliability for the two mining approaches,
//! written as CSV to a temporary directory.
//!
//!     cargo run --example reliability_sweep

use lunarprop::config::{RunConfig, SweepParam, SweepSpec};
use lunarprop::exhibits::{advantage_from, series_report};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec {
        parameter: SweepParam::R0,
        values: vec![0.55, 0.70, 0.85],
    };
    let net = lunarprop::catalog::default_resolved_network()?;
    let mut series = Vec::new();
    for study in ["S", "CD"] {
        let cfg = RunConfig::from_toml(&format!(
            "study = \"{study}\"\n[econ.discount]\nmode = \"constant\"\nr_start = 0.12\n"
        ))?;
        for (label, s) in spec.scenarios(&cfg.scenario()?) {
            series.push((format!("{study} {label}"), s));
        }
    }
    let report = series_report("sweep", &series, &net)?;

    let dir = std::env::temp_dir().join("lunarprop-sweep");
    for p in report.write_dir(&dir)? {
        println!("wrote {}", p.display());
    }
    for (label, years) in advantage_from(&report, "sweep_advantage") {
        let gto = years
            .get(&lunarprop::transport::Node::Gto)
            .copied()
            .flatten();
        println!("{label:<14} GTO {gto:?}");
    }
    Ok(())
}
