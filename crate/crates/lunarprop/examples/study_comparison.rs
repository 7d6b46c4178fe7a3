//! Production mass ratios of the published studies and their cost curves
//! on a common transport and economics footing.
//!
//!     cargo run --example study_comparison

use lunarprop::{catalog, exhibits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for r in catalog::phi_table()? {
        let computed = r.computed.map_or("-".to_string(), |c| format!("{c:.1}"));
        let flag = if r.mismatch { "  (differs)" } else { "" };
        println!(
            "{:<11} phi {:>6} published {:>6}{flag}",
            r.study, computed, r.published
        );
    }

    let net = catalog::default_resolved_network()?;
    let report = exhibits::reproduce("fig15", &net)?;
    print!("{}", report.get("fig15_advantage").unwrap().to_csv());
    Ok(())
}
