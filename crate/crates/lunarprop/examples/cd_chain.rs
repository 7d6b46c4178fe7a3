//! The strip-mining study improved one step at a time.
//!
//!     cargo run --example cd_chain

use lunarprop::catalog::{apply_variant, cd_curve};
use lunarprop::costmodel::{advantage_year, run_scenario};
use lunarprop::transport::Node;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = lunarprop::catalog::default_resolved_network()?;
    for n in 1..=5 {
        let v = cd_curve(n)?;
        let records = run_scenario(&apply_variant(&v)?, &net)?;
        let psi0 = records[0].state.psi0;
        let gto = advantage_year(Node::Gto, &records);
        println!(
            "curve {n}: year-1 psi0 {psi0:>7.3}  LS cost ratio {:>7.3}  GTO advantage {}",
            records[0].state.psi[&Node::Ls],
            gto.map_or("never".into(), |y| format!("year {y}")),
        );
    }
    Ok(())
}
