//! Rocket-equation gear ratios over the built-in cislunar network.
//!
//!     cargo run --example gear_ratios

use lunarprop::catalog;
use lunarprop::transport::{
    architecture_gear_ratio, payload_fraction, Leg, Node, PropellantClass, PropulsionStage,
    TransportArchitecture,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = catalog::default_resolved_network()?;

    println!(
        "{:>5} {:>10} {:>10} {:>10}",
        "node", "lunar", "lunar/chem", "earth"
    );
    for n in net.sale_nodes() {
        println!(
            "{:>5} {:>10.3} {:>10.3} {:>10.3}",
            n.as_str(),
            net.lunar_gear(n, true)?,
            net.lunar_gear(n, false)?,
            net.terrestrial_gear(n)?,
        );
    }
    println!("capital LEO->LS gear: {:.2}", net.capital_gear()?);

    // one-way hop from the surface to GTO on a lunar lander
    let rll = PropulsionStage::new("rll", 450.0, 0.10, PropellantClass::Chemical)?;
    let route = TransportArchitecture::legs(vec![
        Leg::new(Node::Ls, Node::Llo, rll.clone(), false),
        Leg::new(Node::Llo, Node::Gto, rll.clone(), false),
    ]);
    let g = architecture_gear_ratio(&route, &net.delta_v)?;
    println!(
        "LS->GTO one way: gear {:.3}, delivered fraction {:.1}%",
        g.gear_mass,
        100.0 / g.gear_mass
    );
    println!(
        "single 6250 m/s burn keeps {:.1}% as payload",
        100.0 * payload_fraction(&rll, 6250.0)
    );
    Ok(())
}
