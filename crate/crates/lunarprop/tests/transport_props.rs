use approx::assert_relative_eq;
use proptest::prelude::*;

use lunarprop::catalog;
use lunarprop::transport::{
    architecture_gear_ratio, effective_imf, leg_gear_ratio, payload_fraction, DeltaVEntry,
    DeltaVTable, Leg, Node, PropellantClass, PropulsionStage, TransportArchitecture,
    TransportError,
};

fn stage(isp: f64, imf: f64) -> PropulsionStage {
    PropulsionStage::new("s", isp, imf, PropellantClass::Chemical).unwrap()
}

fn table(pairs: &[(Node, Node, f64)]) -> DeltaVTable {
    DeltaVTable::new(
        pairs
            .iter()
            .map(|&(from, to, dv)| DeltaVEntry {
                from,
                to,
                dv,
                symmetric: true,
            })
            .collect(),
    )
    .unwrap()
}

#[test]
fn payload_fraction_checks() {
    let net = catalog::default_resolved_network().unwrap();
    let rll = stage(450.0, 0.10);
    let moon_gto = TransportArchitecture::legs(vec![
        Leg::new(Node::Ls, Node::Llo, rll.clone(), false),
        Leg::new(Node::Llo, Node::Gto, rll, false),
    ]);
    let g = architecture_gear_ratio(&moon_gto, &net.delta_v).unwrap();
    assert_relative_eq!(1.0 / g.gear_mass, 0.488, epsilon = 0.005);

    // expendable launcher burning straight through to GTO
    let through = net.delta_v.get(Node::Earth, Node::Leo).unwrap()
        + net.delta_v.get(Node::Leo, Node::Gto).unwrap();
    let dvs = table(&[(Node::Earth, Node::Gto, through)]);
    let earth_gto = TransportArchitecture::legs(vec![Leg::new(
        Node::Earth,
        Node::Gto,
        stage(450.0, 0.05),
        false,
    )]);
    let e = architecture_gear_ratio(&earth_gto, &dvs).unwrap();
    assert_relative_eq!(1.0 / e.gear_mass, 0.022, epsilon = 0.001);
    assert!((e.gear_mass / g.gear_mass - 22.0).abs() < 1.5);
}

#[test]
fn capital_gear_anchor() {
    let net = catalog::default_resolved_network().unwrap();
    assert_relative_eq!(net.capital_gear().unwrap(), 6.0, epsilon = 0.05);
}

#[test]
fn infeasible_leg_is_an_error() {
    let dvs = table(&[(Node::Earth, Node::Leo, 9400.0)]);
    let leg = Leg::new(Node::Earth, Node::Leo, stage(300.0, 0.2), false);
    assert!(matches!(
        leg.gear(&dvs),
        Err(TransportError::InfeasibleLeg {
            from: Node::Earth,
            to: Node::Leo,
            ..
        })
    ));
}

#[test]
fn empty_and_fixed_architectures() {
    let dvs = table(&[(Node::Leo, Node::Gto, 2440.0)]);
    let g = architecture_gear_ratio(&TransportArchitecture::legs(vec![]), &dvs).unwrap();
    assert_eq!(g.gear_mass, 1.0);
    let g = architecture_gear_ratio(&TransportArchitecture::fixed(10.0), &dvs).unwrap();
    assert_eq!(g.gear_mass, 10.0);
}

proptest! {
    #[test]
    fn payload_fraction_inverts_gear(isp in 250.0..3000.0f64, imf in 0.001..0.3f64, dv in 0.0..4000.0f64) {
        let s = stage(isp, imf);
        let pf = payload_fraction(&s, dv);
        prop_assume!(pf > 1e-3);
        let g = leg_gear_ratio(&s, dv, imf).unwrap();
        prop_assert!((pf * g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_dv_is_identity(isp in 250.0..3000.0f64, imf in 0.001..0.3f64) {
        prop_assert_eq!(leg_gear_ratio(&stage(isp, imf), 0.0, imf).unwrap(), 1.0);
    }

    #[test]
    fn gear_monotone(isp in 300.0..3000.0f64, imf in 0.001..0.2f64, dv in 100.0..3000.0f64, k in 1.01..1.5f64) {
        let s = stage(isp, imf);
        let base = leg_gear_ratio(&s, dv, imf).unwrap();
        // more delta-v, more gear
        prop_assert!(leg_gear_ratio(&s, dv * k, imf).map_or(true, |g| g > base));
        // better engine, less gear
        prop_assert!(leg_gear_ratio(&stage(isp * k, imf), dv, imf).unwrap() < base);
        // heavier vehicle, more gear
        prop_assert!(leg_gear_ratio(&s, dv, imf * k + 1e-3).map_or(true, |g| g > base));
    }

    #[test]
    fn route_gear_is_product_of_legs(d1 in 200.0..3000.0f64, d2 in 200.0..3000.0f64, rt1: bool, rt2: bool) {
        let dvs = table(&[(Node::Ls, Node::Llo, d1), (Node::Llo, Node::Eml1, d2)]);
        let a = Leg::new(Node::Ls, Node::Llo, stage(450.0, 0.1), rt1);
        let b = Leg::new(Node::Llo, Node::Eml1, stage(2000.0, 0.1), rt2);
        let (ga, gb) = (a.gear(&dvs), b.gear(&dvs));
        prop_assume!(ga.is_ok() && gb.is_ok());
        let g = architecture_gear_ratio(&TransportArchitecture::legs(vec![a, b]), &dvs).unwrap();
        prop_assert!((g.gear_mass - ga.unwrap() * gb.unwrap()).abs() < 1e-12 * g.gear_mass);
    }

    #[test]
    fn round_trip_costs_more(isp in 300.0..3000.0f64, imf in 0.01..0.2f64, dv in 100.0..3000.0f64) {
        let dvs = table(&[(Node::Leo, Node::Gto, dv)]);
        let one = Leg::new(Node::Leo, Node::Gto, stage(isp, imf), false);
        let two = Leg::new(Node::Leo, Node::Gto, stage(isp, imf), true);
        prop_assume!(two.gear(&dvs).is_ok());
        prop_assert!(two.gear(&dvs).unwrap() > one.gear(&dvs).unwrap());
        prop_assert!(effective_imf(&stage(isp, imf), dv) > imf);
    }
}
