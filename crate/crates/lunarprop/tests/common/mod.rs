#![allow(dead_code)]

use lunarprop::catalog;
use lunarprop::costmodel::{MarketName, Scenario};
use lunarprop::transport::{Node, ResolvedNetwork};

/// Published elasticities at G/x = 0.02, 1, 50, in the order
/// M_p, M_K, zeta, G, IMF, I_sp, L_0.
pub const PUBLISHED_ELASTICITY: [[f64; 7]; 3] = [
    [-0.990, 0.983, 0.973, 0.011, 0.005, -0.023, -0.947],
    [-0.990, 0.710, 0.432, 0.277, 0.120, -0.614, -0.692],
    [-0.990, 0.982, 0.024, 0.958, 0.437, -2.116, -0.040],
];

/// Published advantage years for the baseline, optimistic market.
pub const PUBLISHED_TABLE1: [(Node, u32); 7] = [
    (Node::Ls, 1),
    (Node::Llo, 1),
    (Node::Eml1, 1),
    (Node::Geo, 2),
    (Node::Dro, 3),
    (Node::Gto, 6),
    (Node::Leo, 19),
];

pub fn net() -> ResolvedNetwork {
    catalog::default_resolved_network().unwrap()
}

pub fn baseline(m: MarketName) -> Scenario {
    Scenario::new(catalog::load_study("BASELINE").unwrap(), m)
}
