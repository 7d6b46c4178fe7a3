//! Long-run cost of lunar-derived rocket propellant against propellant
//! launched from Earth, at every point of sale in cislunar space.
//!
//! The model prices each sales year as a capital vintage. Capital mass,
//! development and fabrication cost, transport of capital to the surface,
//! labor and finance are normalized by that year's launch cost into a
//! pre-delivery cost ratio `psi0`. Multiplying by the propellant use ratio
//! `Gamma_X` of a node gives `psi_X`, and lunar propellant wins at `X` once
//! `psi_X < 1`.
//!
//! ```no_run
//! use lunarprop::{catalog, costmodel::{self, MarketName, Scenario}};
//!
//! let net = catalog::default_resolved_network()?;
//! let s = Scenario::new(catalog::load_study("BASELINE")?, MarketName::Optimistic);
//! let records = costmodel::run_scenario(&s, &net)?;
//! for (node, year) in costmodel::advantage_years(&records) {
//!     println!("{node}: {year:?}");
//! }
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod config;
pub mod costmodel;
pub mod exhibits;
pub mod finance;
pub mod reliability;
pub mod report;
pub mod scaling;
pub mod transport;
