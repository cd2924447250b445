//! Multi-curve EUR interest-rate analytics.
//!
//! OIS discounting and tenor-specific forwarding curves, FRA replication from
//! deposits and OIS, multi-tenor swap legs and basis spreads, a risky-Libor
//! credit model, collateral-account simulation, interbank stress indices and
//! Black ATM straddle quoting.

pub mod credit_model;
pub mod csa_engine;
pub mod curves;
pub mod error;
pub mod market_data;
pub mod pricing;
pub mod replication;
pub mod risk_indices;
pub mod solver;
pub mod temporal;
pub mod vol_converter;

pub use error::{Error, Result};
