//! Stable many-to-one matching with diversity quotas.
//!
//! Students carry type vectors and (possibly tied) preferences over colleges;
//! colleges have per-type lower and upper quotas and a capacity. The crate
//! provides the instance model, stability verification, exact solvers, and
//! generators for hard instances built from classic NP-hard problems.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fixtures;
pub mod model;
pub mod par;
pub mod random;
pub mod reductions;
pub mod solvers;
pub mod suite;
pub mod verify;

pub use error::{Error, Result};
