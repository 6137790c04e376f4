//! Transmit-power-minimizing discrete IRS phase design for a two-user
//! downlink, compared across NOMA, FDMA and TDMA.
//!
//! - [`channel`]: path loss + Rayleigh channel draws, effective gains.
//! - [`schemes`]: closed-form minimum power per multiple-access scheme.
//! - [`solvers`]: brute force, LA initialization, AO refinement, random
//!   starts, TDMA per-slot optimization.
//! - [`experiments`]: Monte Carlo sweeps, proposition checks, summaries and
//!   CSV reports.

pub mod channel;
pub mod error;
pub mod experiments;
pub mod rng;
pub mod schemes;
pub mod solvers;

pub use error::{Error, Result};
