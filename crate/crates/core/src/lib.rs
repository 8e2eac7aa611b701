//! Data-oriented energy-efficiency metrics for wireless transmission of
//! small data over slow, flat fading channels.
//!
//! Two per-session performance limits are provided for two channel-adaptive
//! strategies:
//!
//! * minimum energy consumption (MEC) to deliver `H` bits, and its outage
//!   rate (EOR), the probability that MEC exceeds an energy threshold;
//! * maximum information delivery (MID) with `E` joules, and its outage
//!   rate (IOR), the probability that MID falls below an entropy threshold.
//!
//! The strategies are continuous rate adaptation with constant power (CRA)
//! and continuous power adaptation with constant rate (CPA, truncated
//! channel inversion). Closed forms live in [`metrics`]; [`montecarlo`]
//! provides a seeded, partition-invariant simulation oracle for them.

pub mod error;
pub mod fading;
pub mod link;
pub mod metrics;
pub mod montecarlo;
pub mod special;

pub use error::{Error, Result};
pub use fading::{FadingKind, FadingModel};
pub use link::LinkParams;
pub use metrics::{
    CpaConfig, CpaOutcome, CraConfig, DataAmount, EnergyAmount, EnergyThreshold,
    EntropyThreshold,
};
pub use montecarlo::{OutageEstimate, SimConfig, Strategy};
