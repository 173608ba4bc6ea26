//! Conflict-free sidelink resource allocation.
//!
//! Vehicles in a cluster must transmit in distinct subframes. Each subframe
//! holds `K` frequency subchannels. The allocator collapses every subframe
//! into a single macro-vertex weighted by the best subchannel rate, solves
//! the resulting assignment problem with Kuhn-Munkres, and expands the
//! macro-vertex choice back to a concrete subchannel.
//!
//! Around that solver the crate provides:
//!
//! * [`matching`]: the solver, feasibility and objective primitives, and an
//!   exhaustive oracle for small instances.
//! * [`scenario`]: channel models that turn SINR samples into rate matrices.
//! * [`baselines`]: greedy first-come-first-served and uniform random
//!   allocation.
//! * [`harness`]: Monte Carlo trial execution, summary statistics,
//!   density sweeps and empirical CDFs.
//! * [`cli`]: configuration and the command implementations behind the
//!   `sidelink-alloc` binary.

pub mod baselines;
pub mod cli;
pub mod error;
pub mod harness;
pub mod matching;
pub mod scenario;

pub use error::{Error, Result};
