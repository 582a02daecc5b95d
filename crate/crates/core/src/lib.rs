//! Scheduling toolkit for a two-line clinical laboratory modelled as a
//! distributed, heterogeneous flexible job shop with batch machines.
//!
//! * [`instance`]: data model, benchmark generation, instance files.
//! * [`decoder`]: FABM permutation decoding, timing from explicit decision
//!   variables, constraint validation.
//! * [`neighborhood`]: insert, swap, inverse and block-insert moves, the
//!   pair-precedence distance and inter-neighbor distance moments.
//! * [`search`]: simulated annealing, fixed-temperature search, scatter search,
//!   block NEH construction and reward-driven neighborhood selection.
//! * [`landscape`]: fitness-distance correlation, random-walk autocorrelation,
//!   local optima networks.
//! * [`bench`]: experiment suites, result files and performance metrics.

pub mod bench;
pub mod decoder;
mod error;
pub mod fixtures;
pub mod instance;
pub mod landscape;
pub mod neighborhood;
pub mod rng;
pub mod search;

pub use error::{Error, Result};
