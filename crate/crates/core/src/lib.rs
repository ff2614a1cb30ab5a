//! Discrete information dynamics and partial information decomposition.
//!
//! The crate is `no_std` (it needs `alloc`) and holds the pure numerical
//! machinery:
//!
//! - [`eca`]: elementary cellular automaton simulation with a pinned RNG.
//! - [`distributions`]: sparse plug-in joint distributions and local/average
//!   mutual information in bits.
//! - [`dynamics`]: active information storage, apparent/conditional/complete
//!   transfer entropy and the separable-information heuristic.
//! - [`pid`]: the redundancy lattice, the `I_min` redundancy measure, PI-terms,
//!   modified information and the order hierarchy, and the local `i_min`
//!   together with a scan for its discontinuities.
//!
//! All probabilities are maximum-likelihood (plug-in) estimates with no bias
//! correction. All logarithms are base 2.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod distributions;
pub mod dynamics;
pub mod eca;
mod error;
pub mod pid;

pub use error::{Error, Result};
