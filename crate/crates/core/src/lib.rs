//! Multiphoton quantum data locking toolkit.
//!
//! The crate is split along the natural layers of the problem:
//!
//! * [`fock`]: n-photon, m-mode Fock space indexing, the single-occupancy
//!   code book and photon-occupancy patterns.
//! * [`linop`]: Haar-random interferometers and permanent-based transition
//!   amplitudes.
//! * [`mc`]: seeded Monte Carlo estimation of the averaged-state coefficients
//!   `c_q` and the concentration factors `γ_q`, plus the CSV cache.
//! * [`bounds`]: log-space evaluation of key sizes, consumption rates,
//!   failure probabilities, lossy mutual information and net rates.
//! * [`protocol`]: end-to-end simulation of encoding, scrambling, loss and
//!   keyed decoding with empirical mutual-information diagnostics.
//! * [`cli`]: the `qdl-lab` command-line front end.
//!
//! Sampling loops run on rayon when the `parallel` feature is enabled (the
//! default). Results are reduced in a fixed chunk order, so every estimate is
//! bit-identical for a given seed regardless of the worker count.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
mod error;
pub mod fock;
pub mod linop;
pub mod mc;
pub mod numeric;
pub mod par;
pub mod protocol;
pub mod reference;
pub mod rng;

pub use error::{Error, Result};
