//! Computational machinery for multiplicative orders in prime fields:
//! exact modular arithmetic, segmented prime sieves, order-indicator
//! functions in three equivalent representations, an exponential-sum
//! toolbox with bound reporting, prime censuses of simultaneous
//! prescribed orders, and equal-order statistics.
//!
//! The crate is `no_std` + `alloc`; everything in it is a pure function
//! of its inputs and safe to call from many threads at once. IO, CLI,
//! and parallel sweep drivers live in the companion `ordlab-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod census;
mod error;
pub mod expsum;
pub mod indicator;
mod numeric;
pub mod primes;
pub mod stats;

pub use error::{Error, Result};
pub use num_complex::Complex64;
