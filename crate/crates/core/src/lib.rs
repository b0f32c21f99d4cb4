//! Closed-geodesic counts, Hecke spectra and rational zeta functions for
//! finite quotients of affine buildings of type Ã_d.
//!
//! The crate is `no_std` (with `alloc`); enable the `std` feature for
//! `std::error::Error` integration through the companion CLI crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod census;
pub mod class_numbers;
pub mod complex;
pub mod error;
pub mod hecke_counts;
pub mod matrix;
pub mod spectra;
pub mod weyl;
pub mod zeta;

pub use error::{Error, Result};
