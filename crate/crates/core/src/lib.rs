//! Integer-forcing linear receivers for linear-dispersion space-time block
//! codes over quasi-static Rayleigh MIMO channels.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: matrices, singular values, SPD solves, LLL and
//!   Schnorr–Euchner enumeration, seeded Gaussian sampling.
//! - [`stbc`]: linear designs, the `Z_√M` constellation, the real code
//!   matrix, encoding and the non-vanishing singular value analyser.
//! - [`channel`]: channel realisations and the real vectorised signal model.
//! - [`receiver`]: integer-forcing, zero-forcing, MMSE and exhaustive ML
//!   decoders plus linear algebra modulo `2^k`.
//! - [`analysis`]: error-probability bounds and diversity-order estimation.
//! - [`sim`]: configuration, reproducible Monte-Carlo BER sweeps, bound
//!   curves, NVS reports and CSV output used by the `ifstbc` binary.
//!
//! A narrative guide lives in the `book/` directory of the repository; its
//! code listings are compiled and run as doc-tests of this crate.

pub mod analysis;
pub mod channel;
mod error;
pub mod numerics;
pub mod receiver;
pub mod sim;
pub mod stbc;

pub use error::{Error, Result};
pub use num_complex::Complex64;

#[cfg(doctest)]
mod book;
