//! The four receivers (integer-forcing, zero-forcing, MMSE and exhaustive
//! ML) and linear algebra modulo `2^k`.

mod integer_forcing;
mod linear;
mod ml;
mod modular;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use integer_forcing::{
    filter_regularization, greedy_odd_determinant, if_compute_b, if_decode, if_gram, if_select_a, layer_noise_power,
    optimal_filter, solve_layers, IfEquations, MAX_CANDIDATES,
};
pub use linear::{mmse_decode, pseudo_inverse, slice, zf_decode};
pub use ml::{ml_decode, MlDecoder, ML_BUDGET};
pub use modular::{inverse_odd_mod, invert_mod_2k, mul_mod};

/// Output of any decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    /// Decided ring symbols.
    pub s_hat: Vec<u32>,
    /// Rounded layer values before reduction onto the ring (for ML, the
    /// decided symbols themselves).
    pub layer_integers: Vec<i64>,
    /// False when a linear receiver had to clamp a layer onto the ring.
    pub ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReceiverKind {
    If,
    Zf,
    Mmse,
    Ml,
}

impl fmt::Display for ReceiverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::If => "if",
            Self::Zf => "zf",
            Self::Mmse => "mmse",
            Self::Ml => "ml",
        })
    }
}

impl FromStr for ReceiverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "if" => Ok(Self::If),
            "zf" => Ok(Self::Zf),
            "mmse" => Ok(Self::Mmse),
            "ml" => Ok(Self::Ml),
            other => Err(Error::Config(format!("unknown receiver '{other}' (expected if, zf, mmse or ml)"))),
        }
    }
}
