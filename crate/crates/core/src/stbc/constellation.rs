use crate::error::{Error, Result};

/// The ring `Z_√M = {0, …, √M − 1}` together with the symmetric shift used
/// on the air.
///
/// Symbols `s` are transmitted as `s − offset`, a zero-mean set with
/// average energy `Ē = (√M² − 1) / 12`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constellation {
    sqrt_m: u32,
}

impl Constellation {
    pub fn new(sqrt_m: u32) -> Result<Self> {
        if sqrt_m < 2 || !sqrt_m.is_power_of_two() {
            return Err(Error::InvalidConstellation(sqrt_m));
        }
        Ok(Self { sqrt_m })
    }

    #[inline]
    pub fn sqrt_m(&self) -> u32 {
        self.sqrt_m
    }

    /// `(√M − 1) / 2`
    #[inline]
    pub fn offset(&self) -> f64 {
        (self.sqrt_m as f64 - 1.0) / 2.0
    }

    /// Average energy of the shifted symbol set.
    #[inline]
    pub fn ebar(&self) -> f64 {
        let q = self.sqrt_m as f64;
        (q * q - 1.0) / 12.0
    }

    /// `log2(√M)`: bits carried by one real symbol.
    #[inline]
    pub fn bits_per_symbol(&self) -> u32 {
        self.sqrt_m.trailing_zeros()
    }

    /// Shifted (zero-mean) value of a ring symbol.
    #[inline]
    pub fn shifted(&self, s: u32) -> f64 {
        s as f64 - self.offset()
    }

    pub fn check_symbols(&self, s: &[u32]) -> Result<()> {
        match s.iter().position(|&v| v >= self.sqrt_m) {
            Some(index) => Err(Error::SymbolOutOfRange { index, value: s[index], sqrt_m: self.sqrt_m }),
            None => Ok(()),
        }
    }

    /// Reduces an integer into the ring.
    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.sqrt_m as i64) as u32
    }

    /// Clamps an integer onto the ring's range.
    #[inline]
    pub fn clamp(&self, v: i64) -> u32 {
        v.clamp(0, self.sqrt_m as i64 - 1) as u32
    }
}
