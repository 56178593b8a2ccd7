//! Statistical mechanics of absolutely optimal prefix codes.
//!
//! A prefix-free code with Kraft sum one is absolutely optimal for the dyadic
//! source `p(x) = 2^-l(x)`. Treating total coded length as energy, this crate
//! counts coded messages exactly (`Ω(L, N)`), derives entropy and temperature
//! from those counts, solves for Gibbs inverse temperatures, finds thermal
//! equilibrium between two codes, and evaluates the box-counting dimension of
//! coded-message sets. All logarithms are base 2; all lengths are in bits.

pub mod cli;
pub mod code;
pub mod dimension;
pub mod document;
mod dyadic;
pub mod equilibrium;
pub mod error;
pub mod generate;
pub mod gibbs;
pub mod microcanonical;
pub mod output;
pub mod pmf;
pub mod prefix;
pub mod root;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use code::{Code, Codeword, LengthSpectrum, Symbol};
pub use document::{parse_code, write_code};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use generate::random_complete_code;
pub use pmf::Pmf;

/// `log2 x` for an arbitrary-precision integer; `-inf` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return x.to_u64().unwrap().to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.log2() + shift as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_of_big_integers() {
        assert_eq!(log2_big(&BigUint::from(0u32)), f64::NEG_INFINITY);
        assert_eq!(log2_big(&BigUint::from(1u32)), 0.0);
        assert_eq!(log2_big(&(BigUint::from(1u32) << 1000)), 1000.0);
        let x = BigUint::from(3u32) << 500;
        assert!((log2_big(&x) - (500.0 + 3f64.log2())).abs() < 1e-12);
    }
}
