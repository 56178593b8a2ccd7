//! Exact dyadic rationals `numerator / 2^exponent`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// A nonnegative rational whose denominator is a power of two.
///
/// Always stored in lowest terms: the numerator is odd unless the exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigUint,
    exponent: u64,
}

impl Dyadic {
    pub fn new(numerator: BigUint, exponent: u64) -> Self {
        let mut d = Dyadic {
            numerator,
            exponent,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic::new(BigUint::zero(), 0)
    }

    pub fn one() -> Self {
        Dyadic::new(BigUint::one(), 0)
    }

    /// `2^-exponent`.
    pub fn pow2_neg(exponent: u64) -> Self {
        Dyadic::new(BigUint::one(), exponent)
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0).min(self.exponent);
        if tz > 0 {
            self.numerator >>= tz;
            self.exponent -= tz;
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    /// Denominator is `2^exponent`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.numerator.is_one()
    }

    pub fn pow(&self, n: u32) -> Dyadic {
        Dyadic::new(
            num_traits::pow(self.numerator.clone(), n as usize),
            self.exponent * n as u64,
        )
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.numerator.bits();
        if bits <= 53 {
            let num = self.numerator.to_u64().unwrap() as f64;
            return num * (-(self.exponent as f64)).exp2();
        }
        let shift = bits - 53;
        let top = (&self.numerator >> shift).to_u64().unwrap() as f64;
        top * (shift as f64 - self.exponent as f64).exp2()
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exponent.max(rhs.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &rhs.numerator << (e - rhs.exponent);
        Dyadic::new(a + b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(
            &self.numerator * &rhs.numerator,
            self.exponent + rhs.exponent,
        )
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| &acc + &x)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigUint::one() << self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_reduce_to_lowest_terms() {
        let s: Dyadic = [1u64, 2, 2].iter().map(|&l| Dyadic::pow2_neg(l)).sum();
        assert!(s.is_one());
        let s: Dyadic = [1u64, 2, 3].iter().map(|&l| Dyadic::pow2_neg(l)).sum();
        assert_eq!(s.to_string(), "7/8");
        assert_eq!(s.to_f64(), 0.875);
    }

    #[test]
    fn ordering_and_powers() {
        let half = Dyadic::pow2_neg(1);
        assert!(half < Dyadic::one());
        assert_eq!(half.pow(3), Dyadic::pow2_neg(3));
        assert_eq!(&half * &half, Dyadic::pow2_neg(2));
        assert_eq!(Dyadic::zero().to_string(), "0");
    }
}
