//! Exact dyadic rationals `n / 2^k`.
//!
//! Measures of cylinder complexes and the `2^{−n}` metric both live in
//! this class, so keeping a dedicated reduced representation makes the
//! zero-tolerance checks cheap and readable.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

/// A nonnegative dyadic rational in reduced form: the numerator is odd
/// or zero, and a zero numerator forces a zero exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigUint,
    exponent: u64,
}

impl Dyadic {
    pub fn zero() -> Dyadic {
        Dyadic {
            numerator: BigUint::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic {
            numerator: BigUint::one(),
            exponent: 0,
        }
    }

    /// `n / 2^k`, reduced.
    pub fn new(numerator: BigUint, exponent: u64) -> Dyadic {
        let mut d = Dyadic {
            numerator,
            exponent,
        };
        d.reduce();
        d
    }

    /// `1 / 2^k`.
    pub fn pow2_neg(k: u64) -> Dyadic {
        Dyadic {
            numerator: BigUint::one(),
            exponent: k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Halve the value.
    pub fn halved(&self) -> Dyadic {
        if self.is_zero() {
            Dyadic::zero()
        } else {
            Dyadic {
                numerator: self.numerator.clone(),
                exponent: self.exponent + 1,
            }
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator.clone()),
            BigInt::one() << self.exponent,
        )
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && (&self.numerator % 2u8).is_zero() {
            self.numerator >>= 1;
            self.exponent -= 1;
        }
    }

    /// Numerators brought to the common exponent.
    fn aligned(&self, other: &Dyadic) -> (BigUint, BigUint, u64) {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        (a, b, e)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;

    /// Panics when the result would be negative; measures and distances
    /// only ever subtract smaller from larger.
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
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

    fn dy(n: u64, e: u64) -> Dyadic {
        Dyadic::new(BigUint::from(n), e)
    }

    #[test]
    fn reduction() {
        assert_eq!(dy(4, 3), dy(1, 1));
        assert_eq!(dy(0, 5), Dyadic::zero());
        assert_eq!(dy(6, 3).to_string(), "3/4");
        assert_eq!(Dyadic::one().to_string(), "1");
    }

    #[test]
    fn arithmetic_and_order() {
        assert_eq!(&dy(1, 2) + &dy(1, 2), dy(1, 1));
        assert_eq!(&Dyadic::one() - &dy(1, 2), dy(3, 2));
        assert!(dy(1, 1) > dy(1, 2));
        assert!(dy(3, 2) > dy(1, 1));
        assert_eq!(dy(1, 3).halved(), dy(1, 4));
    }

    #[test]
    fn rational_bridge() {
        assert_eq!(
            dy(3, 2).to_rational(),
            BigRational::new(BigInt::from(3), BigInt::from(4))
        );
    }
}
