//! Scalar fields used by the generic linear algebra, polynomial and
//! algebra-truncation code.
//!
//! Everything is exact. The two fields in use are ℚ ([`BigRational`]) and
//! cyclotomic fields ℚ(ζ_N) ([`crate::Cyclotomic`]); ℚ embeds into every
//! ℚ(ζ_N) as order-1 elements.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact field of characteristic zero.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: BigRational) -> Self;

    /// The element as a rational number, if it lies in ℚ.
    fn to_rational(&self) -> Option<BigRational>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn from_int(n: &BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n.clone()))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert. Panics on `0^-k`.
    fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().expect("negative power of zero").pow(e.unsigned_abs())
        }
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: BigRational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
