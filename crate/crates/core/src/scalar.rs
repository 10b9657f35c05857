//! Coefficient traits shared by matrices, polynomials and cyclotomic numbers.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// Field; `try_inv` returns `None` exactly on zero.
pub trait Field: Ring + Div<Output = Self> {
    fn try_inv(&self) -> Option<Self>;
}

/// Exact rational coefficients for cyclotomic numbers.
pub trait RationalField: Field + Ord + Hash + Display {
    fn from_bigint(n: BigInt) -> Self;
    fn from_ratio(num: BigInt, den: BigInt) -> Self;
    fn numer_bigint(&self) -> BigInt;
    fn denom_bigint(&self) -> BigInt;
    fn to_f64(&self) -> f64;

    fn is_integral(&self) -> bool {
        self.denom_bigint().is_one()
    }
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Ring for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for BigRational {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl RationalField for BigRational {
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn from_ratio(num: BigInt, den: BigInt) -> Self {
        BigRational::new(num, den)
    }

    fn numer_bigint(&self) -> BigInt {
        self.numer().clone()
    }

    fn denom_bigint(&self) -> BigInt {
        self.denom().clone()
    }

    fn to_f64(&self) -> f64 {
        // Scale down huge operands so the ratio still fits in an f64.
        let n = self.numer();
        let d = self.denom();
        match (n.to_f64(), d.to_f64()) {
            (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
            _ => {
                let shift = n.bits().max(d.bits()).saturating_sub(900);
                let a = (n.abs() >> shift).to_f64().unwrap_or(0.0);
                let b = (d >> shift).to_f64().unwrap_or(1.0);
                if n.is_negative() {
                    -a / b
                } else {
                    a / b
                }
            }
        }
    }
}

/// Shorthand for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
