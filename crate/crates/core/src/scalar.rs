//! Coefficient field abstraction for the polynomial and series layer.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Num;

/// A coefficient field.
///
/// Everything in [`crate::arith`] is written against this trait. Exact
/// rationals are what the classification needs; the float impls exist for
/// quick numerical evaluation and are not suitable for gcd-based reduction.
pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Num + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;

    /// `Some(n)` when the value is an integer that fits in `i64`.
    fn to_i64_exact(&self) -> Option<i64>;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_i64_exact(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

macro_rules! impl_small_ratio {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            fn from_i64(v: i64) -> Self {
                Ratio::from_integer(v as $t)
            }

            fn to_i64_exact(&self) -> Option<i64> {
                if self.is_integer() {
                    i64::try_from(*self.numer()).ok()
                } else {
                    None
                }
            }
        }
    };
}

impl_small_ratio!(i64);
impl_small_ratio!(i128);

macro_rules! impl_float {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_i64_exact(&self) -> Option<i64> {
                if self.fract() == 0.0 && self.abs() < 9.0e15 {
                    Some(*self as i64)
                } else {
                    None
                }
            }
        }
    };
}

impl_float!(f32);
impl_float!(f64);
