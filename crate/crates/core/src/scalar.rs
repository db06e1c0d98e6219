//! The integer trait every algorithm in this crate is generic over.
//!
//! Anything that behaves like a signed Euclidean integer works: `i64` and
//! `i128` for fast sweeps, [`num_bigint::BigInt`] when nothing may overflow.
//! Exact rationals (ages, continued-fraction values) are built on top as
//! [`num_rational::Ratio`] of the same integer type.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Signed integer usable as the coefficient ring of proper fractions.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Representative of `self mod m` in `[0, m)`, for `m > 0`.
    #[inline]
    fn residue(&self, m: &Self) -> Self {
        self.mod_floor(m)
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits in scalar type")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Scalar>(base: &T, mut exp: usize) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        exp >>= 1;
    }
    acc
}
