//! Exact integer scalars.
//!
//! The matrix and polynomial layers are generic over [`IntScalar`] so the
//! same elimination code runs on machine integers (searches, tests) and on
//! `BigInt` (covers, resultants), where overflow is not an option.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{NumAssign, Signed};
use std::fmt::{Debug, Display};
use std::hash::Hash;

/// An exact signed integer ring element.
pub trait IntScalar:
    Integer + Signed + NumAssign + Clone + Debug + Display + Hash + From<i32> + Send + Sync + 'static
{
    /// Lossless conversion into `BigInt`.
    fn to_bigint(&self) -> BigInt;
}

impl IntScalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntScalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntScalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}
