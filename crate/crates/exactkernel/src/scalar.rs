//! Scalar traits used by the generic matrix and polynomial code.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A commutative ring with exact equality.
///
/// The bound set is deliberately small so that polynomial rings (which have
/// no division) can be used as matrix entries for cofactor determinants.
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
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_i64(n: i64) -> Self;
}

/// A field with exact, decidable equality.
///
/// Floating point types intentionally do not implement this trait: every
/// algorithm that consumes it (rank tests, wall detection, group closure)
/// relies on `==` being exact.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `self / rhs`; panics when `rhs` is zero.
    fn div_exact(&self, rhs: &Self) -> Self {
        let r = rhs.inv().expect("division by zero");
        self.clone() * r
    }
}
