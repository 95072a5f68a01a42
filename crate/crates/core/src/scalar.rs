//! Coefficient traits shared by the generic containers.
//!
//! Everything in this crate is exact. The containers ([`UniPoly`],
//! [`PowerSeries`], [`Laurent`], [`ZetaRational`]) only need ring
//! operations from their coefficients; division-based algorithms (gcd,
//! series inversion by a non-unit) additionally ask for [`Field`].
//!
//! [`UniPoly`]: crate::ring::UniPoly
//! [`PowerSeries`]: crate::series::PowerSeries
//! [`Laurent`]: crate::ring::Laurent
//! [`ZetaRational`]: crate::series::ZetaRational

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A commutative ring with identity.
pub trait Scalar:
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
    fn from_i64(v: i64) -> Self;
}

/// A scalar in which every nonzero element is invertible.
pub trait Field: Scalar + Div<Output = Self> {}

impl<T> Field for T where T: Scalar + Div<Output = T> {}

impl Scalar for num_bigint::BigInt {
    fn from_i64(v: i64) -> Self {
        v.into()
    }
}

impl Scalar for num_rational::BigRational {
    fn from_i64(v: i64) -> Self {
        num_rational::BigRational::from_integer(v.into())
    }
}

impl Scalar for num_rational::Rational64 {
    fn from_i64(v: i64) -> Self {
        num_rational::Rational64::from_integer(v)
    }
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}
