//! The scalar interface shared by rationals and dual numbers.
//!
//! Geometry and prolongation formulas are written once against this trait
//! and instantiated with [`Rational`] for plain evaluation or [`DualScalar`]
//! to push an exact directional derivative through the same computation.
//! Zero/one come from the `num_traits` hierarchy; this trait only adds
//! rational embedding and exact inversion.

use std::fmt;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dual::DualScalar;
use super::rational::Rational;

pub trait ExactScalar:
    Clone + fmt::Debug + PartialEq + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    /// Exact invertibility test; for duals only the value part matters.
    fn is_invertible(&self) -> bool;

    /// Multiplicative inverse; panics when `!self.is_invertible()`.
    fn inv(&self) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn from_bigint(v: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(v.clone()))
    }
}

impl ExactScalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_invertible(&self) -> bool {
        !self.is_zero()
    }

    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Zero for DualScalar {
    fn zero() -> Self {
        DualScalar::constant(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.val.is_zero() && self.der.is_zero()
    }
}

impl One for DualScalar {
    fn one() -> Self {
        DualScalar::constant(Rational::one())
    }
}

impl ExactScalar for DualScalar {
    fn from_rational(q: &Rational) -> Self {
        DualScalar::constant(q.clone())
    }

    fn is_invertible(&self) -> bool {
        !self.val.is_zero()
    }

    fn inv(&self) -> Self {
        self.recip()
    }
}
