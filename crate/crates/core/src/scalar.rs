//! Numeric abstraction shared by every solver.
//!
//! All algorithms in this crate only need an ordered field with a floor
//! operation, so they are written against [`Scalar`]. The exact
//! arbitrary-precision [`Rational`](crate::Rational) is the canonical choice;
//! `Rational64` is a fast exact alternative for small magnitudes, and the
//! float impls exist for exploratory use where exactness is not required.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Hashable stand-in used by memoizing searches.
    type Key: Hash + Eq + Clone + Debug;

    fn key(&self) -> Self::Key;

    fn floor(&self) -> Self;

    /// `numer / denom`; panics when `denom == 0`.
    fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_i64(numer).expect("representable numerator")
            / Self::from_i64(denom).expect("representable denominator")
    }

    fn from_usize_lossless(value: usize) -> Self {
        Self::from_usize(value).expect("representable integer")
    }
}

impl Scalar for BigRational {
    type Key = BigRational;

    fn key(&self) -> Self::Key {
        self.clone()
    }

    fn floor(&self) -> Self {
        BigRational::floor(self)
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

impl Scalar for Rational64 {
    type Key = Rational64;

    fn key(&self) -> Self::Key {
        *self
    }

    fn floor(&self) -> Self {
        Rational64::floor(self)
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        Rational64::new(numer, denom)
    }
}

impl Scalar for f64 {
    type Key = u64;

    fn key(&self) -> Self::Key {
        self.to_bits()
    }

    fn floor(&self) -> Self {
        f64::floor(*self)
    }
}

impl Scalar for f32 {
    type Key = u32;

    fn key(&self) -> Self::Key {
        self.to_bits()
    }

    fn floor(&self) -> Self {
        f32::floor(*self)
    }
}

/// Total order over scalars; incomparable values (NaN) compare equal.
pub fn cmp<T: Scalar>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

pub fn sum<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v.clone())
}

pub fn max<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

pub fn min<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_is_reduced() {
        let r = <BigRational as Scalar>::ratio(6, 4);
        assert_eq!(r.to_string(), "3/2");
        assert_eq!(<Rational64 as Scalar>::ratio(-2, 4), Rational64::new(-1, 2));
        assert_eq!(<f64 as Scalar>::ratio(1, 4), 0.25);
    }

    #[test]
    fn floor_matches_integer_part() {
        assert_eq!(Scalar::floor(&<BigRational as Scalar>::ratio(7, 2)), BigRational::from_integer(3.into()));
        assert_eq!(Scalar::floor(&<BigRational as Scalar>::ratio(-7, 2)), BigRational::from_integer((-4).into()));
        assert_eq!(Scalar::floor(&2.75f64), 2.0);
    }

    #[test]
    fn nan_compares_equal() {
        assert_eq!(cmp(&f64::NAN, &1.0), Ordering::Equal);
        assert_eq!(cmp(&1.0f64, &2.0), Ordering::Less);
    }
}
