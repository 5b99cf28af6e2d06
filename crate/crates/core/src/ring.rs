//! The coefficient-ring abstraction shared by every layer of the kernel.
//!
//! All rings here are associative unital Q-algebras; commutativity is not
//! assumed (the PBW layer multiplies noncommutatively through the same
//! interface). Values are immutable and every operation returns a new,
//! canonically reduced value, so equality is structural everywhere.

use num_rational::BigRational;
use std::fmt::Debug;

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    /// Embedding of the ground field Q.
    fn from_rat(r: &BigRational) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rat(&BigRational::from_integer(n.into()))
    }

    /// Multiplicative inverse, when the element is a unit of the ring.
    fn inv(&self) -> Option<Self> {
        None
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_rat(r: &BigRational) -> Self {
        r.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Coeff::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn factorial(n: u32) -> BigRational {
    let mut acc = rat_int(1);
    for k in 2..=n as i64 {
        acc *= rat_int(k);
    }
    acc
}
