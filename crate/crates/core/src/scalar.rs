//! Scalar abstractions.
//!
//! Two layers live here. [`Field`] is a value-type field built on `num-traits`
//! (exact rationals and compile-time prime fields). [`Arith`] is a
//! context-carrying arithmetic interface: the generic linear algebra and the
//! D4 Lie algebra code are written against it so that they run unchanged over
//! `Std<F>` for any [`Field`] and over runtime finite rings
//! ([`crate::matrings::Ring`]).

use std::fmt::Debug;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A field whose elements are plain values.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    /// Characteristic of the field (0 for the rationals).
    fn characteristic() -> u64;
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn characteristic() -> u64 {
        0
    }
}

/// The prime field `Z/P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            // Fermat
            Some(self.pow(P as u64 - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn characteristic() -> u64 {
        P as u64
    }
}

/// Arithmetic supplied by a context object.
pub trait Arith {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a unit, `None` otherwise.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// [`Arith`] context for a value-type [`Field`].
pub struct Std<F>(PhantomData<F>);

impl<F> Std<F> {
    pub const fn new() -> Self {
        Std(PhantomData)
    }
}

impl<F> Default for Std<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Arith for Std<F> {
    type Elem = F;

    fn zero(&self) -> F {
        F::zero()
    }
    fn one(&self) -> F {
        F::one()
    }
    fn add(&self, a: &F, b: &F) -> F {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &F, b: &F) -> F {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &F, b: &F) -> F {
        a.clone() * b.clone()
    }
    fn neg(&self, a: &F) -> F {
        -a.clone()
    }
    fn inv(&self, a: &F) -> Option<F> {
        a.inv()
    }
    fn from_i64(&self, v: i64) -> F {
        F::from_i64(v)
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        for v in 1..7 {
            let x = Fp::<7>::new(v);
            assert_eq!(x * x.inv().unwrap(), Fp::one());
        }
        assert!(Fp::<7>::zero().inv().is_none());
    }

    #[test]
    fn negative_reduction() {
        assert_eq!(Fp::<5>::new(-1).value(), 4);
        assert_eq!(-Fp::<5>::new(0), Fp::zero());
    }

    #[test]
    fn std_context_matches_values() {
        let q = Std::<BigRational>::new();
        let half = q.inv(&q.from_i64(2)).unwrap();
        assert_eq!(q.add(&half, &half), q.one());
    }
}
