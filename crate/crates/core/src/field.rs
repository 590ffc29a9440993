//! Minimal field abstraction shared by the exact linear algebra.
//!
//! The generic routines (polynomial arithmetic, nullspaces, fixed-point
//! extension) run over [`Rational`](crate::Rational),
//! [`Scalar`](crate::Scalar), and the prime field [`ModP`]. Working modulo a
//! prime is how the recurrence guessers handle sequences whose exact terms are
//! too large to write down: a recurrence over the rationals reduces to a
//! nonzero recurrence modulo every prime not dividing its denominators, so an
//! empty nullspace modulo `P` rules out a rational solution.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::scalar::Rational;

pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Residues modulo the prime `P` (which must be below 2^63).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModP<const P: u64>(u64);

/// The Mersenne prime 2^61 - 1.
pub type Fp61 = ModP<2_305_843_009_213_693_951>;

impl<const P: u64> ModP<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        ModP(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = ModP(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        ModP(r.to_u64().expect("residue fits"))
    }

    /// Reduction of a rational; `None` when `P` divides the denominator.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let den = Self::from_bigint(q.denom());
        den.inv().map(|d| Field::mul(&Self::from_bigint(q.numer()), &d))
    }
}

impl<const P: u64> fmt::Debug for ModP<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for ModP<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for ModP<P> {
    fn zero() -> Self {
        ModP(0)
    }
    fn one() -> Self {
        ModP(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        let r = (v as i128).rem_euclid(P as i128);
        ModP(r as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 as u128 + rhs.0 as u128;
        ModP((s % P as u128) as u64)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let s = self.0 as u128 + P as u128 - rhs.0 as u128;
        ModP((s % P as u128) as u64)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ModP(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            ModP(P - self.0)
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
}
