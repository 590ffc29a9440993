//! Exact scalars: rationals, real quadratic numbers and real cyclotomic
//! numbers, with exact arithmetic and certified signs.

mod cyclotomic;
mod parse;
mod quadratic;
mod rational;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use cyclotomic::{
    chebyshev_c, cyclotomic_polynomial, max_precision_bits, min_poly_2cos, set_max_precision_bits, CyclotomicReal,
    MAX_CONDUCTOR,
};
pub use quadratic::QuadraticNumber;
pub use rational::Rational;

use crate::error::{Error, Result};
use crate::field::Field;
use cyclotomic::{field, field_contains, generator_in, normalized_conductor, quadratic_discriminant, sqrt_in, CycloField};

/// The number field a [`Scalar`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tower {
    Rational,
    /// `Q(√d)`.
    Quadratic(u64),
    /// `Q(2cos(2π/s))`.
    Cyclotomic(u32),
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tower::Rational => write!(f, "Q"),
            Tower::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
            Tower::Cyclotomic(s) => write!(f, "Q(2cos(2pi/{s}))"),
        }
    }
}

impl Tower {
    /// Smallest tower containing both, when one contains the other.
    pub fn join(self, other: Tower) -> Result<Tower> {
        use Tower::*;
        let incompatible = || Error::IncompatibleTowers(self.to_string(), other.to_string());
        match (self, other) {
            (Rational, t) | (t, Rational) => Ok(t),
            (Quadratic(d1), Quadratic(d2)) => (d1 == d2).then_some(self).ok_or_else(incompatible),
            (Quadratic(d), Cyclotomic(s)) | (Cyclotomic(s), Quadratic(d)) => {
                (s as u64).is_multiple_of(quadratic_discriminant(d)).then_some(Cyclotomic(s)).ok_or_else(incompatible)
            }
            (Cyclotomic(s1), Cyclotomic(s2)) => {
                if field_contains(s1, s2) {
                    Ok(Cyclotomic(s1.max(if field_contains(s2, s1) { s2 } else { s1 })))
                } else if field_contains(s2, s1) {
                    Ok(Cyclotomic(s2))
                } else {
                    Err(incompatible())
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An exact real number in one of the supported towers, always in canonical
/// form: quadratic numbers have `b ≠ 0`, cyclotomic numbers are irrational
/// and stored in their normalized conductor.
#[derive(Clone)]
pub enum Scalar {
    Rational(Rational),
    Quadratic(QuadraticNumber),
    Cyclotomic(CyclotomicReal),
}

type Cache<K> = OnceLock<Mutex<HashMap<K, Option<Vec<Rational>>>>>;

fn cached<K: std::hash::Hash + Eq + Copy, V: Clone>(
    cache: &'static OnceLock<Mutex<HashMap<K, V>>>,
    key: K,
    compute: impl FnOnce() -> V,
) -> V {
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = compute();
    map.lock().unwrap().insert(key, v.clone());
    v
}

fn cached_sqrt(d: u64, f: &CycloField) -> Option<Vec<Rational>> {
    static CACHE: Cache<(u64, u32)> = OnceLock::new();
    cached(&CACHE, (d, f.s), || sqrt_in(d, f))
}

fn cached_generator(from: u32, f: &CycloField) -> Option<Vec<Rational>> {
    static CACHE: Cache<(u32, u32)> = OnceLock::new();
    cached(&CACHE, (from, f.s), || generator_in(from, f))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Scalar::Rational(Rational::from(v))
    }

    /// `a + b·√n` for any positive integer `n`, normalized.
    pub fn quadratic(a: Rational, b: Rational, n: u64) -> Result<Scalar> {
        if n == 0 {
            return Ok(Scalar::Rational(a));
        }
        let (m, d) = cyclotomic::square_free_part(&BigInt::from(n))?;
        let b = &b * &Rational::from_integer(m);
        let d = d.to_u64().expect("square-free part of a u64");
        Ok(Self::quadratic_raw(a, b, d))
    }

    fn quadratic_raw(a: Rational, b: Rational, d: u64) -> Scalar {
        if b.is_zero() || d == 1 {
            let b = if d == 1 { b } else { Rational::zero() };
            return Scalar::Rational(&a + &b);
        }
        Scalar::Quadratic(QuadraticNumber { a, b, d })
    }

    /// `√q` for a nonnegative rational.
    pub fn sqrt_rational(q: &Rational) -> Result<Scalar> {
        if q.signum() < 0 {
            return Err(Error::Domain(format!("square root of negative number {q}")));
        }
        // √(p/q) = √(p·q)/q
        let prod = q.numer() * q.denom();
        let (m, d) = cyclotomic::square_free_part(&prod)?;
        let coeff = Rational::new(m, q.denom().clone())?;
        let d = d
            .to_u64()
            .ok_or_else(|| Error::Domain(format!("square-free part of {q} is too large")))?;
        Ok(Self::quadratic_raw(Rational::zero(), coeff, d))
    }

    /// `2cos(2πr/s)` for `s ≥ 3` and `1 ≤ r < s`.
    pub fn cos2pi(r: i64, s: i64) -> Result<Scalar> {
        if s < 3 || r < 1 || r >= s {
            return Err(Error::Domain(format!("cos2pi needs s >= 3 and 1 <= r < s, got r={r}, s={s}")));
        }
        let g = num_integer::gcd(r, s);
        let (r, s) = (r / g, s / g);
        if s == 2 {
            return Ok(Scalar::from_i64(-2));
        }
        let s = u32::try_from(s).map_err(|_| Error::Domain(format!("conductor {s} too large")))?;
        let sn = normalized_conductor(s);
        let f = field(sn)?;
        let coeffs = if sn == s {
            f.chebyshev_image(r as usize)
        } else {
            // 2cos(πr/h) = -2cos(2π((r+h)/2)/h) for odd r and h
            let h = sn as i64;
            let k = ((r + h) / 2).rem_euclid(h);
            f.chebyshev_image(k as usize).into_iter().map(|c| -c).collect()
        };
        Ok(Self::from_cyclotomic(&f, coeffs))
    }

    /// Builds the canonical scalar for a reduced element of conductor `f.s`.
    fn from_cyclotomic(f: &CycloField, coeffs: Vec<Rational>) -> Scalar {
        let mut coeffs = f.reduce(coeffs);
        if coeffs.len() <= 1 {
            return Scalar::Rational(coeffs.pop().unwrap_or_else(Rational::zero));
        }
        if f.n == 2 {
            // t = (-b + √(b²-4c))/2 for Ψ = t² + b t + c
            let (c, b) = (&f.psi()[0], &f.psi()[1]);
            let disc = &(b * b) - &(&Rational::from(4) * c);
            let (m, d) = cyclotomic::square_free_part(disc.numer()).expect("small discriminant");
            let half = Rational::new(1.into(), 2.into()).expect("nonzero");
            let c1 = &coeffs[1];
            let a = &coeffs[0] - &(&(c1 * b) * &half);
            let bb = &(c1 * &Rational::from_integer(m)) * &half;
            return Self::quadratic_raw(a, bb, d.to_u64().expect("small"));
        }
        Scalar::Cyclotomic(CyclotomicReal { s: f.s, coeffs })
    }

    /// Element of conductor `s` given by coefficients in `t = 2cos(2π/s)`.
    pub fn cyclotomic(s: u32, coeffs: Vec<Rational>) -> Result<Scalar> {
        if s < 3 {
            return Err(Error::Domain(format!("conductor must be at least 3, got {s}")));
        }
        let sn = normalized_conductor(s);
        let f = field(sn)?;
        if sn == s {
            return Ok(Self::from_cyclotomic(&f, coeffs));
        }
        let g = cached_generator(s, &f).expect("normalized conductor contains the original");
        let mut coeffs = coeffs;
        cyclotomic::trim(&mut coeffs);
        let c = f.substitute(&coeffs, &g);
        Ok(Self::from_cyclotomic(&f, c))
    }

    pub fn tower(&self) -> Tower {
        match self {
            Scalar::Rational(_) => Tower::Rational,
            Scalar::Quadratic(q) => Tower::Quadratic(q.d),
            Scalar::Cyclotomic(c) => Tower::Cyclotomic(c.s),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(q) if *q == Rational::one())
    }

    fn cyclotomic_coeffs(&self, f: &CycloField) -> Result<Vec<Rational>> {
        let incompatible = || Error::IncompatibleTowers(self.tower().to_string(), Tower::Cyclotomic(f.s).to_string());
        match self {
            Scalar::Rational(q) => Ok(if q.is_zero() { Vec::new() } else { vec![q.clone()] }),
            Scalar::Quadratic(x) => {
                let root = cached_sqrt(x.d, f).ok_or_else(incompatible)?;
                let mut out: Vec<Rational> = root.iter().map(|c| c * &x.b).collect();
                cyclotomic::add_assign(&mut out, std::slice::from_ref(&x.a));
                Ok(out)
            }
            Scalar::Cyclotomic(c) if c.s == f.s => Ok(c.coeffs.clone()),
            Scalar::Cyclotomic(c) => {
                let g = cached_generator(c.s, f).ok_or_else(incompatible)?;
                Ok(f.substitute(&c.coeffs, &g))
            }
        }
    }

    /// Exact arithmetic in the smallest tower containing both operands.
    pub fn arith(&self, op: ArithOp, rhs: &Scalar) -> Result<Scalar> {
        use Scalar::*;
        if op == ArithOp::Div && rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, rhs) {
            (Rational(a), Rational(b)) => Ok(Rational(match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                ArithOp::Div => a / b,
            })),
            (Rational(_) | Quadratic(_), Rational(_) | Quadratic(_)) => {
                let d = match self.tower().join(rhs.tower())? {
                    Tower::Quadratic(d) => d,
                    _ => unreachable!("join of rational and quadratic towers"),
                };
                let (x, y) = (self.as_quadratic(d), rhs.as_quadratic(d));
                let (a, b) = match op {
                    ArithOp::Add => x.add(&y),
                    ArithOp::Sub => x.sub(&y),
                    ArithOp::Mul => x.mul(&y),
                    ArithOp::Div => {
                        let (ia, ib) = y.inv().ok_or(Error::DivisionByZero)?;
                        x.mul(&QuadraticNumber { a: ia, b: ib, d })
                    }
                };
                Ok(Self::quadratic_raw(a, b, d))
            }
            _ => {
                let s = match self.tower().join(rhs.tower())? {
                    Tower::Cyclotomic(s) => s,
                    _ => unreachable!("join involving a cyclotomic tower"),
                };
                let f = field(s)?;
                let mut x = self.cyclotomic_coeffs(&f)?;
                let y = rhs.cyclotomic_coeffs(&f)?;
                let out = match op {
                    ArithOp::Add => {
                        cyclotomic::add_assign(&mut x, &y);
                        x
                    }
                    ArithOp::Sub => {
                        cyclotomic::sub_assign(&mut x, &y);
                        x
                    }
                    ArithOp::Mul => f.mul(&x, &y),
                    ArithOp::Div => f.mul(&x, &f.inv(&y).ok_or(Error::DivisionByZero)?),
                };
                Ok(Self::from_cyclotomic(&f, out))
            }
        }
    }

    fn as_quadratic(&self, d: u64) -> QuadraticNumber {
        match self {
            Scalar::Rational(q) => QuadraticNumber { a: q.clone(), b: Rational::zero(), d },
            Scalar::Quadratic(x) => x.clone(),
            Scalar::Cyclotomic(_) => unreachable!("cyclotomic scalar in quadratic arithmetic"),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.arith(ArithOp::Add, rhs)
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.arith(ArithOp::Sub, rhs)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.arith(ArithOp::Mul, rhs)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.arith(ArithOp::Div, rhs)
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        if let Scalar::Rational(q) = self {
            return Scalar::Rational(q.pow(e));
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact sign. Zero is decided from the canonical form; nonzero
    /// cyclotomic signs come from interval refinement, which can only fail by
    /// hitting the precision cap.
    pub fn try_sign(&self) -> Result<i32> {
        match self {
            Scalar::Rational(q) => Ok(q.signum()),
            Scalar::Quadratic(x) => Ok(x.sign()),
            Scalar::Cyclotomic(c) => c.try_sign(),
        }
    }

    /// Exact sign; panics if interval refinement exhausts the precision cap.
    pub fn sign(&self) -> i32 {
        self.try_sign().unwrap_or_else(|e| panic!("sign of {self}: {e}"))
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn try_cmp(&self, other: &Scalar) -> Result<Ordering> {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            return Ok(a.cmp(b));
        }
        Ok(self.checked_sub(other)?.try_sign()?.cmp(&0))
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Total bit size of the stored coefficients.
    pub fn bits(&self) -> u64 {
        match self {
            Scalar::Rational(q) => q.bits(),
            Scalar::Quadratic(x) => x.a.bits() + x.b.bits(),
            Scalar::Cyclotomic(c) => c.coeffs.iter().map(Rational::bits).sum(),
        }
    }

    /// Floating-point approximation for display and diagnostics.
    pub fn to_f64_lossy(&self) -> f64 {
        match self {
            Scalar::Rational(q) => q.to_f64_lossy(),
            Scalar::Quadratic(x) => x.a.to_f64_lossy() + x.b.to_f64_lossy() * (x.d as f64).sqrt(),
            Scalar::Cyclotomic(c) => {
                let t = 2.0 * (2.0 * std::f64::consts::PI / c.s as f64).cos();
                c.coeffs.iter().rev().fold(0.0, |acc, q| acc * t + q.to_f64_lossy())
            }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_i64(v)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::Rational(Rational::from_integer(v))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        use Scalar::*;
        match (self, other) {
            (Rational(a), Rational(b)) => a == b,
            (Quadratic(a), Quadratic(b)) => a == b,
            (Cyclotomic(a), Cyclotomic(b)) if a.s == b.s => a == b,
            // canonical non-rational members are irrational
            (Rational(_), _) | (_, Rational(_)) => false,
            _ => self.checked_sub(other).is_ok_and(|d| d.is_zero()),
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident, $op:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            /// Panics on incompatible towers or division by zero; see
            /// [`Scalar::arith`].
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                self.arith($op, rhs).unwrap_or_else(|e| panic!("{self} {:?} {rhs}: {e}", $op))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $tr::$m(&self, &rhs)
            }
        }
    };
}
scalar_op!(Add, add, ArithOp::Add);
scalar_op!(Sub, sub, ArithOp::Sub);
scalar_op!(Mul, mul, ArithOp::Mul);
scalar_op!(Div, div, ArithOp::Div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Quadratic(x) => Scalar::Quadratic(QuadraticNumber { a: -&x.a, b: -&x.b, d: x.d }),
            Scalar::Cyclotomic(c) => {
                Scalar::Cyclotomic(CyclotomicReal { s: c.s, coeffs: c.coeffs.iter().map(|q| -q).collect() })
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_i64(v: i64) -> Self {
        Scalar::from_i64(v)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
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
        self.recip().ok()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Quadratic(x) => {
                if x.b.signum() < 0 {
                    write!(f, "{}-{}*sqrt({})", x.a, x.b.abs(), x.d)
                } else {
                    write!(f, "{}+{}*sqrt({})", x.a, x.b, x.d)
                }
            }
            Scalar::Cyclotomic(c) => {
                write!(f, "poly(t; ")?;
                for (i, q) in c.coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{q}")?;
                }
                write!(f, ")@{}", c.s)
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
