//! Real cyclotomic numbers: polynomials in `t = 2cos(2π/s)` reduced modulo
//! the minimal polynomial `Ψ_s`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest conductor accepted by the cyclotomic constructors.
pub const MAX_CONDUCTOR: u32 = 1024;

const DEFAULT_MAX_BITS: u32 = 16384;
const START_BITS: u32 = 64;

static MAX_BITS: OnceLock<AtomicU32> = OnceLock::new();

fn max_bits_cell() -> &'static AtomicU32 {
    MAX_BITS.get_or_init(|| {
        let v = std::env::var("LOGCV_MAX_BITS")
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .filter(|&b| b >= START_BITS)
            .unwrap_or(DEFAULT_MAX_BITS);
        AtomicU32::new(v)
    })
}

/// Precision cap for sign determination by interval refinement. Defaults to
/// `LOGCV_MAX_BITS` from the environment, else 16384.
pub fn max_precision_bits() -> u32 {
    max_bits_cell().load(Ordering::Relaxed)
}

pub fn set_max_precision_bits(bits: u32) {
    max_bits_cell().store(bits.max(START_BITS), Ordering::Relaxed);
}

/// `Φ_s` by exact division of `x^s - 1` by the `Φ_d` of the proper divisors.
pub fn cyclotomic_polynomial(s: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&s) {
        return v.clone();
    }
    assert!(s >= 1);
    let mut num: Vec<BigInt> = vec![BigInt::zero(); s as usize + 1];
    num[0] = BigInt::from(-1);
    num[s as usize] = BigInt::one();
    for d in (1..s).filter(|d| s.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    cache.lock().unwrap().insert(s, num.clone());
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    quot
}

/// `C_k` with `C_k(2cos θ) = 2cos(kθ)`: `C_0 = 2`, `C_1 = x`,
/// `C_{k+1} = x C_k - C_{k-1}`.
pub fn chebyshev_c(k: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(2)];
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Monic minimal polynomial `Ψ_s` of `2cos(2π/s)`, from
/// `Φ_s(x) = x^{φ(s)/2} Ψ_s(x + 1/x)`.
pub fn min_poly_2cos(s: u32) -> Result<Poly<Rational>> {
    Ok(Poly::new(psi_integer(s)?.into_iter().map(Rational::from_integer).collect()))
}

fn psi_integer(s: u32) -> Result<Vec<BigInt>> {
    if s < 3 {
        return Err(Error::Domain(format!("conductor must be at least 3, got {s}")));
    }
    let phi = cyclotomic_polynomial(s);
    let n = (phi.len() - 1) / 2;
    let mut psi = vec![BigInt::zero(); n + 1];
    psi[0] = phi[n].clone();
    for k in 1..=n {
        let c = &phi[n + k];
        if c.is_zero() {
            continue;
        }
        for (i, ck) in chebyshev_c(k).iter().enumerate() {
            psi[i] += c * ck;
        }
    }
    Ok(psi)
}

/// Cached arithmetic context for one conductor.
#[derive(Debug)]
pub(crate) struct CycloField {
    pub s: u32,
    /// Degree of `Ψ_s`.
    pub n: usize,
    psi: Vec<Rational>,
    enclosure: Mutex<Enclosure>,
}

/// Isolating interval `[lo, lo + 2^-bits]` for `t_s`, with the sign of
/// `Ψ_s` at `lo`.
#[derive(Debug, Clone)]
struct Enclosure {
    lo: Rational,
    bits: u32,
    sign_lo: i32,
}

pub(crate) fn field(s: u32) -> Result<Arc<CycloField>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    if s > MAX_CONDUCTOR {
        return Err(Error::Domain(format!("conductor {s} exceeds supported maximum {MAX_CONDUCTOR}")));
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&s) {
        return Ok(f.clone());
    }
    let psi: Vec<Rational> = psi_integer(s)?.into_iter().map(Rational::from_integer).collect();
    let n = psi.len() - 1;
    let enclosure = Mutex::new(seed_enclosure(s, &psi));
    let f = Arc::new(CycloField { s, n, psi, enclosure });
    cache.lock().unwrap().insert(s, f.clone());
    Ok(f)
}

fn dyadic(m: BigInt, bits: u32) -> Rational {
    Rational::new(m, BigInt::one() << bits).expect("nonzero denominator")
}

fn eval_sign(psi: &[Rational], x: &Rational) -> i32 {
    let mut acc = Rational::zero();
    for c in psi.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc.signum()
}

/// Starting interval of width 2^-29 around the floating-point value of
/// `2cos(2π/s)`. Distinct roots of `Ψ_s` are at least `48/s^2` apart, far more
/// than the width for every supported conductor, and the sign change of `Ψ_s`
/// across the interval is checked exactly, so the interval isolates `t_s`.
fn seed_enclosure(s: u32, psi: &[Rational]) -> Enclosure {
    const SEED_BITS: u32 = 40;
    const HALF_WIDTH: i64 = 1 << 10;
    let approx = 2.0 * (2.0 * std::f64::consts::PI / s as f64).cos();
    let m = (approx * (1u64 << SEED_BITS) as f64).round() as i64;
    let lo = dyadic(BigInt::from(m - HALF_WIDTH), SEED_BITS);
    let hi = dyadic(BigInt::from(m + HALF_WIDTH), SEED_BITS);
    let (sl, sh) = (eval_sign(psi, &lo), eval_sign(psi, &hi));
    assert!(sl * sh < 0 || psi.len() <= 2, "seed interval does not isolate 2cos(2pi/{s})");
    Enclosure { lo, bits: SEED_BITS - 11, sign_lo: sl }
}

impl CycloField {
    pub fn psi(&self) -> &[Rational] {
        &self.psi
    }

    /// Reduces an arbitrary polynomial in `t` modulo `Ψ_s`.
    pub fn reduce(&self, mut c: Vec<Rational>) -> Vec<Rational> {
        let n = self.n;
        while c.len() > n {
            let top = c.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let k = c.len() - n;
            for i in 0..n {
                if !self.psi[i].is_zero() {
                    c[k + i] = &c[k + i] - &(&top * &self.psi[i]);
                }
            }
        }
        trim(&mut c);
        c
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        self.reduce(out)
    }

    /// Inverse modulo `Ψ_s` by the extended Euclidean algorithm.
    pub fn inv(&self, a: &[Rational]) -> Option<Vec<Rational>> {
        if a.is_empty() {
            return None;
        }
        let modulus = Poly::new(self.psi.clone());
        let (mut r0, mut r1) = (modulus, Poly::new(a.to_vec()));
        let (mut s0, mut s1) = (Poly::<Rational>::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Ψ_s is irreducible
        let c = r0.coeffs().first()?.recip()?;
        Some(self.reduce(s0.scale(&c).into_coeffs()))
    }

    /// `C_k(t)` reduced modulo `Ψ_s`, i.e. `2cos(2πk/s)`.
    pub fn chebyshev_image(&self, k: usize) -> Vec<Rational> {
        let mut prev = vec![Rational::from(2)];
        let mut cur = self.reduce(vec![Rational::zero(), Rational::one()]);
        if k == 0 {
            return self.reduce(prev);
        }
        let t = cur.clone();
        for _ in 1..k {
            let mut next = self.mul(&t, &cur);
            sub_assign(&mut next, &prev);
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    /// Substitutes `g` (already reduced) for the generator of `a`.
    pub fn substitute(&self, a: &[Rational], g: &[Rational]) -> Vec<Rational> {
        let mut acc: Vec<Rational> = Vec::new();
        for c in a.iter().rev() {
            acc = self.mul(&acc, g);
            add_assign(&mut acc, std::slice::from_ref(c));
        }
        acc
    }

    /// Exact sign by interval evaluation at `t_s`, doubling the precision
    /// until the enclosure excludes zero. Zero is decided symbolically.
    pub fn sign(&self, a: &[Rational]) -> Result<i32> {
        if a.is_empty() {
            return Ok(0);
        }
        if a.len() == 1 {
            return Ok(a[0].signum());
        }
        let cap = max_precision_bits();
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.enclosure(bits);
            let (vlo, vhi) = interval_horner(a, &lo, &hi);
            if vlo.signum() > 0 {
                return Ok(1);
            }
            if vhi.signum() < 0 {
                return Ok(-1);
            }
            if bits >= cap {
                return Err(Error::PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(cap);
        }
    }

    fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        let mut enc = self.enclosure.lock().unwrap();
        while enc.bits < bits {
            let next_bits = enc.bits + 1;
            let mid = &enc.lo + &dyadic(BigInt::one(), next_bits);
            let sm = eval_sign(&self.psi, &mid);
            if sm == enc.sign_lo {
                enc.lo = mid;
            }
            enc.bits = next_bits;
        }
        let hi = &enc.lo + &dyadic(BigInt::one(), enc.bits);
        (enc.lo.clone(), hi)
    }
}

fn interval_horner(a: &[Rational], lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut acc_lo = Rational::zero();
    let mut acc_hi = Rational::zero();
    for c in a.iter().rev() {
        let p = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
        let min = p.iter().min().expect("four products").clone();
        let max = p.iter().max().expect("four products").clone();
        acc_lo = &min + c;
        acc_hi = &max + c;
    }
    (acc_lo, acc_hi)
}

pub(crate) fn trim(c: &mut Vec<Rational>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

pub(crate) fn add_assign(a: &mut Vec<Rational>, b: &[Rational]) {
    if a.len() < b.len() {
        a.resize(b.len(), Rational::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x = &*x + y;
    }
    trim(a);
}

pub(crate) fn sub_assign(a: &mut Vec<Rational>, b: &[Rational]) {
    if a.len() < b.len() {
        a.resize(b.len(), Rational::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x = &*x - y;
    }
    trim(a);
}

/// Conductor of the field `Q(2cos(2π/s))` after identifying `s ≡ 2 (mod 4)`
/// with `s/2`.
pub(crate) fn normalized_conductor(s: u32) -> u32 {
    if s % 4 == 2 {
        s / 2
    } else {
        s
    }
}

/// Whether `Q(t_small) ⊆ Q(t_big)`.
pub(crate) fn field_contains(big: u32, small: u32) -> bool {
    normalized_conductor(big).is_multiple_of(normalized_conductor(small))
}

/// Representation of `t_from = 2cos(2π/from)` in the field of conductor `to`.
pub(crate) fn generator_in(from: u32, to: &CycloField) -> Option<Vec<Rational>> {
    let s = to.s;
    if s.is_multiple_of(from) {
        return Some(to.chebyshev_image((s / from) as usize));
    }
    if from % 4 == 2 {
        // 2cos(π/h) = -2cos(2π·((h+1)/2)/h) for odd h
        let h = from / 2;
        if s.is_multiple_of(h) {
            let k = h.div_ceil(2) * (s / h);
            let mut g = to.chebyshev_image(k as usize);
            for c in g.iter_mut() {
                *c = -&*c;
            }
            return Some(g);
        }
    }
    None
}

/// Kronecker symbol `(disc / k)` for a positive discriminant and `k ≥ 1`.
fn kronecker(disc: u64, mut k: u64) -> i32 {
    let mut result = 1;
    while k.is_multiple_of(2) {
        k /= 2;
        match disc % 8 {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    result * jacobi(disc % k, k)
}

fn jacobi(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    let mut result = 1;
    a %= n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Fundamental discriminant of `Q(√d)` for square-free `d ≥ 2`.
pub(crate) fn quadratic_discriminant(d: u64) -> u64 {
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

/// `√d` in the field of conductor `to`, from the quadratic Gauss sum
/// `√Δ = Σ_k (Δ/k) cos(2πk/Δ)`. The result is checked by squaring and by its
/// sign.
pub(crate) fn sqrt_in(d: u64, to: &CycloField) -> Option<Vec<Rational>> {
    let disc = quadratic_discriminant(d);
    let s = to.s as u64;
    if !s.is_multiple_of(disc) {
        return None;
    }
    let mut acc: Vec<Rational> = Vec::new();
    for k in 1..disc {
        let chi = kronecker(disc, k);
        if chi == 0 {
            continue;
        }
        let img = to.chebyshev_image((k * (s / disc)) as usize);
        if chi > 0 {
            add_assign(&mut acc, &img);
        } else {
            sub_assign(&mut acc, &img);
        }
    }
    let scale = Rational::new(BigInt::one(), BigInt::from(if disc == d { 2 } else { 4 })).ok()?;
    let mut root: Vec<Rational> = acc.iter().map(|c| c * &scale).collect();
    trim(&mut root);
    let sq = to.mul(&root, &root);
    if sq != vec![Rational::from(d as i64)] {
        return None;
    }
    if to.sign(&root).ok()? < 0 {
        root.iter_mut().for_each(|c| *c = -&*c);
    }
    Some(root)
}

/// Element of `Q(2cos(2π/s))` as a reduced polynomial in `t = 2cos(2π/s)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicReal {
    pub(crate) s: u32,
    pub(crate) coeffs: Vec<Rational>,
}

impl CyclotomicReal {
    /// Reduces `coeffs` modulo `Ψ_s`. The result may be rational; use
    /// [`Scalar::from`](crate::Scalar) to obtain the canonical tower member.
    pub fn new(s: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let f = field(s)?;
        Ok(CyclotomicReal { s, coeffs: f.reduce(coeffs) })
    }

    pub fn conductor(&self) -> u32 {
        self.s
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn field(&self) -> Arc<CycloField> {
        field(self.s).expect("conductor validated at construction")
    }

    pub fn try_sign(&self) -> Result<i32> {
        self.field().sign(&self.coeffs)
    }
}

/// Square-free decomposition `n = m^2 · d`, returning `(m, d)`.
pub(crate) fn square_free_part(n: &BigInt) -> Result<(BigInt, BigInt)> {
    assert!(!n.is_negative());
    if n.is_zero() {
        return Ok((BigInt::zero(), BigInt::one()));
    }
    const TRIAL: u64 = 100_000;
    let mut rest = n.clone();
    let mut m = BigInt::one();
    let mut d = BigInt::one();
    let mut p = 2u64;
    let mut exhausted = true;
    while p <= TRIAL {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            exhausted = false;
            break;
        }
        let mut e = 0;
        while rest.is_multiple_of(&bp) {
            rest /= &bp;
            e += 1;
        }
        for _ in 0..e / 2 {
            m *= &bp;
        }
        if e % 2 == 1 {
            d *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !exhausted {
        // rest is 1 or a prime
        d *= rest;
        return Ok((m, d));
    }
    // every prime factor of rest exceeds TRIAL, so a non-square rest below
    // TRIAL^3 has at most two distinct prime factors and no repeated one
    let r = rest.sqrt();
    if &r * &r == rest {
        m *= r;
    } else if rest < BigInt::from(TRIAL).pow(3) {
        d *= rest;
    } else {
        return Err(Error::Domain(format!("cannot determine the square-free part of {n}")));
    }
    Ok((m, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(psi_integer(5).unwrap(), ints(&[-1, 1, 1]));
        assert_eq!(psi_integer(6).unwrap(), ints(&[-1, 1]));
        assert_eq!(psi_integer(8).unwrap(), ints(&[-2, 0, 1]));
        assert_eq!(psi_integer(3).unwrap(), ints(&[1, 1]));
        assert_eq!(psi_integer(4).unwrap(), ints(&[0, 1]));
        // 2cos(2π/7) is a root of t^3 + t^2 - 2t - 1
        assert_eq!(psi_integer(7).unwrap(), ints(&[-1, -2, 1, 1]));
        assert!(psi_integer(2).is_err());
    }

    #[test]
    fn chebyshev_c_values() {
        assert_eq!(chebyshev_c(2), ints(&[-2, 0, 1]));
        assert_eq!(chebyshev_c(3), ints(&[0, -3, 0, 1]));
    }

    #[test]
    fn square_in_conductor_five() {
        let f = field(5).unwrap();
        let t = vec![Rational::zero(), Rational::one()];
        // t^2 = -t + 1
        assert_eq!(f.mul(&t, &t), vec![Rational::one(), Rational::from(-1)]);
    }

    #[test]
    fn inverse_mod_psi() {
        let f = field(7).unwrap();
        let a = vec![Rational::from(1), Rational::from(2), Rational::from(-3)];
        let b = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &b), vec![Rational::one()]);
    }

    #[test]
    fn kronecker_symbols() {
        // (5/k) for k = 1..4 : 1, -1, -1, 1
        assert_eq!([1, 2, 3, 4].map(|k| kronecker(5, k)), [1, -1, -1, 1]);
        // (8/k) for odd k: +1 when k ≡ ±1 mod 8
        assert_eq!([1, 3, 5, 7].map(|k| kronecker(8, k)), [1, -1, -1, 1]);
        assert_eq!(kronecker(8, 2), 0);
    }

    #[test]
    fn gauss_sum_square_roots() {
        for (d, s) in [(2u64, 8u32), (2, 16), (2, 24), (3, 12), (3, 24), (5, 5), (5, 15), (13, 13)] {
            let f = field(s).unwrap();
            let r = sqrt_in(d, &f).unwrap_or_else(|| panic!("sqrt({d}) in conductor {s}"));
            assert_eq!(f.mul(&r, &r), vec![Rational::from(d as i64)]);
            assert_eq!(f.sign(&r).unwrap(), 1);
        }
        assert!(sqrt_in(2, &field(7).unwrap()).is_none());
    }

    #[test]
    fn generator_embeddings() {
        // t_7 = C_2(t_14) and t_14 = -C_4(t_7)
        let f14 = field(14).unwrap();
        let f7 = field(7).unwrap();
        let g = generator_in(7, &f14).unwrap();
        let back = generator_in(14, &f7).unwrap();
        // composing the two embeddings returns the generator of conductor 7
        let round = f7.substitute(&g, &back);
        assert_eq!(round, vec![Rational::zero(), Rational::one()]);
        assert!(generator_in(7, &field(9).unwrap()).is_none());
        assert!(field_contains(14, 7) && field_contains(7, 14));
        assert!(!field_contains(8, 7));
    }

    #[test]
    fn interval_signs() {
        let f = field(7).unwrap();
        // t ≈ 1.2470
        let a = vec![Rational::from(-5) / Rational::from(4), Rational::one()];
        assert_eq!(f.sign(&a).unwrap(), -1);
        let b = vec![Rational::from(-6) / Rational::from(5), Rational::one()];
        assert_eq!(f.sign(&b).unwrap(), 1);
        assert_eq!(f.sign(&[]).unwrap(), 0);
    }

    #[test]
    fn square_free_parts() {
        let (m, d) = square_free_part(&BigInt::from(72)).unwrap();
        assert_eq!((m, d), (BigInt::from(6), BigInt::from(2)));
        let (m, d) = square_free_part(&BigInt::from(49)).unwrap();
        assert_eq!((m, d), (BigInt::from(7), BigInt::from(1)));
        let (m, d) = square_free_part(&BigInt::from(1_000_003u64 * 4)).unwrap();
        assert_eq!((m, d), (BigInt::from(2), BigInt::from(1_000_003u64)));
    }
}
