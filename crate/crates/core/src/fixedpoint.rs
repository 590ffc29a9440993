//! Sequences fixed by `L`, `L²` and higher powers of `L`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalar::{Rational, Scalar};
use crate::seqcore::{l_iterate, RBound, SeqKind, Sequence};

/// `slope·x + intercept` in a single unknown `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineForm<F = Scalar> {
    pub slope: F,
    pub intercept: F,
}

impl<F: Field> AffineForm<F> {
    pub fn constant(c: F) -> Self {
        AffineForm { slope: F::zero(), intercept: c }
    }

    /// The unknown itself.
    pub fn unknown() -> Self {
        AffineForm { slope: F::one(), intercept: F::zero() }
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        AffineForm { slope: self.slope.add(&rhs.slope), intercept: self.intercept.add(&rhs.intercept) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        AffineForm { slope: self.slope.sub(&rhs.slope), intercept: self.intercept.sub(&rhs.intercept) }
    }

    pub fn scale(&self, c: &F) -> Self {
        AffineForm { slope: self.slope.mul(c), intercept: self.intercept.mul(c) }
    }

    /// Product, defined only when one factor is constant.
    pub fn mul(&self, rhs: &Self) -> Option<Self> {
        if self.is_constant() {
            Some(rhs.scale(&self.intercept))
        } else if rhs.is_constant() {
            Some(self.scale(&rhs.intercept))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.slope.mul(x).add(&self.intercept)
    }
}

/// First `n_terms` of the sequence with `a_0 = 1` and zero pre-history
/// satisfying `a_n = c1 a_{n-1} + c2 a_{n-2} + c3 a_{n-3}`.
fn order_three(c: [Scalar; 3], n_terms: usize) -> Result<Sequence> {
    if n_terms == 0 {
        return Err(Error::Domain("n_terms must be at least 1".into()));
    }
    let mut a: Vec<Scalar> = Vec::with_capacity(n_terms);
    for n in 0..n_terms {
        let mut v = if n == 0 { Scalar::one() } else { Scalar::zero() };
        for (i, ci) in c.iter().enumerate() {
            if n > i {
                v = v.checked_add(&ci.checked_mul(&a[n - 1 - i])?)?;
            }
        }
        a.push(v);
    }
    Sequence::new(a, SeqKind::Prefix)
}

/// The `L`-fixed sequence with `a_0 = 1`, `a_1 = k`:
/// `a_n = k (a_{n-1} - a_{n-2}) + a_{n-3}`.
pub fn fix_l(k: &Scalar, n_terms: usize) -> Result<Sequence> {
    order_three([k.clone(), -k, Scalar::one()], n_terms)
}

/// The `L²`-fixed sequence with `a_0 = 1`, `a_1 = β`, `a_2 = γ`:
/// `a_n = β a_{n-1} - (β² - γ) a_{n-2} + a_{n-3}`.
pub fn fix_l2(beta: &Scalar, gamma: &Scalar, n_terms: usize) -> Result<Sequence> {
    let c2 = gamma.checked_sub(&beta.checked_mul(beta)?)?;
    order_three([beta.clone(), c2, Scalar::one()], n_terms)
}

/// `L^m(a)_n` as an affine function of `a_{n+m}`, the one entry of the
/// window `a_{n-m} .. a_{n+m}` not yet known.
fn affine_lm<F: Field>(a: &[F], m: usize, n: usize) -> Result<AffineForm<F>> {
    let top = n + m;
    let mut w: Vec<AffineForm<F>> = (n as isize - m as isize..=top as isize)
        .map(|j| match j {
            j if j < 0 => AffineForm::constant(F::zero()),
            j if j as usize == top => AffineForm::unknown(),
            j => AffineForm::constant(a[j as usize].clone()),
        })
        .collect();
    let nonlinear = || Error::Domain(format!("L^{m} window at index {n} is not affine in the next term"));
    for _ in 0..m {
        let mut next = Vec::with_capacity(w.len() - 2);
        for i in 1..w.len() - 1 {
            let sq = w[i].mul(&w[i]).ok_or_else(nonlinear)?;
            let cross = w[i - 1].mul(&w[i + 1]).ok_or_else(nonlinear)?;
            next.push(sq.sub(&cross));
        }
        w = next;
    }
    Ok(w.pop().expect("window of odd length"))
}

/// Next term of an `L^m`-fixed sequence from its known terms: solves
/// `L^m(a)_n = a_n` for `a_{n+m}` with `n = a.len() - m`.
///
/// With a zero slope the equation either holds whatever `a_{n+m}` is
/// (`SingularStep`) or never holds (`NoFixedExtension`).
fn next_fixed_term<F: Field>(a: &[F], m: usize) -> Result<F> {
    let index = a.len();
    let n = index - m;
    let form = affine_lm(a, m, n)?;
    let rhs = a[n].sub(&form.intercept);
    match form.slope.inv() {
        Some(inv) => Ok(rhs.mul(&inv)),
        None if rhs.is_zero() => Err(Error::SingularStep { index }),
        None => Err(Error::NoFixedExtension { index }),
    }
}

fn check_lm_prefix<F: Field>(prefix: &[F], m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    if prefix.len() != m + 1 {
        return Err(Error::Domain(format!("prefix for m = {m} needs {} entries, got {}", m + 1, prefix.len())));
    }
    // L^m(a)_0 = a_0^(2^m) = a_0 forces a_0 = 1
    if !prefix[0].is_one() {
        return Err(Error::Domain("prefix must start with 1".into()));
    }
    if let Some(i) = prefix.iter().position(F::is_zero) {
        return Err(Error::Domain(format!("prefix entry {i} is zero")));
    }
    Ok(())
}

/// Extends `a_0 .. a_m` to `n_terms` entries of the sequence fixed by `L^m`,
/// in any field.
pub fn extend_fixed_lm_in<F: Field>(prefix: &[F], m: usize, n_terms: usize) -> Result<Vec<F>> {
    check_lm_prefix(prefix, m)?;
    let mut a = prefix.to_vec();
    while a.len() < n_terms {
        let x = next_fixed_term(&a, m)?;
        a.push(x);
    }
    a.truncate(n_terms.max(1));
    Ok(a)
}

/// Extends `a_0 .. a_m` to `n_terms` entries of the sequence fixed by `L^m`.
pub fn extend_fixed_lm(prefix: &Sequence, m: usize, n_terms: usize) -> Result<Sequence> {
    let a = extend_fixed_lm_in(prefix.entries(), m, n_terms)?;
    Ok(Sequence::from_parts(a, SeqKind::Prefix))
}

/// Like [`extend_fixed_lm`], but starting from any number of known terms
/// (at least `m + 1`). This is how an extension continues past a
/// `SingularStep`, where the fixed-point equations leave a term free and the
/// caller picks its value.
pub fn continue_fixed_lm(known: &Sequence, m: usize, n_terms: usize) -> Result<Sequence> {
    let k = known.entries();
    if k.len() < m + 1 {
        return Err(Error::Domain(format!("need at least {} known terms, got {}", m + 1, k.len())));
    }
    check_lm_prefix(&k[..m + 1], m)?;
    let mut a = k.to_vec();
    while a.len() < n_terms {
        let x = next_fixed_term(&a, m)?;
        a.push(x);
    }
    Ok(Sequence::from_parts(a, SeqKind::Prefix))
}

/// Whether `L^m(seq) = λ·seq` on the entries `L^m(seq)` still has.
pub fn verify_fixed(seq: &Sequence, m: usize, lambda: &Scalar) -> bool {
    let Ok(image) = l_iterate(seq, m) else {
        return false;
    };
    image
        .entries()
        .iter()
        .zip(seq.entries())
        .all(|(x, a)| lambda.checked_mul(a).is_ok_and(|la| la == *x))
}

/// `a / λ`, which turns `L(a) = λ a` into `L(b) = b`.
pub fn eigen_normalize(seq: &Sequence, lambda: &Scalar) -> Result<Sequence> {
    seq.scale(&lambda.recip()?)
}

/// Coefficients of `p_{s,r}(x) = (1 - x^s) / ((1 - x)(1 - 2cos(2πr/s) x + x²))`.
pub fn p_sr(s: i64, r: i64) -> Result<Sequence> {
    if s < 3 || r < 1 || r >= s {
        return Err(Error::Domain(format!("need s >= 3 and 1 <= r < s, got s = {s}, r = {r}")));
    }
    if s == 2 * r {
        return Err(Error::Domain("s = 2r excluded".into()));
    }
    let k = Scalar::one().checked_add(&Scalar::cos2pi(r, s)?)?;
    Ok(fix_l(&k, (s - 2) as usize)?.with_kind(SeqKind::Polynomial))
}

/// The largest `r` for which the coefficients of `p_{s,1}` are r-factor
/// log-concave: `1/cos(2π/s)` for even `s`, `1/(1 - 2cos(π/s))²` for odd `s`,
/// and `+∞` for `s ∈ {3, 4}`.
pub fn p_s_threshold(s: i64) -> Result<RBound> {
    if s < 3 {
        return Err(Error::Domain(format!("need s >= 3, got {s}")));
    }
    if s <= 4 {
        return Ok(RBound::Infinite);
    }
    let r = if s % 2 == 0 {
        Scalar::from_i64(2).checked_div(&Scalar::cos2pi(1, s)?)?
    } else {
        let d = Scalar::one().checked_sub(&Scalar::cos2pi(1, 2 * s)?)?;
        d.checked_mul(&d)?.recip()?
    };
    Ok(RBound::Finite(r))
}

/// A prefix examined by [`search_integer_fixed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerCandidate {
    /// Positive integer terms, as many as were determined.
    pub terms: Vec<BigInt>,
    /// Index of a term the fixed-point equations leave free, if the
    /// extension stopped there.
    pub free_index: Option<usize>,
}

/// Bounded search for integer sequences fixed by `L^m`: every prefix
/// `(1, a_1, …, a_m)` with `1 ≤ a_i ≤ max_entry` whose extension to
/// `n_terms` entries consists of positive integers. Prefixes whose extension
/// reaches a free term while still integral and positive are kept, with
/// `free_index` set; no choice for the free term is explored.
pub fn search_integer_fixed(m: usize, max_entry: u32, n_terms: usize) -> Result<Vec<IntegerCandidate>> {
    if m == 0 || max_entry == 0 {
        return Err(Error::Domain("m and max_entry must be positive".into()));
    }
    let mut found = Vec::new();
    let mut digits = vec![1u32; m];
    'outer: loop {
        let mut a: Vec<Rational> = std::iter::once(Rational::one())
            .chain(digits.iter().map(|&d| Rational::from(d as i64)))
            .collect();
        let mut outcome = Some(None);
        while a.len() < n_terms {
            match next_fixed_term(&a, m) {
                Ok(x) if x.is_integer() && x.signum() > 0 => a.push(x),
                Err(Error::SingularStep { index }) => {
                    outcome = Some(Some(index));
                    break;
                }
                _ => {
                    outcome = None;
                    break;
                }
            }
        }
        if let Some(free_index) = outcome {
            let terms = a.iter().take(n_terms).map(|x| x.numer().clone()).collect();
            found.push(IntegerCandidate { terms, free_index });
        }
        for d in digits.iter_mut().rev() {
            if *d < max_entry {
                *d += 1;
                continue 'outer;
            }
            *d = 1;
        }
        break;
    }
    Ok(found)
}
