//! Finite sequences, the `L` operator and log-concavity predicates.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::scalar::{Rational, Scalar, Tower};

/// How the entry after the last one is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeqKind {
    /// Coefficients of a polynomial: `a_{d+1} = 0`.
    Polynomial,
    /// The first terms of an infinite sequence: `a_{d+1}` is unknown, so `L`
    /// drops the last entry.
    Prefix,
}

/// Nonempty vector of scalars from a common tower, with `a_{-1} = 0`.
#[derive(Clone, PartialEq)]
pub struct Sequence {
    entries: Vec<Scalar>,
    kind: SeqKind,
}

impl Sequence {
    /// Fails with `EmptyResult` for no entries and `IncompatibleTowers` when
    /// the entries cannot be combined.
    pub fn new(entries: Vec<Scalar>, kind: SeqKind) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyResult);
        }
        entries.iter().try_fold(Tower::Rational, |t, x| t.join(x.tower()))?;
        Ok(Sequence { entries, kind })
    }

    pub fn polynomial(entries: Vec<Scalar>) -> Result<Self> {
        Self::new(entries, SeqKind::Polynomial)
    }

    pub fn prefix(entries: Vec<Scalar>) -> Result<Self> {
        Self::new(entries, SeqKind::Prefix)
    }

    /// Integer entries; panics on an empty slice.
    pub fn from_i64s(kind: SeqKind, values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| Scalar::from_i64(v)).collect(), kind).expect("nonempty integer sequence")
    }

    /// Skips the tower check; callers guarantee compatible, nonempty entries.
    pub(crate) fn from_parts(entries: Vec<Scalar>, kind: SeqKind) -> Self {
        debug_assert!(!entries.is_empty());
        Sequence { entries, kind }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; sequences are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry `n`, with zero outside `0..len`.
    pub fn get(&self, n: isize) -> Scalar {
        if n < 0 {
            return Scalar::zero();
        }
        self.entries.get(n as usize).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Same entries, other boundary convention.
    pub fn with_kind(&self, kind: SeqKind) -> Sequence {
        Sequence { entries: self.entries.clone(), kind }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Sequence> {
        let entries = self.entries.iter().map(|x| x.checked_mul(c)).collect::<Result<Vec<_>>>()?;
        Ok(Sequence { entries, kind: self.kind })
    }

    /// Tower containing every entry.
    pub fn tower(&self) -> Tower {
        self.entries
            .iter()
            .try_fold(Tower::Rational, |t, x| t.join(x.tower()))
            .expect("validated at construction")
    }

    /// Index of the first entry that is not positive.
    pub fn first_nonpositive(&self) -> Option<usize> {
        self.entries.iter().position(|x| x.sign() <= 0)
    }

    /// Total bit size of the entries.
    pub fn bits(&self) -> u64 {
        self.entries.iter().map(Scalar::bits).sum()
    }

    pub fn max_entry_bits(&self) -> u64 {
        self.entries.iter().map(Scalar::bits).max().unwrap_or(0)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self)
    }
}

impl Serialize for Sequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

/// `L(a)_n = a_n² - a_{n-1} a_{n+1}`.
///
/// Polynomial sequences keep their length. Prefixes lose their last entry,
/// and a prefix of length one fails with `EmptyResult`.
pub fn l_operator(seq: &Sequence) -> Result<Sequence> {
    let a = &seq.entries;
    let len = match seq.kind {
        SeqKind::Polynomial => a.len(),
        SeqKind::Prefix => a.len() - 1,
    };
    if len == 0 {
        return Err(Error::EmptyResult);
    }
    let out = (0..len)
        .map(|n| {
            let sq = &a[n] * &a[n];
            if n == 0 || n + 1 >= a.len() {
                sq
            } else {
                &sq - &(&a[n - 1] * &a[n + 1])
            }
        })
        .collect();
    Ok(Sequence { entries: out, kind: seq.kind })
}

pub fn l_iterate(seq: &Sequence, m: usize) -> Result<Sequence> {
    let mut cur = seq.clone();
    for _ in 0..m {
        cur = l_operator(&cur)?;
    }
    Ok(cur)
}

/// Position of a negative entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Iterate `L^level` holding the negative entry.
    pub level: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthResult {
    /// Largest `j` with `L^0 .. L^j` nonnegative; `None` when the input
    /// itself has a negative entry.
    pub depth: Option<usize>,
    /// True when the search stopped at the bound without finding a negative
    /// entry; the depth is then only a lower bound.
    pub saturated: bool,
    pub witness: Option<Witness>,
}

/// Depth of log-concavity, examining `L^0 .. L^{max_m}`.
///
/// A prefix that runs out of entries ends the search as saturated.
pub fn log_concavity_depth(seq: &Sequence, max_m: usize) -> DepthResult {
    let mut cur = seq.clone();
    for level in 0..=max_m {
        if let Some(index) = cur.entries.iter().position(|x| x.sign() < 0) {
            return DepthResult { depth: level.checked_sub(1), saturated: false, witness: Some(Witness { level, index }) };
        }
        if level == max_m {
            break;
        }
        cur = match l_operator(&cur) {
            Ok(next) => next,
            Err(_) => return DepthResult { depth: Some(level), saturated: true, witness: None },
        };
    }
    DepthResult { depth: Some(max_m), saturated: true, witness: None }
}

/// An r-factor bound: a scalar or `+∞`.
#[derive(Clone, Debug, PartialEq)]
pub enum RBound {
    Finite(Scalar),
    Infinite,
}

impl RBound {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            RBound::Finite(r) => Some(r),
            RBound::Infinite => None,
        }
    }

    /// Total order with `+∞` on top; fails only for incompatible towers.
    pub fn try_cmp(&self, other: &RBound) -> Result<Ordering> {
        match (self, other) {
            (RBound::Infinite, RBound::Infinite) => Ok(Ordering::Equal),
            (RBound::Infinite, _) => Ok(Ordering::Greater),
            (_, RBound::Infinite) => Ok(Ordering::Less),
            (RBound::Finite(a), RBound::Finite(b)) => a.try_cmp(b),
        }
    }

    pub fn to_f64_lossy(&self) -> f64 {
        match self {
            RBound::Finite(r) => r.to_f64_lossy(),
            RBound::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for RBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RBound::Finite(r) => write!(f, "{r}"),
            RBound::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for RBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Ratio `a_n² / (a_{n-1} a_{n+1})` at each internal index.
fn internal_ratios(a: &[Scalar]) -> impl Iterator<Item = Scalar> + '_ {
    (1..a.len().saturating_sub(1)).map(move |n| &(&a[n] * &a[n]) / &(&a[n - 1] * &a[n + 1]))
}

/// `log2 |x|` to about 15 significant digits, for any size of `x ≠ 0`.
fn approx_log2(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x.magnitude() >> shift).to_u64().expect("64 bits") as f64;
    top.log2() + shift as f64
}

/// Scores closer than this to the minimum are compared exactly. Floating
/// error in a score is below `1e-9` even for million-bit entries.
const LOG_MARGIN: f64 = 1e-6;

/// The minimal ratio for rational entries `a_n = p_n/q_n`, i.e. the minimal
/// `p_n² q_{n-1} q_{n+1} / (q_n² p_{n-1} p_{n+1})`. Indices are screened by
/// floating-point logarithms and only near-minimal ones are compared
/// exactly, so that huge entries cost few big multiplications and a single
/// gcd. `None` if some entry is irrational.
fn rational_supremum(a: &[Scalar]) -> Option<RBound> {
    let q: Vec<&Rational> = a.iter().map(Scalar::as_rational).collect::<Option<_>>()?;
    if q.len() < 3 {
        return Some(RBound::Infinite);
    }
    let logs: Vec<(f64, f64)> = q.iter().map(|x| (approx_log2(x.numer()), approx_log2(x.denom()))).collect();
    let score = |n: usize| {
        2.0 * logs[n].0 + logs[n - 1].1 + logs[n + 1].1 - 2.0 * logs[n].1 - logs[n - 1].0 - logs[n + 1].0
    };
    let scores: Vec<f64> = (1..q.len() - 1).map(score).collect();
    let least = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let mut best: Option<(BigInt, BigInt)> = None;
    for (i, _) in scores.iter().enumerate().filter(|(_, &sc)| sc <= least + LOG_MARGIN) {
        let n = i + 1;
        let (p0, p1, p2) = (q[n - 1].numer(), q[n].numer(), q[n + 1].numer());
        let (d0, d1, d2) = (q[n - 1].denom(), q[n].denom(), q[n + 1].denom());
        let num = if d0.is_one() && d2.is_one() { p1 * p1 } else { p1 * p1 * d0 * d2 };
        let den = if d1.is_one() { p0 * p2 } else { d1 * d1 * p0 * p2 };
        best = match best {
            Some((bn, bd)) if &bn * &den <= &num * &bd => Some((bn, bd)),
            _ => Some((num, den)),
        };
    }
    let (num, den) = best.expect("at least one internal index");
    Some(RBound::Finite(Scalar::from(Rational::new(num, den).expect("positive denominator"))))
}

/// Largest `r` with `a_n² ≥ r a_{n-1} a_{n+1}` at every internal index, for
/// positive entries.
pub fn r_factor_supremum(seq: &Sequence) -> Result<RBound> {
    if let Some(index) = seq.first_nonpositive() {
        return Err(Error::NonPositiveEntry { index });
    }
    if let Some(r) = rational_supremum(&seq.entries) {
        return Ok(r);
    }
    let mut best: Option<Scalar> = None;
    for q in internal_ratios(&seq.entries) {
        best = match best {
            Some(b) if b.try_cmp(&q)? != Ordering::Greater => Some(b),
            _ => Some(q),
        };
    }
    Ok(best.map_or(RBound::Infinite, RBound::Finite))
}

/// Literal test of `a_n² ≥ r a_{n-1} a_{n+1}` (or `>` when `strict`) at every
/// internal index.
pub fn is_r_factor(seq: &Sequence, r: &Scalar, strict: bool) -> Result<bool> {
    let a = &seq.entries;
    for n in 1..a.len().saturating_sub(1) {
        let rhs = r.checked_mul(&(&a[n - 1] * &a[n + 1]))?;
        let diff = (&a[n] * &a[n]).checked_sub(&rhs)?;
        let s = diff.try_sign()?;
        if s < 0 || (strict && s == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_palindromic(seq: &Sequence) -> bool {
    let a = &seq.entries;
    (0..a.len() / 2).all(|i| a[i] == a[a.len() - 1 - i])
}

/// Whether a zero entry is followed by a nonzero one.
pub fn has_internal_zeros(seq: &Sequence) -> bool {
    let a = &seq.entries;
    match a.iter().position(Scalar::is_zero) {
        Some(first) => a[first..].iter().any(|x| !x.is_zero()),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn poly(v: &[i64]) -> Sequence {
        Sequence::from_i64s(SeqKind::Polynomial, v)
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from(Rational::new(n.into(), d.into()).unwrap())
    }

    #[test]
    fn l_on_binomial_cubic() {
        let p = poly(&[1, 4, 6, 4]);
        let l1 = l_operator(&p).unwrap();
        assert_eq!(l1, poly(&[1, 10, 20, 16]));
        assert_eq!(l_iterate(&p, 2).unwrap(), poly(&[1, 80, 240, 256]));
        assert_eq!(l_iterate(&p, 0).unwrap(), p);
    }

    #[test]
    fn prefix_shrinks() {
        let a = Sequence::from_i64s(SeqKind::Prefix, &[1, 2, 3, 5, 9, 16, 28]);
        assert_eq!(l_operator(&a).unwrap(), Sequence::from_i64s(SeqKind::Prefix, &[1, 1, -1, -2, 1, 4]));
        let one = Sequence::from_i64s(SeqKind::Prefix, &[3]);
        assert_eq!(l_operator(&one), Err(Error::EmptyResult));
    }

    #[test]
    fn depth_examples() {
        let d = log_concavity_depth(&poly(&[1, 1, 2]), 10);
        assert_eq!(d.depth, Some(0));
        assert_eq!(d.witness, Some(Witness { level: 1, index: 1 }));
        let d = log_concavity_depth(&poly(&[1, 2, 1]), 3);
        assert_eq!((d.depth, d.saturated), (Some(3), true));
        let d = log_concavity_depth(&poly(&[1, -1]), 3);
        assert_eq!(d.depth, None);
        // (1,1,1,1,1): L gives (1,0,0,0,1), then nonnegative forever
        let d = log_concavity_depth(&poly(&[1, 1, 1, 1, 1]), 4);
        assert_eq!((d.depth, d.saturated), (Some(4), true));
    }

    #[test]
    fn r_factor_examples() {
        assert_eq!(r_factor_supremum(&poly(&[1, 4, 6, 4])).unwrap(), RBound::Finite(q(9, 4)));
        assert_eq!(r_factor_supremum(&poly(&[1, 80, 240, 256])).unwrap(), RBound::Finite(q(45, 16)));
        let p2 = Sequence::polynomial(vec![q(21, 8), q(15, 4), q(3, 2)]).unwrap();
        assert_eq!(r_factor_supremum(&p2).unwrap(), RBound::Finite(q(25, 7)));
        assert_eq!(r_factor_supremum(&poly(&[3, 1])).unwrap(), RBound::Infinite);
        assert_eq!(r_factor_supremum(&poly(&[1, 0, 1])), Err(Error::NonPositiveEntry { index: 1 }));
    }

    #[test]
    fn r_factor_predicate() {
        let p = poly(&[1, 4, 6, 4]);
        assert!(is_r_factor(&p, &q(9, 4), false).unwrap());
        assert!(!is_r_factor(&p, &q(9, 4), true).unwrap());
        assert!(is_r_factor(&poly(&[1, 2, 1]), &Scalar::from_i64(4), false).unwrap());
    }

    #[test]
    fn shape_predicates() {
        assert!(is_palindromic(&poly(&[1, 2, 2, 1])));
        assert!(!is_palindromic(&poly(&[1, 4, 12, 33])));
        assert!(!has_internal_zeros(&poly(&[1, 1, 0, 0])));
        assert!(has_internal_zeros(&poly(&[1, 0, 0, 1])));
        assert!(!has_internal_zeros(&poly(&[1, 3, 6, 10])));
    }

    #[test]
    fn incompatible_entries_rejected() {
        let r2 = Scalar::sqrt_rational(&Rational::from(2)).unwrap();
        let t7 = Scalar::cos2pi(1, 7).unwrap();
        assert!(matches!(Sequence::polynomial(vec![r2, t7]), Err(Error::IncompatibleTowers(_, _))));
        assert_eq!(Sequence::polynomial(vec![]), Err(Error::EmptyResult));
    }
}
