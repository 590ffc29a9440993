//! Deciding infinite log-concavity of a finite sequence by iterating `L`,
//! with checkable certificates, and the coefficient tests for root location.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Parallelism;
use crate::scalar::{Rational, Scalar};
use crate::seqcore::{l_operator, r_factor_supremum, is_r_factor, RBound, SeqKind, Sequence};

pub const DEFAULT_MAX_ITER: usize = 100;

/// Iteration stops with `Unknown` once an entry of an iterate needs more
/// bits than this. Sizes double with every application of `L`.
pub const DEFAULT_MAX_ENTRY_BITS: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateKind {
    /// `L^m` has a negative entry at `witness`; `L^0 .. L^{m-1}` do not.
    NotMLogConcave { m: usize, witness: usize },
    /// `L^m(a) = λ·L^{cycle_start}(a)` with `λ > 0` and
    /// `period = m - cycle_start`, all iterates up to `m` nonnegative. Every
    /// later iterate is then a positive multiple of an earlier one.
    FixedPoint { m: usize, lambda: Scalar, cycle_start: usize, period: usize },
    /// `L^m(a)` is positive and `r`-factor log-concave with `r ≥ (3+√5)/2`;
    /// `r` is its exact r-factor supremum.
    RFactor { m: usize, r: RBound },
    Unknown { iterations: usize, reason: String },
}

/// Summary of one examined iterate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEntry {
    pub m: usize,
    /// `None` when the iterate has a zero or negative entry.
    pub r_sup: Option<RBound>,
    /// Smallest sign among the entries.
    pub min_sign: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub kind: CertificateKind,
    pub trace: Vec<TraceEntry>,
}

impl Certificate {
    /// Whether the certificate proves infinite log-concavity.
    pub fn is_infinite(&self) -> bool {
        matches!(self.kind, CertificateKind::FixedPoint { .. } | CertificateKind::RFactor { .. })
    }

    /// The iterate at which the procedure stopped, if it reached a verdict.
    pub fn m(&self) -> Option<usize> {
        match self.kind {
            CertificateKind::NotMLogConcave { m, .. }
            | CertificateKind::FixedPoint { m, .. }
            | CertificateKind::RFactor { m, .. } => Some(m),
            CertificateKind::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub max_iter: usize,
    pub max_entry_bits: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { max_iter: DEFAULT_MAX_ITER, max_entry_bits: DEFAULT_MAX_ENTRY_BITS }
    }
}

/// `(3 + √(5 + 4s))/2`: the least `r` with `L` mapping r-factor log-concave
/// sequences to (r+s)-factor log-concave ones.
pub fn cc_threshold(s: &Scalar) -> Result<Scalar> {
    let s = rational_shift(s)?;
    let disc = &Rational::from(5) + &(&Rational::from(4) * &s);
    let root = Scalar::sqrt_rational(&disc)?;
    (&Scalar::from_i64(3) + &root).checked_div(&Scalar::from_i64(2))
}

fn rational_shift(s: &Scalar) -> Result<Rational> {
    match s.as_rational() {
        Some(q) if q.signum() >= 0 => Ok(q.clone()),
        Some(_) => Err(Error::Domain(format!("shift must be nonnegative, got {s}"))),
        None => Err(Error::Domain(format!("shift must be rational, got {s}"))),
    }
}

/// `r ≥ cc_threshold(s)`, decided without leaving the tower of `r`:
/// `2r - 3 ≥ 0` and `(2r - 3)² ≥ 5 + 4s`.
pub fn meets_cc_threshold(r: &RBound, s: &Scalar) -> Result<bool> {
    let s = rational_shift(s)?;
    let RBound::Finite(r) = r else {
        return Ok(true);
    };
    let bound = &Rational::from(5) + &(&Rational::from(4) * &s);
    if let Some(r) = r.as_rational() {
        // with r = N/D and D > 0: 2N - 3D ≥ 0 and (2N - 3D)² ≥ bound·D²,
        // in integers so that huge r needs no gcd
        let d = r.denom();
        let t = BigInt::from(2) * r.numer() - BigInt::from(3) * d;
        if t.sign() == Sign::Minus {
            return Ok(false);
        }
        let lhs = &t * &t * bound.denom();
        return Ok(lhs >= bound.numer() * d * d);
    }
    let t = r.checked_add(r)?.checked_sub(&Scalar::from_i64(3))?;
    if t.try_sign()? < 0 {
        return Ok(false);
    }
    Ok(t.checked_mul(&t)?.checked_sub(&Scalar::from(bound))?.try_sign()? >= 0)
}

fn unknown(iterations: usize, reason: impl Into<String>, trace: Vec<TraceEntry>) -> Certificate {
    Certificate { kind: CertificateKind::Unknown { iterations, reason: reason.into() }, trace }
}

/// `λ` with `cur = λ·prev`, if one exists and is positive.
fn eigen_ratio(cur: &Sequence, prev: &Sequence) -> Result<Option<Scalar>> {
    let (a, b) = (cur.entries(), prev.entries());
    if a.len() != b.len() || b[0].is_zero() {
        return Ok(None);
    }
    // cross-multiplied, so a mismatch costs no division
    for (x, y) in a.iter().zip(b).skip(1) {
        if x.checked_mul(&b[0])? != a[0].checked_mul(y)? {
            return Ok(None);
        }
    }
    let lambda = a[0].checked_div(&b[0])?;
    Ok((lambda.try_sign()? > 0).then_some(lambda))
}

/// Iterates `L` on a positive sequence until a verdict.
///
/// At each iterate `m = 0, 1, …, max_iter`, in order:
/// a negative entry gives `NotMLogConcave`; equality with a positive
/// multiple of any earlier iterate (not only the input) gives `FixedPoint`;
/// positivity with r-factor supremum at least `(3+√5)/2` gives `RFactor`.
/// The input is read as polynomial coefficients whatever its kind.
pub fn certify_infinite(seq: &Sequence, max_iter: usize) -> Result<Certificate> {
    certify_with(seq, CertifyOptions { max_iter, ..CertifyOptions::default() })
}

pub fn certify_with(seq: &Sequence, opts: CertifyOptions) -> Result<Certificate> {
    if let Some(index) = seq.first_nonpositive() {
        return Err(Error::NonPositiveInput { index });
    }
    let zero = Scalar::zero();
    let mut history: Vec<Sequence> = Vec::new();
    let mut trace: Vec<TraceEntry> = Vec::new();
    let mut cur = seq.with_kind(SeqKind::Polynomial);
    for m in 0..=opts.max_iter {
        let mut min_sign = 1;
        let mut witness = None;
        for (i, x) in cur.entries().iter().enumerate() {
            let s = match x.try_sign() {
                Ok(s) => s,
                Err(e) => return Ok(unknown(m, e.to_string(), trace)),
            };
            if s < min_sign {
                min_sign = s;
            }
            if s < 0 {
                witness = Some(i);
                break;
            }
        }
        if let Some(witness) = witness {
            trace.push(TraceEntry { m, r_sup: None, min_sign });
            return Ok(Certificate { kind: CertificateKind::NotMLogConcave { m, witness }, trace });
        }
        let r_sup = if min_sign > 0 {
            match r_factor_supremum(&cur) {
                Ok(r) => Some(r),
                Err(e) => return Ok(unknown(m, e.to_string(), trace)),
            }
        } else {
            None
        };
        trace.push(TraceEntry { m, r_sup: r_sup.clone(), min_sign });
        for (j, prev) in history.iter().enumerate() {
            match eigen_ratio(&cur, prev) {
                Ok(Some(lambda)) => {
                    let kind = CertificateKind::FixedPoint { m, lambda, cycle_start: j, period: m - j };
                    return Ok(Certificate { kind, trace });
                }
                Ok(None) => {}
                Err(e) => return Ok(unknown(m, e.to_string(), trace)),
            }
        }
        if let Some(r) = r_sup {
            match meets_cc_threshold(&r, &zero) {
                Ok(true) => return Ok(Certificate { kind: CertificateKind::RFactor { m, r }, trace }),
                Ok(false) => {}
                Err(e) => return Ok(unknown(m, e.to_string(), trace)),
            }
        }
        if m == opts.max_iter {
            break;
        }
        if cur.max_entry_bits() > opts.max_entry_bits {
            return Ok(unknown(m, format!("entries exceed {} bits", opts.max_entry_bits), trace));
        }
        let next = l_operator(&cur)?;
        history.push(std::mem::replace(&mut cur, next));
    }
    Ok(unknown(opts.max_iter, "iteration budget exhausted", trace))
}

/// Certificates for independent inputs, in input order.
pub fn certify_batch(seqs: &[Sequence], max_iter: usize, par: Parallelism) -> Vec<Result<Certificate>> {
    par.map(seqs, |s| certify_infinite(s, max_iter))
}

fn require_positive(seq: &Sequence) -> Result<()> {
    match seq.first_nonpositive() {
        Some(index) => Err(Error::NonPositiveInput { index }),
        None => Ok(()),
    }
}

/// 4-factor log-concave coefficients force real roots. `false` proves
/// nothing.
pub fn kurtz_certificate(seq: &Sequence) -> Result<bool> {
    require_positive(seq)?;
    is_r_factor(seq, &Scalar::from_i64(4), false)
}

/// Every ratio `q = a_n² / (a_{n-1} a_{n+1})` exceeds the real root
/// `r₀ ≈ 1.4656` of `x³ - x² - 1`, which for degree above 5 forces all roots
/// into the open left half-plane. Since `r₀` is the only real root,
/// `q > r₀ ⇔ q³ - q² - 1 > 0`.
pub fn hurwitz_certificate(seq: &Sequence) -> Result<bool> {
    require_positive(seq)?;
    let degree = seq.len() - 1;
    if degree <= 5 {
        return Err(Error::DegreeTooSmall { degree, min: 5 });
    }
    let a = seq.entries();
    let one = Scalar::one();
    for n in 1..a.len() - 1 {
        let q = (&a[n] * &a[n]).checked_div(&(&a[n - 1] * &a[n + 1]))?;
        let q2 = &q * &q;
        let cubic = &(&(&q2 * &q) - &q2) - &one;
        if cubic.try_sign()?.cmp(&0) != Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}
