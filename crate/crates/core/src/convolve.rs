//! Exact powers of polynomials and sweeps for the smallest exponent whose
//! coefficients reach a given depth of log-concavity.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::certify::{certify_infinite, Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::par::Parallelism;
use crate::scalar::Scalar;
use crate::seqcore::{log_concavity_depth, DepthResult, SeqKind, Sequence};

/// Coefficients of the product of two polynomials.
pub fn convolve(a: &Sequence, b: &Sequence) -> Result<Sequence> {
    let (x, y) = (a.entries(), b.entries());
    let mut out = vec![Scalar::zero(); x.len() + y.len() - 1];
    for (i, u) in x.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        for (j, v) in y.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(&u.checked_mul(v)?)?;
        }
    }
    Ok(Sequence::from_parts(out, SeqKind::Polynomial))
}

/// Coefficients of `p(x)^λ` by binary powering.
pub fn poly_power(p: &Sequence, lambda: usize) -> Result<Sequence> {
    if lambda == 0 {
        return Err(Error::Domain("exponent must be at least 1".into()));
    }
    let mut base = p.with_kind(SeqKind::Polynomial);
    let mut acc: Option<Sequence> = None;
    let mut e = lambda;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                Some(a) => convolve(&a, &base)?,
                None => base.clone(),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = convolve(&base, &base)?;
    }
    Ok(acc.expect("lambda >= 1"))
}

/// Smallest `λ ≤ λ_max` with `L^0 .. L^m` of `p^λ` nonnegative.
///
/// Every `λ` is tried in turn: depth need not grow with `λ`.
pub fn min_exponent(p: &Sequence, m: usize, lambda_max: usize) -> Result<Option<usize>> {
    let base = p.with_kind(SeqKind::Polynomial);
    let mut pow = base.clone();
    for lambda in 1..=lambda_max {
        if lambda > 1 {
            pow = convolve(&pow, &base)?;
        }
        if log_concavity_depth(&pow, m).depth.is_some_and(|d| d >= m) {
            return Ok(Some(lambda));
        }
    }
    Ok(None)
}

/// What is known about the depth of `p^λ` from its certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Depth {
    Finite(usize),
    /// The iterates were checked up to the sweep's `m_max` and stayed
    /// nonnegative; the certificate was inconclusive.
    AtLeast(usize),
    Infinite,
}

impl Depth {
    fn reaches(self, m: usize) -> bool {
        match self {
            Depth::Finite(d) | Depth::AtLeast(d) => d >= m,
            Depth::Infinite => true,
        }
    }
}

/// Certificate and depth of one power.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerOutcome {
    pub lambda: usize,
    pub depth: Depth,
    pub certificate: Certificate,
}

fn power_outcome(p: &Sequence, lambda: usize, m_max: usize, max_iter: usize) -> Result<PowerOutcome> {
    let pow = poly_power(p, lambda)?;
    let certificate = certify_infinite(&pow, max_iter)?;
    let depth = match certificate.kind {
        CertificateKind::NotMLogConcave { m, .. } => Depth::Finite(m - 1),
        CertificateKind::FixedPoint { .. } | CertificateKind::RFactor { .. } => Depth::Infinite,
        CertificateKind::Unknown { .. } => {
            let d = log_concavity_depth(&pow, m_max);
            match (d.depth, d.saturated) {
                (Some(depth), false) => Depth::Finite(depth),
                (Some(depth), true) => Depth::AtLeast(depth),
                (None, _) => unreachable!("powers of positive polynomials are positive"),
            }
        }
    };
    Ok(PowerOutcome { lambda, depth, certificate })
}

/// Smallest `λ ≤ λ_max` such that `p^μ` has an infinite log-concavity
/// certificate for every `μ` in `λ..=λ_max`, with the certificate of `p^λ`.
pub fn min_exponent_infty(p: &Sequence, lambda_max: usize, max_iter: usize) -> Result<Option<(usize, Certificate)>> {
    if let Some(index) = p.first_nonpositive() {
        return Err(Error::NonPositiveInput { index });
    }
    let mut found = None;
    for lambda in (1..=lambda_max).rev() {
        let c = certify_infinite(&poly_power(p, lambda)?, max_iter)?;
        if !c.is_infinite() {
            break;
        }
        found = Some((lambda, c));
    }
    Ok(found)
}

/// One row of an exponent table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub poly: Sequence,
    /// `min_lambda[m - 1]` is the smallest `λ` whose power has depth at
    /// least `m`, for `m = 1 ..= m_max`.
    pub min_lambda: Vec<Option<usize>>,
    /// Smallest `λ` with certificates for every exponent from `λ` to
    /// `λ_max`.
    pub min_lambda_infinity: Option<usize>,
    /// Certificates of every certified exponent.
    pub inf_certificates: BTreeMap<usize, Certificate>,
    /// Columns `m` (with `m_max + 1` standing for the infinity column) whose
    /// entry is smaller than the entry of column `m - 1`.
    pub monotonicity_violations: Vec<usize>,
    /// Uncertified exponents above the first certified one.
    pub persistence_failures: Vec<usize>,
    pub outcomes: Vec<PowerOutcome>,
}

fn build_row(poly: Sequence, outcomes: Vec<PowerOutcome>, m_max: usize) -> SweepRow {
    let min_lambda: Vec<Option<usize>> =
        (1..=m_max).map(|m| outcomes.iter().find(|o| o.depth.reaches(m)).map(|o| o.lambda)).collect();
    let certified = |o: &PowerOutcome| o.certificate.is_infinite();
    let min_lambda_infinity = match outcomes.iter().rposition(|o| !certified(o)) {
        None => outcomes.first().map(|o| o.lambda),
        Some(i) => outcomes.get(i + 1).map(|o| o.lambda),
    };
    let inf_certificates: BTreeMap<usize, Certificate> =
        outcomes.iter().filter(|o| certified(o)).map(|o| (o.lambda, o.certificate.clone())).collect();
    let persistence_failures = match outcomes.iter().position(certified) {
        Some(first) => outcomes[first..].iter().filter(|o| !certified(o)).map(|o| o.lambda).collect(),
        None => Vec::new(),
    };
    // absent entries count as larger than any exponent
    let key = |x: Option<usize>| x.unwrap_or(usize::MAX);
    let columns: Vec<Option<usize>> = min_lambda.iter().copied().chain([min_lambda_infinity]).collect();
    let monotonicity_violations =
        (1..columns.len()).filter(|&i| key(columns[i]) < key(columns[i - 1])).map(|i| i + 1).collect();
    SweepRow {
        poly,
        min_lambda,
        min_lambda_infinity,
        inf_certificates,
        monotonicity_violations,
        persistence_failures,
        outcomes,
    }
}

/// Table of smallest exponents per depth `1 ..= m_max` and for infinite
/// log-concavity, one row per polynomial, examining `λ = 1 ..= λ_max`.
///
/// Every `(row, λ)` pair is an independent job; rows come back in input
/// order and the result does not depend on `par`.
pub fn exponent_table(
    polys: &[Sequence],
    m_max: usize,
    lambda_max: usize,
    max_iter: usize,
    par: Parallelism,
) -> Result<Vec<SweepRow>> {
    for p in polys {
        if let Some(index) = p.first_nonpositive() {
            return Err(Error::NonPositiveInput { index });
        }
    }
    let jobs: Vec<(usize, usize)> =
        (0..polys.len()).flat_map(|row| (1..=lambda_max).map(move |lambda| (row, lambda))).collect();
    let results = par.map(&jobs, |&(row, lambda)| power_outcome(&polys[row], lambda, m_max, max_iter));
    let mut results = results.into_iter();
    polys
        .iter()
        .map(|p| {
            let outcomes = results.by_ref().take(lambda_max).collect::<Result<Vec<_>>>()?;
            Ok(build_row(p.with_kind(SeqKind::Polynomial), outcomes, m_max))
        })
        .collect()
}

/// Depth or certificate for one power in a probe.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeOutcome {
    Certified(Certificate),
    Depth(DepthResult),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeEntry {
    pub n: usize,
    pub outcome: ProbeOutcome,
}

/// For `n = 1 ..= n_max`: an infinite log-concavity certificate for `p^n`,
/// or else its depth examined up to `max_iter` iterates.
pub fn square_depth_probe(p: &Sequence, n_max: usize, max_iter: usize, par: Parallelism) -> Result<Vec<ProbeEntry>> {
    if let Some(index) = p.first_nonpositive() {
        return Err(Error::NonPositiveInput { index });
    }
    let ns: Vec<usize> = (1..=n_max).collect();
    par.map(&ns, |&n| {
        let pow = poly_power(p, n)?;
        let c = certify_infinite(&pow, max_iter)?;
        let outcome = if c.is_infinite() {
            ProbeOutcome::Certified(c)
        } else {
            ProbeOutcome::Depth(log_concavity_depth(&pow, max_iter))
        };
        Ok(ProbeEntry { n, outcome })
    })
    .into_iter()
    .collect()
}
