use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::nullspace;
use crate::scalar::Scalar;

/// Rows beyond the square system that every guessed recurrence must also
/// satisfy.
pub const DEFAULT_MARGIN: usize = 5;

/// A recurrence `Σ_{i=0}^{order} c_i(n) a_{n-i} = 0` with
/// `c_i(n) = Σ_j solution[i][j] n^j`, valid for every `n ≥ order` where `n`
/// indexes the supplied terms from zero. `c_0` is nonzero and its leading
/// coefficient is one.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceAnsatz<F = Scalar> {
    pub order: usize,
    pub coeff_degree: usize,
    pub solution: Vec<Vec<F>>,
}

impl<F: Field> RecurrenceAnsatz<F> {
    fn residual(&self, terms: &[F], n: usize) -> F {
        let nn = F::from_i64(n as i64);
        let mut acc = F::zero();
        for (i, coeffs) in self.solution.iter().enumerate() {
            // Horner in n
            let c = coeffs.iter().rev().fold(F::zero(), |h, x| h.mul(&nn).add(x));
            acc = acc.add(&c.mul(&terms[n - i]));
        }
        acc
    }

    /// Whether the recurrence holds at every `n` with `order ≤ n < len`.
    pub fn annihilates(&self, terms: &[F]) -> bool {
        (self.order..terms.len()).all(|n| self.residual(terms, n).is_zero())
    }
}

/// Terms needed to try `order` with coefficients of degree `degree`: the
/// documented `2r + margin` (constant) or `(r+1)(D+1) + margin` (polynomial),
/// and never fewer than one equation more than there are unknowns.
pub fn required_terms(order: usize, degree: usize, margin: usize) -> usize {
    let unknowns = (order + 1) * (degree + 1);
    let nominal = if degree == 0 { 2 * order + margin } else { unknowns + margin };
    nominal.max(order + unknowns + 1)
}

/// Searches orders `1..=max_order` in ascending order for a recurrence with
/// polynomial coefficients of degree at most `degree`.
///
/// `Ok(None)` only says that no recurrence exists within these bounds. The
/// term count is checked per order, so a low-order recurrence can be found
/// from fewer terms than `max_order` would need.
pub fn guess_recurrence<F: Field>(
    terms: &[F],
    max_order: usize,
    degree: usize,
    margin: usize,
) -> Result<Option<RecurrenceAnsatz<F>>> {
    for order in 1..=max_order {
        let needed = required_terms(order, degree, margin);
        if terms.len() < needed {
            return Err(Error::InsufficientTerms { needed, got: terms.len() });
        }
        let width = degree + 1;
        let ncols = (order + 1) * width;
        let rows: Vec<Vec<F>> = (order..terms.len())
            .map(|n| {
                let nn = F::from_i64(n as i64);
                let mut row = Vec::with_capacity(ncols);
                for i in 0..=order {
                    let mut v = terms[n - i].clone();
                    for _ in 0..width {
                        row.push(v.clone());
                        v = v.mul(&nn);
                    }
                }
                row
            })
            .collect();
        // c_0 ≡ 0 would leave the last term unconstrained, so such a
        // solution is a fit to fewer rows and does not count
        let Some(v) = nullspace(&rows, ncols).into_iter().find(|v| v[..width].iter().any(|x| !x.is_zero())) else {
            continue;
        };
        let pivot = (0..width).rev().map(|j| &v[j]).find(|x| !x.is_zero()).expect("c_0 is nonzero").inv().expect("nonzero");
        let solution: Vec<Vec<F>> = v.chunks(width).map(|c| c.iter().map(|x| x.mul(&pivot)).collect()).collect();
        let ansatz = RecurrenceAnsatz { order, coeff_degree: degree, solution };
        // the system already encodes every row; re-checking guards the solver
        if ansatz.annihilates(terms) {
            return Ok(Some(ansatz));
        }
    }
    Ok(None)
}

/// Constant-coefficient recurrences of order at most `max_order`.
pub fn guess_constant_rec<F: Field>(terms: &[F], max_order: usize) -> Result<Option<RecurrenceAnsatz<F>>> {
    guess_recurrence(terms, max_order, 0, DEFAULT_MARGIN)
}

/// Recurrences of order at most `max_order` whose coefficients are
/// polynomials in `n` of degree at most `coeff_degree`.
pub fn guess_polyrec<F: Field>(
    terms: &[F],
    max_order: usize,
    coeff_degree: usize,
) -> Result<Option<RecurrenceAnsatz<F>>> {
    guess_recurrence(terms, max_order, coeff_degree, DEFAULT_MARGIN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfinite::CFiniteSeq;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(v)
    }

    #[test]
    fn constant_recurrences() {
        let terms = CFiniteSeq::fix_l(&s(5)).terms(12);
        let rec = guess_constant_rec(&terms, 5).unwrap().unwrap();
        assert_eq!(rec.order, 3);
        let c: Vec<Scalar> = rec.solution.iter().map(|c| c[0].clone()).collect();
        assert_eq!(c, vec![s(1), s(-5), s(5), s(-1)]);

        let binom: Vec<Scalar> = (0..15).map(|n| s((n + 1) * (n + 2) / 2)).collect();
        assert_eq!(binom, CFiniteSeq::fix_l(&s(3)).terms(15));
        let rec = guess_constant_rec(&binom, 5).unwrap().unwrap();
        assert_eq!(rec.order, 3);
        assert!(rec.annihilates(&binom));
    }

    #[test]
    fn polynomial_recurrence() {
        let binom: Vec<Scalar> = (0..12).map(|n| s((n + 1) * (n + 2) / 2)).collect();
        let rec = guess_polyrec(&binom, 1, 1).unwrap().unwrap();
        assert_eq!(rec.order, 1);
        assert!(rec.annihilates(&binom));
        // n a_n = (n + 2) a_{n-1} with a_0 at n = 0
        assert_eq!(rec.solution, vec![vec![s(0), s(1)], vec![s(-2), s(-1)]]);
    }

    #[test]
    fn too_few_terms() {
        let terms = CFiniteSeq::fix_l(&s(5)).terms(6);
        assert_eq!(guess_constant_rec(&terms, 3), Err(Error::InsufficientTerms { needed: 7, got: 6 }));
    }

    #[test]
    fn spurious_fit_rejected() {
        // 2^n except for one late term: no short recurrence covers every row
        let mut terms: Vec<Scalar> = (0..14).map(|n| s(1 << n)).collect();
        terms[13] = s(1);
        assert_eq!(guess_constant_rec(&terms, 2).unwrap(), None);
    }
}
