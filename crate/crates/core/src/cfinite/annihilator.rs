use serde::Serialize;

use super::CFiniteSeq;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::seqcore::{l_iterate, SeqKind, Sequence};

pub const DEFAULT_ORDER_CAP: usize = 200;

/// Power sums `s_1 .. s_count` of the roots of a monic polynomial, by
/// Newton's identities.
fn power_sums<F: Field>(p: &Poly<F>, count: usize) -> Vec<F> {
    let r = p.degree().expect("nonzero polynomial");
    // p = x^r + c_1 x^{r-1} + … + c_r
    let c = |i: usize| p.coeff(r - i);
    let mut s: Vec<F> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut acc = if k <= r { F::from_i64(k as i64).mul(&c(k)) } else { F::zero() };
        for i in 1..=(k - 1).min(r) {
            acc = acc.add(&c(i).mul(&s[k - 1 - i]));
        }
        s.push(acc.neg());
    }
    s
}

/// Monic polynomial whose roots are the products `α β` of a root `α` of `p`
/// and a root `β` of `q`, with multiplicity.
///
/// This is the characteristic polynomial of the Kronecker product of the
/// companion matrices of `p` and `q`. It is recovered from its power sums
/// `s_k(p) s_k(q)` by Newton's identities, without touching any root.
pub fn product_annihilator<F: Field>(p: &Poly<F>, q: &Poly<F>) -> Result<Poly<F>> {
    if !p.is_monic() || !q.is_monic() {
        return Err(Error::Domain("product_annihilator needs monic polynomials".into()));
    }
    let (dp, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    let n = dp * dq;
    let sp = power_sums(p, n);
    let sq = power_sums(q, n);
    let s: Vec<F> = sp.iter().zip(&sq).map(|(a, b)| a.mul(b)).collect();
    // coefficients C_1 .. C_n of x^n + C_1 x^{n-1} + … + C_n
    let mut c: Vec<F> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = s[k - 1].clone();
        for i in 1..k {
            acc = acc.add(&c[i - 1].mul(&s[k - 1 - i]));
        }
        let inv_k = F::from_i64(k as i64).inv().ok_or_else(|| Error::Domain(format!("{k} is not invertible")))?;
        c.push(acc.mul(&inv_k).neg());
    }
    let mut coeffs: Vec<F> = c.into_iter().rev().collect();
    coeffs.push(F::one());
    Ok(Poly::new(coeffs))
}

/// Outcome of checking `L^m(a)_n = a_n` for all `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LfixProof {
    pub m: usize,
    /// Degree of the annihilator of `b_n = L^m(a)_n - a_n`.
    pub order: usize,
    #[serde(skip)]
    pub annihilator: Poly<Scalar>,
    /// First `n < order` with `b_n ≠ 0`; `None` means the identity holds for
    /// every `n`.
    pub first_nonzero: Option<usize>,
}

impl LfixProof {
    pub fn holds(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

/// Annihilator of `L(Q)` from an annihilator `P` of `Q`, with `Q_{-1} = 0`.
///
/// `(Q_{n-1})_n` is annihilated by `x·P`, so `Q_{n-1} Q_{n+1}` is annihilated
/// by `(xP) ⊗ P = x^deg(P) (P ⊗ P)`, which is also a multiple of the
/// annihilator `P ⊗ P` of `Q_n²`. It therefore annihilates the difference.
fn l_annihilator(p: &Poly<Scalar>) -> Result<Poly<Scalar>> {
    let sq = product_annihilator(p, p)?;
    let shifted = product_annihilator(&p.shift(1), p)?;
    Ok(sq.lcm(&shifted))
}

/// Proves or refutes `L^m(a) = a` for a C-finite sequence.
///
/// The annihilator of `b_n = L^m(a)_n - a_n` is composed along the
/// expression tree of `L^m`, and since it is monic of degree `B`, `b`
/// vanishes identically as soon as `b_0 .. b_{B-1}` do.
pub fn lfix_identity_proof(seq: &CFiniteSeq, m: usize, cap: usize) -> Result<LfixProof> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let chi = seq.charpoly();
    let mut ann = chi.clone();
    for _ in 0..m {
        ann = l_annihilator(&ann)?;
        let order = ann.degree().unwrap_or(0);
        if order > cap {
            return Err(Error::OrderOverflow { order, cap });
        }
    }
    let ann = ann.lcm(&chi);
    let order = ann.degree().unwrap_or(0);
    if order > cap {
        return Err(Error::OrderOverflow { order, cap });
    }
    let a = Sequence::new(seq.terms(order + m), SeqKind::Prefix)?;
    let image = l_iterate(&a, m)?;
    let first_nonzero = image.entries().iter().zip(a.entries()).position(|(x, y)| x != y);
    Ok(LfixProof { m, order, annihilator: ann, first_nonzero })
}

/// Whether `L^m(a)_n = a_n` for every `n ≥ 0`, with the default order cap.
pub fn prove_lfix_identity(seq: &CFiniteSeq, m: usize) -> Result<bool> {
    Ok(lfix_identity_proof(seq, m, DEFAULT_ORDER_CAP)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&v| Rational::from(v)).collect())
    }

    #[test]
    fn single_roots_multiply() {
        assert_eq!(product_annihilator(&p(&[-2, 1]), &p(&[-2, 1])).unwrap(), p(&[-4, 1]));
        let fib = p(&[-1, -1, 1]);
        assert_eq!(product_annihilator(&fib, &p(&[-1, 1])).unwrap(), fib);
        // roots {1, 2} and {3}: products {3, 6}
        assert_eq!(product_annihilator(&p(&[2, -3, 1]), &p(&[-3, 1])).unwrap(), p(&[18, -9, 1]));
        assert!(product_annihilator(&p(&[1, 2]), &p(&[1, 1])).is_err());
    }

    #[test]
    fn zero_roots_are_kept() {
        // x(x - 2) ⊗ (x - 3) = x(x - 6)
        assert_eq!(product_annihilator(&p(&[0, -2, 1]), &p(&[-3, 1])).unwrap(), p(&[0, -6, 1]));
    }

    #[test]
    fn identity_proofs() {
        let k4 = CFiniteSeq::fix_l(&Scalar::from_i64(4));
        let proof = lfix_identity_proof(&k4, 1, DEFAULT_ORDER_CAP).unwrap();
        assert!(proof.holds());
        assert_eq!(proof.order, 12);
        let l2 = CFiniteSeq::fix_l2(&Scalar::from_i64(2), &Scalar::from_i64(3));
        assert!(prove_lfix_identity(&l2, 2).unwrap());
        let one = Scalar::one();
        let fib = CFiniteSeq::new(vec![one.clone(), one.clone()], vec![one.clone(), one]).unwrap();
        let proof = lfix_identity_proof(&fib, 1, DEFAULT_ORDER_CAP).unwrap();
        // b_1 = 1 - 1·2 - 1
        assert_eq!(proof.first_nonzero, Some(1));
    }

    #[test]
    fn order_cap() {
        let k4 = CFiniteSeq::fix_l(&Scalar::from_i64(4));
        assert_eq!(lfix_identity_proof(&k4, 2, 100), Err(Error::OrderOverflow { order: 156, cap: 100 }));
    }
}
