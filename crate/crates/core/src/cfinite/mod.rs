//! C-finite sequences: constant-coefficient recurrences, annihilators of
//! polynomial expressions in them, and recurrence guessing.

mod annihilator;
mod guess;

pub use annihilator::{lfix_identity_proof, product_annihilator, prove_lfix_identity, LfixProof, DEFAULT_ORDER_CAP};
pub use guess::{
    guess_constant_rec, guess_polyrec, guess_recurrence, required_terms, RecurrenceAnsatz, DEFAULT_MARGIN,
};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Scalar, Tower};

/// `a_n = c_1 a_{n-1} + … + c_r a_{n-r}` with initial values `a_0 .. a_{r-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CFiniteSeq {
    rec: Vec<Scalar>,
    initials: Vec<Scalar>,
}

impl CFiniteSeq {
    pub fn new(rec: Vec<Scalar>, initials: Vec<Scalar>) -> Result<Self> {
        if rec.is_empty() {
            return Err(Error::Domain("recurrence order must be at least 1".into()));
        }
        if rec.len() != initials.len() {
            return Err(Error::Domain(format!(
                "order {} recurrence needs {} initial values, got {}",
                rec.len(),
                rec.len(),
                initials.len()
            )));
        }
        rec.iter().chain(&initials).try_fold(Tower::Rational, |t, x| t.join(x.tower()))?;
        Ok(CFiniteSeq { rec, initials })
    }

    /// The `L`-fixed sequence with `a_1 = k`: recurrence `(k, -k, 1)`, initial
    /// values `(1, k, k² - k)`.
    pub fn fix_l(k: &Scalar) -> Self {
        let k2 = &(k * k) - k;
        CFiniteSeq { rec: vec![k.clone(), -k, Scalar::one()], initials: vec![Scalar::one(), k.clone(), k2] }
    }

    /// The `L²`-fixed sequence with `a_1 = β`, `a_2 = γ`: recurrence
    /// `(β, γ - β², 1)`, initial values `(1, β, γ)`.
    pub fn fix_l2(beta: &Scalar, gamma: &Scalar) -> Self {
        let c2 = gamma - &(beta * beta);
        CFiniteSeq {
            rec: vec![beta.clone(), c2, Scalar::one()],
            initials: vec![Scalar::one(), beta.clone(), gamma.clone()],
        }
    }

    pub fn order(&self) -> usize {
        self.rec.len()
    }

    pub fn rec(&self) -> &[Scalar] {
        &self.rec
    }

    pub fn initials(&self) -> &[Scalar] {
        &self.initials
    }

    /// `x^r - c_1 x^{r-1} - … - c_r`.
    pub fn charpoly(&self) -> Poly<Scalar> {
        let r = self.rec.len();
        let mut coeffs: Vec<Scalar> = (0..r).map(|i| -&self.rec[r - 1 - i]).collect();
        coeffs.push(Scalar::one());
        Poly::new(coeffs)
    }

    /// The first `count` terms.
    pub fn terms(&self, count: usize) -> Vec<Scalar> {
        let r = self.rec.len();
        let mut a: Vec<Scalar> = self.initials.iter().take(count).cloned().collect();
        while a.len() < count {
            let n = a.len();
            let v = (0..r).fold(Scalar::zero(), |acc, i| &acc + &(&self.rec[i] * &a[n - 1 - i]));
            a.push(v);
        }
        a
    }

    pub fn term(&self, n: usize) -> Scalar {
        self.terms(n + 1).pop().expect("at least one term")
    }
}
