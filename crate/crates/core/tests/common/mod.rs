//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use logcv::{Poly, Rational, Scalar, SeqKind, Sequence};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d)).unwrap()
}

pub fn poly(v: &[i64]) -> Sequence {
    Sequence::from_i64s(SeqKind::Polynomial, v)
}

pub fn arb_rational(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

pub fn arb_positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

/// Elements of Q, Q(√5) and the real subfield of conductor 7.
pub fn arb_scalar(tower: usize) -> BoxedStrategy<Scalar> {
    match tower {
        0 => arb_rational(-30, 30).prop_map(Scalar::from).boxed(),
        1 => (arb_rational(-30, 30), arb_rational(-30, 30))
            .prop_map(|(a, b)| Scalar::quadratic(a, b, 5).unwrap())
            .boxed(),
        _ => proptest::collection::vec(arb_rational(-20, 20), 3)
            .prop_map(|c| Scalar::cyclotomic(7, c).unwrap())
            .boxed(),
    }
}

pub fn arb_positive_seq(max_len: usize, max_entry: i64) -> impl Strategy<Value = Sequence> {
    proptest::collection::vec(1..=max_entry, 1..=max_len).prop_map(|v| poly(&v))
}

/// Characteristic polynomial of a square matrix by Faddeev-LeVerrier.
pub fn charpoly(a: &[Vec<Rational>]) -> Poly<Rational> {
    let n = a.len();
    let matmul = |x: &[Vec<Rational>], y: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, k| &acc + &(&x[i][k] * &y[k][j]))).collect())
            .collect()
    };
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &c[n - k + 1];
        }
        m = next;
        let am = matmul(a, &m);
        let trace = (0..n).fold(Rational::zero(), |acc, i| &acc + &am[i][i]);
        c[n - k] = -&(&trace / &Rational::from(k as i64));
    }
    Poly::new(c)
}

pub fn companion(p: &Poly<Rational>) -> Vec<Vec<Rational>> {
    let r = p.degree().unwrap();
    let mut m = vec![vec![Rational::zero(); r]; r];
    for i in 1..r {
        m[i][i - 1] = Rational::one();
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[r - 1] = -&p.coeff(i);
    }
    m
}

pub fn kronecker(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let (n, k) = (a.len(), b.len());
    (0..n * k).map(|i| (0..n * k).map(|j| &a[i / k][j / k] * &b[i % k][j % k]).collect()).collect()
}
