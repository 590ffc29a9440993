use logcv::scalar::min_poly_2cos;
use logcv::{Rational, Scalar};
use proptest::prelude::*;

mod common;
use common::arb_scalar;

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (0usize..3).prop_flat_map(|t| (arb_scalar(t), arb_scalar(t), arb_scalar(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn signs_multiply_and_match_floats((a, b, _c) in triple()) {
        prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
        let x = a.to_f64_lossy();
        if x.abs() > 1e-9 {
            prop_assert_eq!(a.sign(), if x > 0.0 { 1 } else { -1 });
        }
    }

    #[test]
    fn text_round_trip((a, _b, _c) in triple()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

fn horner(p: &logcv::Poly<Rational>, x: &Scalar) -> Scalar {
    p.coeffs().iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + &Scalar::from(c.clone()))
}

#[test]
fn minimal_polynomials_vanish_on_all_conjugates() {
    for s in 3..=60i64 {
        let psi = min_poly_2cos(s as u32).unwrap();
        for r in 1..s {
            if num_integer::gcd(r, s) != 1 {
                continue;
            }
            let x = Scalar::cos2pi(r, s).unwrap();
            assert!(horner(&psi, &x).is_zero(), "Psi_{s} at 2cos(2pi*{r}/{s})");
            let t = 2.0 * (2.0 * std::f64::consts::PI * r as f64 / s as f64).cos();
            let value = psi.coeffs().iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64_lossy());
            let scale = psi.coeffs().iter().rev().fold(0.0, |acc, c| acc * t.abs() + c.to_f64_lossy().abs());
            assert!(value.abs() <= 1e-12 * (scale + 1.0), "numeric root check for s = {s}");
        }
    }
}
