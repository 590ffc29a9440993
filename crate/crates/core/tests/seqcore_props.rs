use logcv::certify::cc_threshold;
use logcv::convolve::convolve;
use logcv::seqcore::{is_r_factor, l_operator, log_concavity_depth, r_factor_supremum};
use logcv::{RBound, Rational, Scalar, Sequence};
use proptest::prelude::*;

mod common;
use common::{arb_positive_rational, arb_positive_seq, arb_rational, rat};

/// Positive sequence with consecutive ratios shrinking by at least `r`, so
/// that it is `r`-factor log-concave.
fn r_factor_seq(r: Rational) -> impl Strategy<Value = Sequence> {
    (arb_positive_rational(), proptest::collection::vec(arb_rational(0, 4), 2..=7)).prop_map(move |(first, extra)| {
        let mut ratio = first;
        let mut a = vec![Rational::one()];
        for e in extra {
            a.push(&a[a.len() - 1] * &ratio);
            ratio = &ratio / &(&r + &e);
        }
        Sequence::polynomial(a.into_iter().map(Scalar::from).collect()).unwrap()
    })
}

/// A rational `r ≥ 3 > (3+√5)/2` with an `r`-factor log-concave sequence.
fn above_golden() -> impl Strategy<Value = (Rational, Sequence)> {
    arb_rational(0, 3).prop_flat_map(|extra| {
        let r = &rat(3, 1) + &extra;
        (Just(r.clone()), r_factor_seq(r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn l_is_homogeneous_of_degree_two(a in arb_positive_seq(8, 40), c in arb_positive_rational()) {
        let c = Scalar::from(c);
        let lhs = l_operator(&a.scale(&c).unwrap()).unwrap();
        let rhs = l_operator(&a).unwrap().scale(&(&c * &c)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supremum_is_attained_and_sharp(a in arb_positive_seq(8, 40), c in arb_positive_rational()) {
        let r = r_factor_supremum(&a).unwrap();
        prop_assert_eq!(r_factor_supremum(&a.scale(&Scalar::from(c)).unwrap()).unwrap(), r.clone());
        if let RBound::Finite(r) = r {
            prop_assert!(is_r_factor(&a, &r, false).unwrap());
            prop_assert!(!is_r_factor(&a, &r, true).unwrap());
            let above = &r + &Scalar::from(rat(1, 1000));
            prop_assert!(!is_r_factor(&a, &above, false).unwrap());
        }
    }

    #[test]
    fn depth_agrees_with_direct_iteration(a in arb_positive_seq(7, 30)) {
        let d = log_concavity_depth(&a, 4);
        let mut cur = a.clone();
        let mut first_negative = None;
        for level in 0..=4 {
            if cur.entries().iter().any(Scalar::is_negative) {
                first_negative = Some(level);
                break;
            }
            cur = l_operator(&cur).unwrap();
        }
        match first_negative {
            Some(level) => prop_assert_eq!(d.depth, Some(level - 1)),
            None => prop_assert!(d.saturated && d.depth == Some(4)),
        }
    }

    #[test]
    fn golden_threshold_is_preserved((r, a) in above_golden()) {
        let image = r_factor_supremum(&l_operator(&a).unwrap()).unwrap();
        prop_assert!(image.try_cmp(&RBound::Finite(Scalar::from(r))).unwrap().is_ge());
    }

    #[test]
    fn shifted_containment((r, a) in above_golden(), fraction in 0i64..=10) {
        let t = &(&rat(2, 1) * &r) - &rat(3, 1);
        let s_max = &(&(&t * &t) - &rat(5, 1)) / &rat(4, 1);
        let s = &s_max * &rat(fraction, 10);
        let threshold = cc_threshold(&Scalar::from(s.clone())).unwrap();
        prop_assert!(Scalar::from(r.clone()).try_cmp(&threshold).unwrap().is_ge());
        let image = r_factor_supremum(&l_operator(&a).unwrap()).unwrap();
        prop_assert!(image.try_cmp(&RBound::Finite(Scalar::from(&r + &s))).unwrap().is_ge());
    }

    #[test]
    fn products_of_log_concave_stay_log_concave(a in r_factor_seq(Rational::one()), b in r_factor_seq(Rational::one())) {
        let ab = convolve(&a, &b).unwrap();
        prop_assert!(is_r_factor(&ab, &Scalar::one(), false).unwrap());
    }
}
