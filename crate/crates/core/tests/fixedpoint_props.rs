use logcv::fixedpoint::{extend_fixed_lm, fix_l, fix_l2, verify_fixed};
use logcv::{Error, Scalar, SeqKind, Sequence};
use proptest::prelude::*;

mod common;
use common::{arb_rational, arb_scalar};

const TERMS: usize = 12;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fix_l_is_fixed(k in (0usize..3).prop_flat_map(arb_scalar)) {
        let a = fix_l(&k, TERMS).unwrap();
        prop_assert!(verify_fixed(&a, 1, &Scalar::one()));
    }

    #[test]
    fn fix_l2_is_fixed_by_l_squared(beta in arb_rational(-20, 20), gamma in arb_rational(-20, 20)) {
        let a = fix_l2(&Scalar::from(beta), &Scalar::from(gamma), TERMS).unwrap();
        prop_assert!(verify_fixed(&a, 2, &Scalar::one()));
    }

    #[test]
    fn fix_l2_contains_fix_l(k in arb_rational(-20, 20)) {
        let k = Scalar::from(k);
        let gamma = &(&k * &k) - &k;
        prop_assert_eq!(fix_l2(&k, &gamma, TERMS).unwrap(), fix_l(&k, TERMS).unwrap());
    }

    #[test]
    fn extension_reproduces_closed_forms(beta in arb_rational(-20, 20), gamma in arb_rational(-20, 20)) {
        prop_assume!(!beta.is_zero() && !gamma.is_zero());
        let (beta, gamma) = (Scalar::from(beta), Scalar::from(gamma));
        let m1 = Sequence::new(vec![Scalar::one(), beta.clone()], SeqKind::Prefix).unwrap();
        match extend_fixed_lm(&m1, 1, TERMS) {
            Ok(a) => prop_assert_eq!(a, fix_l(&beta, TERMS).unwrap()),
            Err(e) => prop_assert!(matches!(e, Error::SingularStep { .. }), "{e}"),
        }
        let m2 = Sequence::new(vec![Scalar::one(), beta.clone(), gamma.clone()], SeqKind::Prefix).unwrap();
        match extend_fixed_lm(&m2, 2, TERMS) {
            Ok(a) => prop_assert_eq!(a, fix_l2(&beta, &gamma, TERMS).unwrap()),
            Err(e) => prop_assert!(matches!(e, Error::SingularStep { .. }), "{e}"),
        }
    }
}
