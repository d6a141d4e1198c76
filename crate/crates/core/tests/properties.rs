mod common;

use common::{as_quantic, oracle_covariants, q};
use num_traits::Zero;
use proptest::prelude::*;
use quantic_core::covariants::SWAP_SIGNS;
use quantic_core::weierstrass::{build_weierstrass, classify, pointwise_residual, SConstancy};
use quantic_core::{jacobian, poisson, BinaryQuantic, CovariantSet, HomogeneousPoly, Rational};

fn poly(max_degree: usize) -> impl Strategy<Value = HomogeneousPoly> {
    (0..=max_degree).prop_flat_map(|d| {
        prop::collection::vec(-5i64..=5, d + 1).prop_map(|c| HomogeneousPoly::from_integers(&c).unwrap())
    })
}

fn poly_of_degree(d: usize) -> impl Strategy<Value = HomogeneousPoly> {
    prop::collection::vec(-5i64..=5, d + 1).prop_map(|c| HomogeneousPoly::from_integers(&c).unwrap())
}

fn coeffs(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    n.prop_flat_map(|n| prop::collection::vec(-5i64..=5, n + 1))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(5), b in poly(5), c in poly(5)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in poly(5), (b, c) in (0usize..=5).prop_flat_map(|d| (poly_of_degree(d), poly_of_degree(d)))) {
        let lhs = &a * &b.checked_add(&c).unwrap();
        let rhs = (&a * &b).checked_add(&(&a * &c)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity(f in poly(8)) {
        let lhs = (&HomogeneousPoly::p() * &f.partial_p())
            .checked_add(&(&HomogeneousPoly::q() * &f.partial_q()))
            .unwrap();
        prop_assert_eq!(lhs, f.scale_int(f.degree() as i64));
    }

    #[test]
    fn jacobian_is_antisymmetric(x in poly(6), y in poly(6)) {
        prop_assert_eq!(jacobian(&x, &y), -jacobian(&y, &x));
        prop_assert_eq!(poisson(&x, &y), jacobian(&y, &x));
        prop_assert!(jacobian(&x, &x).is_zero());
    }

    #[test]
    fn jacobian_obeys_leibniz(x in poly(4), y in poly(4), z in poly(4)) {
        let lhs = jacobian(&(&x * &y), &z);
        let rhs = (&x * &jacobian(&y, &z)).checked_add(&(&y * &jacobian(&x, &z))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quantic_expansion_round_trips(a in coeffs(1..=9)) {
        let u = as_quantic(&a);
        prop_assert_eq!(BinaryQuantic::from_poly(&u.expand()).unwrap(), u);
    }

    #[test]
    fn evaluation_is_homogeneous(f in poly(7), p in rational(), qv in rational(), l in rational()) {
        let scaled = f.eval(&(&l * &p), &(&l * &qv));
        let expected = num_traits::pow(l, f.degree()) * f.eval(&p, &qv);
        prop_assert_eq!(scaled, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn syzygies_vanish(a in coeffs(5..=8)) {
        let set = CovariantSet::new(&as_quantic(&a)).unwrap();
        let residuals = set.syzygies();
        prop_assert!(residuals.all_zero(), "{:?}", residuals);
    }

    #[test]
    fn covariants_agree_with_oracle(a in coeffs(5..=7)) {
        let set = CovariantSet::new(&as_quantic(&a)).unwrap();
        let o = oracle_covariants(&a);
        prop_assert!(o.h.matches(&set.h));
        prop_assert!(o.g.matches(&set.g));
        prop_assert!(o.s.matches(&set.s));
        prop_assert!(o.t.matches(&set.t));
        prop_assert!(o.ds.matches(&set.ds));
        prop_assert!(o.dt.matches(&set.dt));
    }

    #[test]
    fn weierstrass_identity_holds_pointwise(a in coeffs(5..=7), p in rational(), qv in rational()) {
        let w = build_weierstrass(&as_quantic(&a)).unwrap();
        prop_assert!(pointwise_residual(&w, &p, &qv).is_zero());
    }

    #[test]
    fn swapping_variables_follows_sign_table(a in coeffs(5..=7)) {
        let u = as_quantic(&a);
        let set = CovariantSet::new(&u).unwrap();
        let swapped = CovariantSet::new(&u.swap_variables()).unwrap();
        for ((label, original), ((_, image), (sign_label, sign))) in
            set.named().into_iter().zip(swapped.named().into_iter().zip(SWAP_SIGNS))
        {
            prop_assert_eq!(label, sign_label);
            prop_assert_eq!(&original.swap_variables().scale_int(sign), image, "{}", label);
        }
    }

    /// A form of degree d vanishes identically iff it vanishes at d + 1
    /// distinct points (1, k); compare that brute-force answer with the
    /// symbolic properness decision.
    #[test]
    fn properness_matches_brute_force(a in coeffs(5..=6), p in -3i64..=3, qv in -3i64..=3) {
        let u = as_quantic(&a);
        let set = CovariantSet::new(&u).unwrap();
        let vanishes = |f: &HomogeneousPoly| (0..=f.degree() as i64).all(|k| f.eval(&int(1), &int(k)).is_zero());
        let (p, qv) = (int(p), int(qv));
        let c = classify(&u, (&p, &qv)).unwrap();
        if set.u.expand().eval(&p, &qv).is_zero() {
            prop_assert!(c.proper);
        } else {
            prop_assert_eq!(c.proper, vanishes(&set.ds) && vanishes(&set.dt));
            if vanishes(&set.ds) {
                let s0 = set.s.eval(&p, &qv);
                let expected = if s0.is_zero() { SConstancy::IdenticallyZero } else { SConstancy::ConstantNonzero };
                prop_assert_eq!(c.s_constant, expected);
            }
        }
    }
}

#[test]
fn oracle_s_of_p5_plus_q5() {
    let o = oracle_covariants(&[1, 0, 0, 0, 0, 1]);
    let mut expected = common::Sparse::default();
    expected.0.insert((1, 1), q(1));
    assert_eq!(o.s, expected);
}
