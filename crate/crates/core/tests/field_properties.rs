mod common;

use common::*;
use proptest::prelude::*;
use puiseux_core::fps::SeriesM;
use puiseux_core::puiseux::{eval_box, BoxPoint, Comparison, Exponent, Membership, SignResult};
use puiseux_core::Rational;

fn strictly_ordered(c: Comparison) -> bool {
    matches!(c, Comparison::Less | Comparison::Greater)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn ordered_field_axioms(a in puiseux(), b in puiseux(), c in puiseux()) {
        let n = e(20);
        let ab = a.compare(&b, n);
        prop_assume!(strictly_ordered(ab));
        // totality and antisymmetry
        let ba = b.compare(&a, n);
        prop_assert_eq!(ab.ordering().map(|o| o.reverse()), ba.ordering());
        // translation invariance
        prop_assert_eq!(a.add(&c).compare(&b.add(&c), n), ab);
        // both signs are decided below 20, so the product's is below 40
        let n2 = e(40);
        // positivity of products
        if a.sign(n) == SignResult::Positive && b.sign(n) == SignResult::Positive {
            prop_assert_eq!(a.mul(&b).sign(n2), SignResult::Positive);
        }
        // the product of two elements of opposite sign is negative
        if a.sign(n) == SignResult::Positive && b.sign(n) == SignResult::Negative {
            prop_assert_eq!(a.mul(&b).sign(n2), SignResult::Negative);
        }
    }

    #[test]
    fn inverse_through_fifty(a in puiseux()) {
        prop_assume!(!a.is_exactly_zero());
        let prod = a.mul(&a.inv().unwrap());
        prop_assert_eq!(prod.compare(&P::one(), e(50)), Comparison::EqualThrough(e(50)));
    }

    #[test]
    fn division_undoes_multiplication(a in puiseux(), b in puiseux()) {
        prop_assume!(!b.is_exactly_zero());
        let back = a.mul(&b).checked_div(&b).unwrap();
        prop_assert_eq!(back.compare(&a, e(20)), Comparison::EqualThrough(e(20)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn box_evaluation_is_a_ring_map(
        p in bivariate(8),
        r in bivariate(8),
        x in in_box(),
        y in in_box(),
    ) {
        let point = BoxPoint::new(vec![x, y]);
        let n = e(20);
        let sum = eval_box(&p.checked_add(&r).unwrap(), &point, n).unwrap();
        let prod = eval_box(&p.checked_mul(&r).unwrap(), &point, n).unwrap();
        let fp = eval_box(&p, &point, n).unwrap();
        let fr = eval_box(&r, &point, n).unwrap();
        prop_assert_eq!(sum.compare(&fp.add(&fr), n), Comparison::EqualThrough(n));
        prop_assert_eq!(prod.compare(&fp.mul(&fr), n), Comparison::EqualThrough(n));
    }

    #[test]
    fn box_derivative_transfer(
        p in bivariate(7),
        x in in_box(),
        y in in_box(),
        v in 1i64..=3,
        seed in any::<u64>(),
    ) {
        // x has t-coefficient of magnitude ≤ 1/2 and h contributes ≤ 1/4,
        // so the shifted point stays inside the box
        let h = P::monomial(q((seed % 3) as i64 + 1, 12), e(v))
            .add(&P::monomial(q(1, 1), e(v + 1)));
        let n = e(20);
        let work = n + Exponent::from_integer(v);
        let shifted = BoxPoint::new(vec![x.add(&h), y.clone()]);
        let base = BoxPoint::new(vec![x.clone(), y.clone()]);
        prop_assert_eq!(shifted.membership(n).unwrap(), Membership::Inside);
        prop_assert_eq!(base.membership(n).unwrap(), Membership::Inside);
        let diff = eval_box(&p, &shifted, work).unwrap()
            .sub(&eval_box(&p, &base, work).unwrap());
        let quotient = diff.checked_div(&h).unwrap();
        let deriv: SeriesM<Rational> = p.derive(0).unwrap();
        let gap = quotient.sub(&eval_box(&deriv, &base, work).unwrap());
        prop_assert!(gap.valuation(n).is_at_least(e(v)), "gap {}", gap.valuation(n));
    }
}

#[test]
fn t_is_a_positive_infinitesimal() {
    let t = P::t();
    assert_eq!(t.sign(e(10)), SignResult::Positive);
    for r in [q(1, 1), q(1, 10), q(1, 1_000_000), q(1, 1_000_000_000)] {
        assert_eq!(t.compare(&P::constant(r), e(10)), Comparison::Less);
    }
    let third = P::monomial(q(1, 1), Exponent::new(1, 3));
    let half = P::monomial(q(1, 1), Exponent::new(1, 2));
    assert_eq!(third.compare(&half, e(10)), Comparison::Greater);
    assert_eq!(half.compare(&t, e(10)), Comparison::Greater);
}
