mod common;

use common::*;
use proptest::prelude::*;
use puiseux_core::complexified::{
    coordinate_series, cr_check, diff_quotient_check, homog_decompose, ComplexPuiseux, DiscPoint,
};
use puiseux_core::puiseux::Exponent;
use puiseux_core::{LinearOde, Rational};

type Z = ComplexPuiseux<Rational>;

fn mul_pairs((a1, a2): &(M, M), (b1, b2): &(M, M)) -> (M, M) {
    let re = a1
        .checked_mul(b1)
        .unwrap()
        .checked_sub(&a2.checked_mul(b2).unwrap())
        .unwrap();
    let im = a1
        .checked_mul(b2)
        .unwrap()
        .checked_add(&a2.checked_mul(b1).unwrap())
        .unwrap();
    (re, im)
}

#[test]
fn homogeneous_parts_multiply() {
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            let prod = mul_pairs(&homog_decompose(a), &homog_decompose(b));
            let (c1, c2) = homog_decompose::<Rational>(a + b);
            assert!(prod.0.agrees_through(&c1, 14), "a = {a}, b = {b}");
            assert!(prod.1.agrees_through(&c2, 14), "a = {a}, b = {b}");
        }
    }
}

#[test]
fn flagship_solution_satisfies_cauchy_riemann() {
    let f = LinearOde::flagship().solve(None).unwrap().series;
    let (p1, p2) = coordinate_series(&f);
    assert!(cr_check(&p1, &p2, 12).unwrap().passed());
}

/// Points with `|z| ≤ t`: each coordinate has t-coefficient at most 1/2
/// in magnitude, so `re² + im² ≤ t²/2` to leading order.
fn disc_point() -> impl Strategy<Value = Z> {
    (in_box(), in_box()).prop_map(|(x, y)| Z::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn coordinate_series_satisfy_cauchy_riemann(p in series()) {
        let (p1, p2) = coordinate_series(&p);
        prop_assert!(cr_check(&p1, &p2, 12).unwrap().passed());
    }

    #[test]
    fn derivative_reads_along_the_real_axis(p in series()) {
        let (d1, d2) = coordinate_series(&p.derive());
        let (p1, p2) = coordinate_series(&p);
        prop_assert!(d1.agrees_through(&p1.derive(0).unwrap(), 12));
        prop_assert!(d2.agrees_through(&p2.derive(0).unwrap(), 12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn difference_quotient_gap(
        p in series(),
        z in disc_point(),
        v in 1i64..=3,
        k in 1i64..=3,
    ) {
        // |h| ≤ t/4 keeps z + h in the disc
        let h = Z::new(P::monomial(q(k, 12), e(v)), P::monomial(q(-1, 12), e(v)));
        let r = diff_quotient_check(&p, &DiscPoint::new(z), &h, e(20)).unwrap();
        prop_assert_eq!(r.step, Exponent::from_integer(v));
        prop_assert!(r.holds, "gap {}", r.gap);
    }
}
