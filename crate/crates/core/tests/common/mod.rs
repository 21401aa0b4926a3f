#![allow(dead_code)]

use proptest::prelude::*;
use puiseux_core::fps::{SeriesM, SeriesU};
use puiseux_core::puiseux::{Exponent, PuiseuxSeries};
use puiseux_core::Rational;

pub type S = SeriesU<Rational>;
pub type M = SeriesM<Rational>;
pub type P = PuiseuxSeries<Rational>;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

pub fn e(n: i64) -> Exponent {
    Exponent::from_integer(n)
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=7, any::<bool>()).prop_map(|(n, d, neg)| q(if neg { -n } else { n }, d))
}

pub fn polynomial(max_degree: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), 1..=max_degree + 1)
}

/// Finite, rational-function and transcendental series mixed together.
pub fn series() -> impl Strategy<Value = S> {
    (polynomial(8), 0u8..3).prop_map(|(coeffs, kind)| {
        let p = S::polynomial(coeffs);
        match kind {
            0 => p,
            1 => p.mul(&S::geometric()),
            _ => p.add(&S::exponential()),
        }
    })
}

pub fn unit_series() -> impl Strategy<Value = S> {
    (series(), nonzero_rational()).prop_map(|(s, c)| {
        let c0 = s.coeff(0);
        s.add(&S::constant(c - c0))
    })
}

/// Bivariate polynomial with total degree at most `max_degree`.
pub fn bivariate(max_degree: u32) -> impl Strategy<Value = M> {
    prop::collection::vec(((0..=max_degree), (0..=max_degree), rational()), 0..10).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .filter(|(a, b, _)| a + b <= max_degree)
                .map(|(a, b, c)| (vec![a, b], c));
            let mut acc = M::zero(2);
            for (m, c) in terms {
                acc = acc
                    .checked_add(&M::polynomial(2, [(m, c)]).unwrap())
                    .unwrap();
            }
            acc
        },
    )
}

/// A finite Puiseux element `Σ c_k t^{k/ram}` with a few terms.
pub fn puiseux_in(min_num: i64, max_num: i64) -> impl Strategy<Value = P> {
    (
        1i64..=3,
        prop::collection::vec((min_num..=max_num, nonzero_rational()), 1..5),
    )
        .prop_map(|(ram, terms)| {
            P::from_terms(terms.into_iter().map(|(k, c)| (c, Exponent::new(k, ram))))
        })
}

pub fn puiseux() -> impl Strategy<Value = P> {
    puiseux_in(-4, 12)
}

/// Points of `[-t, t]`: valuation above 1, or `c·t + …` with `|c| ≤ 1/2`.
pub fn in_box() -> impl Strategy<Value = P> {
    ((-3i64..=3).prop_map(|k| q(k, 6)), puiseux_in(4, 15)).prop_map(|(c, tail)| {
        // tail has exponents ≥ 4/3 > 1
        P::monomial(c, e(1)).add(&tail)
    })
}

/// Nonzero step `c·t^v + higher` with the given valuation.
pub fn step(v: i64) -> impl Strategy<Value = P> {
    (
        (-3i64..=3).prop_filter("nonzero", |k| *k != 0),
        puiseux_in(3 * v + 1, 3 * v + 9),
    )
        .prop_map(move |(k, tail)| P::monomial(q(k, 6), e(v)).add(&tail))
}
