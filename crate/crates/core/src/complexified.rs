//! `K = R(√-1)` as pairs over the Puiseux field, power series `F_p` on the
//! disc `|z| ≤ t`, and computable witnesses of K-differentiability.
//!
//! Writing `z = x + iy`, each power `zⁿ` splits into homogeneous
//! polynomials `q₁ + i·q₂` of degree `n`, so `F_p` has coordinate series
//! `p₁, p₂ ∈ ℝ[[ξ₁, ξ₂]]`. K-differentiability is witnessed in two ways:
//! the Cauchy–Riemann identities for `(p₁, p₂)` at the formal level, and an
//! exact valuation bound on the difference quotient at concrete points.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::fps::{Monomial, SeriesM, SeriesU, Slice};
use crate::puiseux::dense::{common_ramification, slots, Dense};
use crate::puiseux::{Exponent, Leading, PuiseuxSeries, SignResult, Valuation};
use crate::scalar::binomial;
use crate::Scalar;

/// `re + i·im` with coordinates in the Puiseux field.
pub struct ComplexPuiseux<C> {
    pub re: PuiseuxSeries<C>,
    pub im: PuiseuxSeries<C>,
}

impl<C> Clone for ComplexPuiseux<C> {
    fn clone(&self) -> Self {
        ComplexPuiseux {
            re: self.re.clone(),
            im: self.im.clone(),
        }
    }
}

impl<C: Scalar> fmt::Debug for ComplexPuiseux<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComplexPuiseux")
            .field("re", &self.re)
            .field("im", &self.im)
            .finish()
    }
}

impl<C: Scalar> ComplexPuiseux<C> {
    pub fn new(re: PuiseuxSeries<C>, im: PuiseuxSeries<C>) -> Self {
        ComplexPuiseux { re, im }
    }

    pub fn real(re: PuiseuxSeries<C>) -> Self {
        Self::new(re, PuiseuxSeries::zero())
    }

    pub fn zero() -> Self {
        Self::real(PuiseuxSeries::zero())
    }

    pub fn one() -> Self {
        Self::real(PuiseuxSeries::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(PuiseuxSeries::zero(), PuiseuxSeries::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.re.add(&other.re), self.im.add(&other.im))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.re.sub(&other.re), self.im.sub(&other.im))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn scale(&self, c: C) -> Self {
        Self::new(self.re.scale(c.clone()), self.im.scale(c))
    }

    /// `(a+bi)(c+di) = (ac - bd) + (ad + bc)i`.
    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        Self::new(re, im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    /// `re² + im²`, the squared Euclidean norm in `R²`.
    pub fn norm_sq(&self) -> PuiseuxSeries<C> {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.re.is_exactly_zero() && self.im.is_exactly_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sq().inv()?;
        Ok(Self::new(self.re.mul(&n), self.im.neg().mul(&n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Coordinatewise minimum valuation.
    pub fn valuation(&self, bound: Exponent) -> Valuation {
        self.re.valuation(bound).min(self.im.valuation(bound))
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.re.is_exactly_zero() && self.im.is_exactly_zero()
    }

    /// `a + (b)*i` with both coordinates in Puiseux text form.
    pub fn render(&self, bound: Exponent) -> String {
        format!("{} + ({})*i", self.re.render(bound), self.im.render(bound))
    }
}

/// `(q₁, q₂)` with `(x + iy)ⁿ = q₁(x, y) + i·q₂(x, y)`.
///
/// `q₁` collects the even powers of `y`, `q₂` the odd ones, with the sign of
/// `i^k`.
pub fn homog_decompose<C: Scalar>(n: u32) -> (SeriesM<C>, SeriesM<C>) {
    let (s1, s2) = homog_slices::<C>(n);
    let as_poly = |s: Slice<C>| SeriesM::polynomial(2, s).expect("arity 2 monomials");
    (as_poly(s1), as_poly(s2))
}

fn homog_slices<C: Scalar>(n: u32) -> (Slice<C>, Slice<C>) {
    let mut q1 = Slice::new();
    let mut q2 = Slice::new();
    for k in 0..=n {
        let c: C = binomial(n as u64, k as u64);
        // i^k cycles 1, i, -1, -i
        let (target, negative) = match k % 4 {
            0 => (&mut q1, false),
            1 => (&mut q2, false),
            2 => (&mut q1, true),
            _ => (&mut q2, true),
        };
        target.insert(vec![n - k, k], if negative { -c } else { c });
    }
    (q1, q2)
}

/// Coordinate series `(p₁, p₂)` with `F_p(x + iy) = f_{p₁}(x,y) + i·f_{p₂}(x,y)`,
/// assembled slice by slice from `p_n · (x + iy)ⁿ`.
pub fn coordinate_series<C: Scalar>(p: &SeriesU<C>) -> (SeriesM<C>, SeriesM<C>) {
    let part = |imaginary: bool| {
        let p = p.clone();
        SeriesM::from_slices(2, p.degree_bound(), move |d| {
            let c = p.coeff(d);
            if c.is_zero() {
                return Slice::new();
            }
            let (s1, s2) = homog_slices::<C>(d as u32);
            let s = if imaginary { s2 } else { s1 };
            s.into_iter().map(|(m, v)| (m, v * c.clone())).collect()
        })
    };
    (part(false), part(true))
}

/// Which Cauchy–Riemann identity failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrEquation {
    /// `∂p₁/∂ξ₁ = ∂p₂/∂ξ₂`
    First,
    /// `∂p₁/∂ξ₂ = -∂p₂/∂ξ₁`
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrReport {
    Pass {
        degree: usize,
    },
    /// `degree` is the total degree of the coordinate series where the
    /// identity first breaks; `monomial` is the offending derivative term.
    Fail {
        degree: usize,
        monomial: Monomial,
        equation: CrEquation,
    },
}

impl CrReport {
    pub fn passed(&self) -> bool {
        matches!(self, CrReport::Pass { .. })
    }
}

/// Checks both Cauchy–Riemann identities for `(p₁, p₂)` exactly, slice by
/// slice through total degree `degree`.
pub fn cr_check<C: Scalar>(p1: &SeriesM<C>, p2: &SeriesM<C>, degree: usize) -> Result<CrReport> {
    for s in [p1, p2] {
        if s.arity() != 2 {
            return Err(Error::ArityMismatch {
                left: 2,
                right: s.arity(),
            });
        }
    }
    let p1x = p1.derive(0)?;
    let p1y = p1.derive(1)?;
    let p2x = p2.derive(0)?;
    let p2y = p2.derive(1)?;
    let minus_p2x = p2x.neg();
    for d in 1..=degree {
        let checks = [
            (&p1x, &p2y, CrEquation::First),
            (&p1y, &minus_p2x, CrEquation::Second),
        ];
        for (lhs, rhs, equation) in checks {
            let (a, b) = (lhs.slice(d - 1), rhs.slice(d - 1));
            if a != b {
                let monomial = a
                    .keys()
                    .chain(b.keys())
                    .find(|m| a.get(*m) != b.get(*m))
                    .cloned()
                    .unwrap_or_default();
                return Ok(CrReport::Fail {
                    degree: d,
                    monomial,
                    equation,
                });
            }
        }
    }
    Ok(CrReport::Pass { degree })
}

/// Position of a point relative to the disc `re² + im² < t²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscMembership {
    Interior,
    /// `re² + im² = t²` exactly.
    Boundary,
    Exterior,
    Indeterminate,
}

impl DiscMembership {
    /// Membership in the closure `|z| ≤ t`.
    pub fn in_closed_disc(&self) -> bool {
        matches!(self, DiscMembership::Interior | DiscMembership::Boundary)
    }
}

/// A point of `K` tested against the disc of radius `t` around 0.
pub struct DiscPoint<C> {
    pub z: ComplexPuiseux<C>,
}

impl<C> Clone for DiscPoint<C> {
    fn clone(&self) -> Self {
        DiscPoint { z: self.z.clone() }
    }
}

impl<C: Scalar> fmt::Debug for DiscPoint<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("DiscPoint").field(&self.z).finish()
    }
}

impl<C: Scalar> DiscPoint<C> {
    pub fn new(z: ComplexPuiseux<C>) -> Self {
        DiscPoint { z }
    }

    /// Sign of `re² + im² - t²`, read from leading terms below `bound`.
    pub fn classify(&self, bound: Exponent) -> DiscMembership {
        let t = PuiseuxSeries::<C>::t();
        let s = self.z.norm_sq().sub(&t.mul(&t));
        match s.sign(bound) {
            SignResult::Negative => DiscMembership::Interior,
            SignResult::Zero => DiscMembership::Boundary,
            SignResult::Positive => DiscMembership::Exterior,
            SignResult::ZeroThrough(_) => DiscMembership::Indeterminate,
        }
    }

    fn require_closed(&self, bound: Exponent) -> Result<()> {
        match self.classify(bound) {
            DiscMembership::Interior | DiscMembership::Boundary => Ok(()),
            DiscMembership::Exterior => Err(Error::OutsideDisc),
            DiscMembership::Indeterminate => Err(Error::IndeterminateMembership {
                coordinate: 0,
                bound,
            }),
        }
    }
}

fn membership_bound(order: Exponent) -> Exponent {
    (order * Exponent::from_integer(2)).max(Exponent::from_integer(3))
}

/// `F_p(z)` exact below exponent `order` in both coordinates.
///
/// Accepts points of the closed disc `|z| ≤ t`; there `zⁿ` has valuation at
/// least `n`, so the sum below `order` is finite.
pub fn eval_disc<C: Scalar>(
    p: &SeriesU<C>,
    z: &DiscPoint<C>,
    order: Exponent,
) -> Result<ComplexPuiseux<C>> {
    z.require_closed(membership_bound(order))?;
    let (re, im) = (&z.z.re, &z.z.im);
    let ram = common_ramification([re, im]);
    let len = slots(order, ram);
    let precision = [re.precision(), im.precision()]
        .into_iter()
        .flatten()
        .fold(order, |acc, p| acc.min(p));
    if len == 0 {
        let zero = PuiseuxSeries::zero().with_precision(precision);
        return Ok(ComplexPuiseux::new(zero.clone(), zero));
    }
    let max_degree = len.div_ceil(ram as usize);
    let zr = Dense::from_series(re, ram, len);
    let zi = Dense::from_series(im, ram, len);
    let mut pr = Dense::constant(ram, len, C::one());
    let mut pi = Dense::zero(ram, len);
    let mut acc_r = Dense::constant(ram, len, p.coeff(0));
    let mut acc_i: Dense<C> = Dense::zero(ram, len);
    for n in 1..max_degree {
        let next_r = pr.mul(&zr).sub(&pi.mul(&zi));
        let next_i = pr.mul(&zi).add(&pi.mul(&zr));
        pr = next_r;
        pi = next_i;
        let c = p.coeff(n);
        if !c.is_zero() {
            acc_r.add_scaled(&pr, &c);
            acc_i.add_scaled(&pi, &c);
        }
    }
    Ok(ComplexPuiseux::new(
        acc_r.into_series(precision),
        acc_i.into_series(precision),
    ))
}

/// Result of [`diff_quotient_check`].
pub struct DiffQuotientReport<C> {
    /// `(F_p(z₀+h) - F_p(z₀))/h - F_{p'}(z₀)`, exact below the checked order.
    pub delta: ComplexPuiseux<C>,
    /// Coordinatewise minimum valuation of `delta`.
    pub gap: Valuation,
    /// Valuation of `h`.
    pub step: Exponent,
    /// Whether `gap ≥ step`.
    pub holds: bool,
}

impl<C> Clone for DiffQuotientReport<C> {
    fn clone(&self) -> Self {
        DiffQuotientReport {
            delta: self.delta.clone(),
            gap: self.gap,
            step: self.step,
            holds: self.holds,
        }
    }
}

impl<C: Scalar> fmt::Debug for DiffQuotientReport<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiffQuotientReport")
            .field("delta", &self.delta)
            .field("gap", &self.gap)
            .field("step", &self.step)
            .field("holds", &self.holds)
            .finish()
    }
}

/// Compares the difference quotient of `F_p` with `F_{p'}` at `z₀`, exactly
/// below exponent `order`.
///
/// Both `z₀` and `z₀ + h` must lie in the closed disc and `h` must have
/// valuation at least 1.
pub fn diff_quotient_check<C: Scalar>(
    p: &SeriesU<C>,
    z0: &DiscPoint<C>,
    h: &ComplexPuiseux<C>,
    order: Exponent,
) -> Result<DiffQuotientReport<C>> {
    if h.is_exactly_zero() {
        return Err(Error::ZeroStep);
    }
    let step = [&h.re, &h.im]
        .iter()
        .map(|c| c.leading_term(Exponent::from_integer(crate::puiseux::DEFAULT_SEARCH_TERMS)))
        .try_fold(None::<Exponent>, |acc, lead| match lead {
            Leading::Term(e, _) => Ok(Some(acc.map_or(e, |a| a.min(e)))),
            Leading::Zero => Ok(acc),
            Leading::ZeroThrough(b) => Err(Error::UndecidedZero { bound: b }),
        })?
        .ok_or(Error::ZeroStep)?;
    if step < Exponent::one() {
        return Err(Error::StepTooLarge);
    }
    let shifted = DiscPoint::new(z0.z.add(h));
    z0.require_closed(membership_bound(order))?;
    shifted.require_closed(membership_bound(order))?;

    let working = order + step;
    let f_shifted = eval_disc(p, &shifted, working)?;
    let f_base = eval_disc(p, z0, working)?;
    let f_deriv = eval_disc(&p.derive(), z0, working)?;
    let quotient = f_shifted.sub(&f_base).checked_div(h)?;
    let delta = quotient.sub(&f_deriv);
    let gap = delta.valuation(order);
    Ok(DiffQuotientReport {
        holds: gap.is_at_least(step),
        delta,
        gap,
        step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = PuiseuxSeries<Rational>;
    type S = SeriesU<Rational>;
    type M = SeriesM<Rational>;
    type Z = ComplexPuiseux<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn n(k: i64) -> Exponent {
        Exponent::from_integer(k)
    }

    fn poly2(terms: &[((u32, u32), i64)]) -> M {
        M::polynomial(2, terms.iter().map(|&((a, b), c)| (vec![a, b], q(c, 1)))).unwrap()
    }

    /// Oracle: expand (x + iy)^n by repeated multiplication of coordinate
    /// pairs of polynomials.
    fn power_by_multiplication(n: u32) -> (M, M) {
        let x = poly2(&[((1, 0), 1)]);
        let y = poly2(&[((0, 1), 1)]);
        let mut re = M::constant(2, q(1, 1));
        let mut im = M::zero(2);
        for _ in 0..n {
            let nr = re
                .checked_mul(&x)
                .unwrap()
                .checked_sub(&im.checked_mul(&y).unwrap())
                .unwrap();
            let ni = re
                .checked_mul(&y)
                .unwrap()
                .checked_add(&im.checked_mul(&x).unwrap())
                .unwrap();
            re = nr;
            im = ni;
        }
        (re, im)
    }

    #[test]
    fn homog_small_degrees() {
        let (a, b) = homog_decompose::<Rational>(1);
        assert!(a.agrees_through(&poly2(&[((1, 0), 1)]), 3));
        assert!(b.agrees_through(&poly2(&[((0, 1), 1)]), 3));
        let (a, b) = homog_decompose::<Rational>(2);
        assert!(a.agrees_through(&poly2(&[((2, 0), 1), ((0, 2), -1)]), 4));
        assert!(b.agrees_through(&poly2(&[((1, 1), 2)]), 4));
        let (a, b) = homog_decompose::<Rational>(3);
        assert!(a.agrees_through(&poly2(&[((3, 0), 1), ((1, 2), -3)]), 5));
        assert!(b.agrees_through(&poly2(&[((2, 1), 3), ((0, 3), -1)]), 5));
    }

    #[test]
    fn homog_matches_repeated_multiplication() {
        for k in 1..=10 {
            let (a, b) = homog_decompose::<Rational>(k);
            let (ra, rb) = power_by_multiplication(k);
            assert!(a.agrees_through(&ra, k as usize + 1), "n = {k}");
            assert!(b.agrees_through(&rb, k as usize + 1), "n = {k}");
        }
    }

    #[test]
    fn coordinate_series_examples() {
        let (p1, p2) = coordinate_series(&S::variable());
        assert!(p1.agrees_through(&poly2(&[((1, 0), 1)]), 5));
        assert!(p2.agrees_through(&poly2(&[((0, 1), 1)]), 5));

        let (p1, p2) = coordinate_series(&S::monomial(q(1, 1), 2));
        assert!(p1.agrees_through(&poly2(&[((2, 0), 1), ((0, 2), -1)]), 5));
        assert!(p2.agrees_through(&poly2(&[((1, 1), 2)]), 5));

        // Σ (n-1)! ζ^n: slices 1..3 of p1 are x, x^2 - y^2, 2(x^3 - 3xy^2)
        let (p1, _) = coordinate_series(&S::factorial());
        let expected = poly2(&[
            ((1, 0), 1),
            ((2, 0), 1),
            ((0, 2), -1),
            ((3, 0), 2),
            ((1, 2), -6),
        ]);
        assert!(p1.agrees_through(&expected, 3));
    }

    #[test]
    fn cr_examples() {
        let (p1, p2) = coordinate_series(&S::monomial(q(1, 1), 2));
        assert_eq!(
            cr_check(&p1, &p2, 20).unwrap(),
            CrReport::Pass { degree: 20 }
        );

        let conj = (poly2(&[((1, 0), 1)]), poly2(&[((0, 1), -1)]));
        match cr_check(&conj.0, &conj.1, 5).unwrap() {
            CrReport::Fail {
                degree, equation, ..
            } => {
                assert_eq!(degree, 1);
                assert_eq!(equation, CrEquation::First);
            }
            other => panic!("expected failure, got {other:?}"),
        }

        let id = (poly2(&[((1, 0), 1)]), poly2(&[((0, 1), 1)]));
        assert!(cr_check(&id.0, &id.1, 5).unwrap().passed());

        let (p1, p2) = coordinate_series(&S::factorial());
        assert!(cr_check(&p1, &p2, 12).unwrap().passed());

        let bad_arity = M::constant(3, q(1, 1));
        assert!(cr_check(&bad_arity, &p2, 3).is_err());
    }

    #[test]
    fn complex_arithmetic() {
        let a = Z::new(P::one(), P::t());
        let b = Z::new(P::t(), P::constant(q(2, 1)));
        let prod = a.mul(&b);
        // (1 + t i)(t + 2 i) = (t - 2t) + (2 + t^2) i
        assert_eq!(prod.re.terms_below(n(5)), vec![(n(1), q(-1, 1))]);
        assert_eq!(
            prod.im.terms_below(n(5)),
            vec![(n(0), q(2, 1)), (n(2), q(1, 1))]
        );
        let back = prod.checked_div(&b).unwrap();
        assert_eq!(back.sub(&a).valuation(n(10)), Valuation::AtLeast(n(10)));
        assert_eq!(Z::zero().inv().unwrap_err(), Error::DivisionByZero);
        assert_eq!(
            Z::i().mul(&Z::i()).re.terms_below(n(1)),
            vec![(n(0), q(-1, 1))]
        );
    }

    #[test]
    fn disc_classification() {
        let inside = DiscPoint::new(Z::new(
            P::monomial(q(1, 2), n(1)),
            P::monomial(q(1, 2), n(1)),
        ));
        assert_eq!(inside.classify(n(6)), DiscMembership::Interior);
        let boundary = DiscPoint::new(Z::new(P::zero(), P::t()));
        assert_eq!(boundary.classify(n(6)), DiscMembership::Boundary);
        let outside = DiscPoint::new(Z::new(P::t(), P::t()));
        assert_eq!(outside.classify(n(6)), DiscMembership::Exterior);
        let far = DiscPoint::new(Z::real(P::constant(q(1, 100))));
        assert_eq!(far.classify(n(6)), DiscMembership::Exterior);
    }

    #[test]
    fn eval_disc_examples() {
        let origin = DiscPoint::new(Z::zero());
        let v = eval_disc(&S::exponential(), &origin, n(8)).unwrap();
        assert_eq!(v.re.terms_below(n(8)), vec![(n(0), q(1, 1))]);
        assert!(v.im.terms_below(n(8)).is_empty());

        let ti = DiscPoint::new(Z::new(P::zero(), P::t()));
        let v = eval_disc(&S::monomial(q(1, 1), 2), &ti, n(8)).unwrap();
        assert_eq!(v.re.terms_below(n(8)), vec![(n(2), q(-1, 1))]);
        assert!(v.im.terms_below(n(8)).is_empty());

        let t = DiscPoint::new(Z::real(P::t()));
        let v = eval_disc(&S::factorial(), &t, n(5)).unwrap();
        assert_eq!(v.re.render(n(5)), "t + t^2 + 2*t^3 + 6*t^4 + O(t^5)");

        let out = DiscPoint::new(Z::real(P::constant(q(1, 2))));
        assert_eq!(
            eval_disc(&S::geometric(), &out, n(5)).unwrap_err(),
            Error::OutsideDisc
        );
    }

    #[test]
    fn eval_disc_agrees_with_coordinate_box_functions() {
        use crate::puiseux::{eval_box, BoxPoint};
        let x = P::from_terms([(q(1, 3), n(1)), (q(2, 1), n(2))]);
        let y = P::monomial(q(-1, 2), Exponent::new(3, 2));
        let z = DiscPoint::new(Z::new(x.clone(), y.clone()));
        let p = S::factorial().add(&S::exponential());
        let v = eval_disc(&p, &z, n(9)).unwrap();
        let (p1, p2) = coordinate_series(&p);
        let point = BoxPoint::new(vec![x, y]);
        let b1 = eval_box(&p1, &point, n(9)).unwrap();
        let b2 = eval_box(&p2, &point, n(9)).unwrap();
        assert_eq!(
            v.re.compare(&b1, n(9)),
            crate::puiseux::Comparison::EqualThrough(n(9))
        );
        assert_eq!(
            v.im.compare(&b2, n(9)),
            crate::puiseux::Comparison::EqualThrough(n(9))
        );
    }

    #[test]
    fn diff_quotient_of_square() {
        // ((z0+h)^2 - z0^2)/h - 2 z0 = h exactly
        let z0 = DiscPoint::new(Z::real(P::monomial(q(1, 2), n(1))));
        let h = Z::real(P::monomial(q(1, 1), n(2)));
        let r = diff_quotient_check(&S::monomial(q(1, 1), 2), &z0, &h, n(20)).unwrap();
        assert_eq!(r.step, n(2));
        assert_eq!(r.gap, Valuation::Finite(n(2)));
        assert_eq!(r.delta.re.terms_below(n(20)), vec![(n(2), q(1, 1))]);
        assert!(r.holds);
    }

    #[test]
    fn diff_quotient_rejects_points_leaving_the_disc() {
        let z0 = DiscPoint::new(Z::real(P::t()));
        let h = Z::real(P::monomial(q(1, 1), n(2)));
        let err = diff_quotient_check(&S::monomial(q(1, 1), 2), &z0, &h, n(10)).unwrap_err();
        assert_eq!(err, Error::OutsideDisc);
    }

    #[test]
    fn diff_quotient_of_identity_vanishes() {
        let z0 = DiscPoint::new(Z::new(
            P::monomial(q(1, 3), n(1)),
            P::monomial(q(1, 4), n(2)),
        ));
        let h = Z::new(P::monomial(q(1, 5), n(1)), P::monomial(q(1, 5), n(1)));
        let r = diff_quotient_check(&S::variable(), &z0, &h, n(12)).unwrap();
        assert_eq!(r.gap, Valuation::AtLeast(n(12)));
        assert!(r.holds);
    }

    #[test]
    fn diff_quotient_of_factorial_series() {
        let z0 = DiscPoint::new(Z::real(P::monomial(q(1, 2), n(1))));
        let h = Z::real(P::monomial(q(1, 1), n(3)));
        let r = diff_quotient_check(&S::factorial(), &z0, &h, n(20)).unwrap();
        assert!(r.gap.is_at_least(n(3)), "gap {}", r.gap);
        assert!(r.holds);
    }

    #[test]
    fn diff_quotient_step_errors() {
        let z0 = DiscPoint::new(Z::zero());
        assert_eq!(
            diff_quotient_check(&S::geometric(), &z0, &Z::zero(), n(5)).unwrap_err(),
            Error::ZeroStep
        );
        let big = Z::real(P::monomial(q(1, 1), Exponent::new(1, 2)));
        assert_eq!(
            diff_quotient_check(&S::geometric(), &z0, &big, n(5)).unwrap_err(),
            Error::StepTooLarge
        );
    }
}
