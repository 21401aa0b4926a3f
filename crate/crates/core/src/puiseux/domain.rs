//! Box functions `f_p` on the infinitesimal cube `[-t, t]ⁿ`.

use num_traits::One;

use super::dense::{common_ramification, slots, Dense};
use super::{Exponent, Leading, PuiseuxSeries, SignResult};
use crate::error::{Error, Result};
use crate::fps::SeriesM;
use crate::Scalar;

/// Whether a value lies in the closed interval `[-t, t]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    /// `|x| - t` has no nonzero term below the search bound.
    Indeterminate,
}

/// Decides `|x| <= t` from leading terms, scanning below `bound`.
///
/// Valuation above 1 is inside and below 1 outside. At valuation exactly 1
/// the leading coefficient decides unless its magnitude is 1, in which case
/// the sign of `|x| - t` does.
pub fn box_membership<C: Scalar>(x: &PuiseuxSeries<C>, bound: Exponent) -> Membership {
    let one = Exponent::one();
    match x.leading_term(bound) {
        Leading::Zero => Membership::Inside,
        Leading::ZeroThrough(b) => {
            if b > one {
                Membership::Inside
            } else {
                Membership::Indeterminate
            }
        }
        Leading::Term(v, c) => {
            if v > one {
                return Membership::Inside;
            }
            if v < one {
                return Membership::Outside;
            }
            let magnitude = c.abs();
            if magnitude < C::one() {
                return Membership::Inside;
            }
            if magnitude > C::one() {
                return Membership::Outside;
            }
            let abs_x = if c.is_negative() { x.neg() } else { x.clone() };
            match abs_x.sub(&PuiseuxSeries::t()).sign(bound) {
                SignResult::Negative | SignResult::Zero => Membership::Inside,
                SignResult::Positive => Membership::Outside,
                SignResult::ZeroThrough(_) => Membership::Indeterminate,
            }
        }
    }
}

/// A point of `Rⁿ` at which box functions are evaluated.
pub struct BoxPoint<C> {
    pub coords: Vec<PuiseuxSeries<C>>,
}

impl<C> Clone for BoxPoint<C> {
    fn clone(&self) -> Self {
        BoxPoint {
            coords: self.coords.clone(),
        }
    }
}

impl<C: Scalar> std::fmt::Debug for BoxPoint<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

impl<C: Scalar> BoxPoint<C> {
    pub fn new(coords: Vec<PuiseuxSeries<C>>) -> Self {
        BoxPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Joint membership in the cube; the first undecided coordinate is
    /// reported as an error.
    pub fn membership(&self, bound: Exponent) -> Result<Membership> {
        let mut outside = false;
        for (i, x) in self.coords.iter().enumerate() {
            match box_membership(x, bound) {
                Membership::Inside => {}
                Membership::Outside => outside = true,
                Membership::Indeterminate => {
                    return Err(Error::IndeterminateMembership {
                        coordinate: i,
                        bound,
                    })
                }
            }
        }
        Ok(if outside {
            Membership::Outside
        } else {
            Membership::Inside
        })
    }
}

/// Evaluates `f_p(x)` exactly below exponent `order`.
///
/// Inside the cube each coordinate has valuation at least 1, so monomials of
/// total degree `d` contribute only from `t^d` on and the sum below `order`
/// is finite. Outside the cube `f_p` is zero.
pub fn eval_box<C: Scalar>(
    p: &SeriesM<C>,
    x: &BoxPoint<C>,
    order: Exponent,
) -> Result<PuiseuxSeries<C>> {
    if p.arity() != x.dim() {
        return Err(Error::ArityMismatch {
            left: p.arity(),
            right: x.dim(),
        });
    }
    let search = order.max(Exponent::from_integer(2));
    if x.membership(search)? == Membership::Outside {
        return Ok(PuiseuxSeries::zero());
    }
    let ram = common_ramification(&x.coords);
    let len = slots(order, ram);
    let precision = x
        .coords
        .iter()
        .filter_map(|c| c.precision())
        .fold(order, |acc, p| acc.min(p));
    if len == 0 {
        return Ok(PuiseuxSeries::zero().with_precision(precision));
    }
    let max_degree = len.div_ceil(ram as usize);

    // powers[i][e] = x_i^e truncated
    let powers: Vec<Vec<Dense<C>>> = x
        .coords
        .iter()
        .map(|xi| {
            let base = Dense::from_series(xi, ram, len);
            let mut pw = vec![Dense::constant(ram, len, C::one())];
            for e in 1..=max_degree {
                let next = if base.is_zero() {
                    Dense::zero(ram, len)
                } else {
                    pw[e - 1].mul(&base)
                };
                pw.push(next);
            }
            pw
        })
        .collect();

    let mut acc: Dense<C> = Dense::zero(ram, len);
    for d in 0..max_degree {
        for (m, c) in p.slice(d).iter() {
            let mut term: Option<Dense<C>> = None;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = &powers[i][e as usize];
                term = Some(match term {
                    None => factor.clone(),
                    Some(t) => t.mul(factor),
                });
            }
            match term {
                None => acc.coeffs[0] = acc.coeffs[0].clone() + c.clone(),
                Some(t) => acc.add_scaled(&t, c),
            }
        }
    }
    Ok(acc.into_series(precision))
}
