//! The field of Puiseux series `R = ⋃ₙ ℝ((t^{1/n}))`, ordered with `t` a
//! positive infinitesimal.
//!
//! An element is stored as `t^{start/ram} · u(t^{1/ram})` where `u` is a lazy
//! [`SeriesU`]. Arithmetic never materializes coefficients; questions about
//! sign, order and valuation take an explicit exponent bound because
//! equality of lazily presented series is undecidable.
//!
//! Values produced by truncated evaluation carry a precision `p`: they are
//! exact for exponents `< p` and unknown from `p` on. Arithmetic propagates
//! precision conservatively.

pub(crate) mod dense;
mod domain;

pub use domain::{box_membership, eval_box, BoxPoint, Membership};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fps::SeriesU;
use crate::text::TermWriter;
use crate::Scalar;

/// Exact exponent `a/b` of `t`.
pub type Exponent = num_rational::Rational64;

/// Number of coefficients scanned when an operation must locate a leading
/// term and the caller gave no bound.
pub const DEFAULT_SEARCH_TERMS: i64 = 4096;

pub fn exponent(num: i64, den: i64) -> Exponent {
    Exponent::new(num, den)
}

/// An element of the Puiseux field over `C`.
pub struct PuiseuxSeries<C> {
    repr: Repr<C>,
}

enum Repr<C> {
    Zero,
    Lazy {
        ram: u32,
        start: i64,
        unit: SeriesU<C>,
        precision: Option<Exponent>,
    },
}

impl<C> Clone for PuiseuxSeries<C> {
    fn clone(&self) -> Self {
        let repr = match &self.repr {
            Repr::Zero => Repr::Zero,
            Repr::Lazy {
                ram,
                start,
                unit,
                precision,
            } => Repr::Lazy {
                ram: *ram,
                start: *start,
                unit: unit.clone(),
                precision: *precision,
            },
        };
        PuiseuxSeries { repr }
    }
}

impl<C: Scalar> fmt::Debug for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PuiseuxSeries({})", self.render(self.debug_bound()))
    }
}

/// Leading term of an element, as far as a bounded scan can tell.
#[derive(Debug, Clone, PartialEq)]
pub enum Leading<C> {
    /// First nonzero term: exponent and coefficient.
    Term(Exponent, C),
    /// The element is exactly zero.
    Zero,
    /// No nonzero coefficient with exponent below the bound.
    ZeroThrough(Exponent),
}

/// Valuation: least exponent with a nonzero coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(Exponent),
    /// The element is exactly zero.
    Infinite,
    /// Nothing nonzero below this exponent; the valuation is at least it.
    AtLeast(Exponent),
}

impl Valuation {
    /// `self ≥ e`, treating `AtLeast(b)` as certified only up to `b`.
    pub fn is_at_least(&self, e: Exponent) -> bool {
        match self {
            Valuation::Finite(v) => *v >= e,
            Valuation::Infinite => true,
            Valuation::AtLeast(b) => *b >= e,
        }
    }

    /// Lower bound usable in comparisons; `None` means `+∞`.
    pub fn lower_bound(&self) -> Option<Exponent> {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }

    pub fn min(self, other: Valuation) -> Valuation {
        match (self.lower_bound(), other.lower_bound()) {
            (None, _) => other,
            (_, None) => self,
            (Some(a), Some(b)) => {
                if a < b || (a == b && matches!(self, Valuation::Finite(_))) {
                    self
                } else {
                    other
                }
            }
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
            Valuation::AtLeast(b) => write!(f, ">= {b}"),
        }
    }
}

/// Sign in the field ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignResult {
    Negative,
    Zero,
    Positive,
    ZeroThrough(Exponent),
}

/// Outcome of a bounded comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    /// The difference has no nonzero term below this exponent.
    EqualThrough(Exponent),
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Less => write!(f, "less"),
            Comparison::Greater => write!(f, "greater"),
            Comparison::EqualThrough(n) => write!(f, "equal_through({n})"),
        }
    }
}

fn min_precision(a: Option<Exponent>, b: Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn ceil_index(e: Exponent, ram: u32) -> i64 {
    let scaled = e * Exponent::from_integer(ram as i64);
    scaled.ceil().to_integer()
}

impl<C: Scalar> PuiseuxSeries<C> {
    pub fn zero() -> Self {
        PuiseuxSeries { repr: Repr::Zero }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Exponent::zero())
    }

    /// The infinitesimal `t`.
    pub fn t() -> Self {
        Self::monomial(C::one(), Exponent::one())
    }

    /// `c · t^e`.
    pub fn monomial(c: C, e: Exponent) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxSeries {
            repr: Repr::Lazy {
                ram: *e.denom() as u32,
                start: *e.numer(),
                unit: SeriesU::constant(c),
                precision: None,
            },
        }
    }

    /// Finite sum `Σ c · t^e`.
    pub fn from_terms<I: IntoIterator<Item = (C, Exponent)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (c, e) in terms {
            acc = acc.add(&Self::monomial(c, e));
        }
        acc.normalized()
    }

    /// `t^{start/ram} · unit(t^{1/ram})`.
    pub fn from_parts(ram: u32, start: i64, unit: SeriesU<C>) -> Result<Self> {
        if ram == 0 {
            return Err(Error::InvalidArgument(
                "ramification must be positive".into(),
            ));
        }
        Ok(PuiseuxSeries {
            repr: Repr::Lazy {
                ram,
                start,
                unit,
                precision: None,
            },
        })
    }

    /// Marks the value as known only below exponent `p`.
    pub fn with_precision(self, p: Exponent) -> Self {
        match self.repr {
            Repr::Zero => PuiseuxSeries {
                repr: Repr::Lazy {
                    ram: *p.denom() as u32,
                    start: *p.numer(),
                    unit: SeriesU::zero(),
                    precision: Some(p),
                },
            },
            Repr::Lazy {
                ram,
                start,
                unit,
                precision,
            } => PuiseuxSeries {
                repr: Repr::Lazy {
                    ram,
                    start,
                    unit,
                    precision: min_precision(precision, Some(p)),
                },
            },
        }
    }

    /// Exponent below which the value is exact; `None` if exact everywhere.
    pub fn precision(&self) -> Option<Exponent> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Lazy { precision, .. } => *precision,
        }
    }

    /// Ramification index `n` of the current presentation.
    pub fn ramification(&self) -> u32 {
        match &self.repr {
            Repr::Zero => 1,
            Repr::Lazy { ram, .. } => *ram,
        }
    }

    /// Lower bound on the valuation read off the presentation.
    pub fn start_exponent(&self) -> Option<Exponent> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Lazy { ram, start, .. } => Some(Exponent::new(*start, *ram as i64)),
        }
    }

    /// A certified lower bound on the valuation of the value this element
    /// approximates (the start exponent, capped by the precision).
    fn valuation_floor(&self) -> Exponent {
        let start = self.start_exponent().unwrap_or_else(Exponent::zero);
        match self.precision() {
            Some(p) => p.min(start),
            None => start,
        }
    }

    /// True for the explicit zero element.
    pub fn is_zero_marker(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// True when the element is certifiably zero.
    pub fn is_exactly_zero(&self) -> bool {
        match &self.repr {
            Repr::Zero => true,
            Repr::Lazy {
                unit, precision, ..
            } => precision.is_none() && unit.is_exactly_zero(),
        }
    }

    /// True when every coefficient past a known index vanishes and nothing
    /// is truncated.
    pub fn is_finite(&self) -> bool {
        match &self.repr {
            Repr::Zero => true,
            Repr::Lazy {
                unit, precision, ..
            } => precision.is_none() && unit.degree_bound().is_some(),
        }
    }

    /// Coefficient of `t^e` (zero off the lattice of this presentation).
    pub fn coeff_at(&self, e: Exponent) -> C {
        match &self.repr {
            Repr::Zero => C::zero(),
            Repr::Lazy {
                ram, start, unit, ..
            } => {
                let scaled = e * Exponent::from_integer(*ram as i64);
                if !scaled.is_integer() {
                    return C::zero();
                }
                let k = scaled.to_integer() - start;
                if k < 0 {
                    C::zero()
                } else {
                    unit.coeff(k as usize)
                }
            }
        }
    }

    fn effective_bound(&self, bound: Exponent) -> Exponent {
        match self.precision() {
            Some(p) => p.min(bound),
            None => bound,
        }
    }

    /// Nonzero terms with exponent below `bound` (and below the precision).
    pub fn terms_below(&self, bound: Exponent) -> Vec<(Exponent, C)> {
        let bound = self.effective_bound(bound);
        let Repr::Lazy {
            ram, start, unit, ..
        } = &self.repr
        else {
            return Vec::new();
        };
        let end = ceil_index(bound, *ram) - start;
        let mut out = Vec::new();
        let last = match unit.degree_bound() {
            Some(b) => end.min(b as i64 + 1),
            None => end,
        };
        for k in 0..last.max(0) {
            let c = unit.coeff(k as usize);
            if !c.is_zero() {
                out.push((Exponent::new(start + k, *ram as i64), c));
            }
        }
        out
    }

    /// First nonzero term below `bound`.
    pub fn leading_term(&self, bound: Exponent) -> Leading<C> {
        let Repr::Lazy {
            ram,
            start,
            unit,
            precision,
        } = &self.repr
        else {
            return Leading::Zero;
        };
        let bound = self.effective_bound(bound);
        let end = ceil_index(bound, *ram) - start;
        let finite_end = unit.degree_bound().map(|b| b as i64 + 1);
        let last = finite_end.map_or(end, |f| f.min(end));
        for k in 0..last.max(0) {
            let c = unit.coeff(k as usize);
            if !c.is_zero() {
                return Leading::Term(Exponent::new(start + k, *ram as i64), c);
            }
        }
        if precision.is_none() && finite_end.is_some_and(|f| f <= end) {
            Leading::Zero
        } else {
            Leading::ZeroThrough(bound)
        }
    }

    pub fn valuation(&self, bound: Exponent) -> Valuation {
        match self.leading_term(bound) {
            Leading::Term(e, _) => Valuation::Finite(e),
            Leading::Zero => Valuation::Infinite,
            Leading::ZeroThrough(b) => Valuation::AtLeast(b),
        }
    }

    /// Sign in the ordering where `t` is a positive infinitesimal.
    pub fn sign(&self, bound: Exponent) -> SignResult {
        match self.leading_term(bound) {
            Leading::Term(_, c) => {
                if c.is_negative() {
                    SignResult::Negative
                } else {
                    SignResult::Positive
                }
            }
            Leading::Zero => SignResult::Zero,
            Leading::ZeroThrough(b) => SignResult::ZeroThrough(b),
        }
    }

    /// Bounded comparison: the sign of `self - other`.
    pub fn compare(&self, other: &Self, bound: Exponent) -> Comparison {
        match self.sub(other).sign(bound) {
            SignResult::Negative => Comparison::Less,
            SignResult::Positive => Comparison::Greater,
            SignResult::Zero => Comparison::EqualThrough(bound),
            SignResult::ZeroThrough(b) => Comparison::EqualThrough(b),
        }
    }

    /// `|self|`, deciding the sign within `bound`.
    pub fn abs(&self, bound: Exponent) -> Result<Self> {
        match self.sign(bound) {
            SignResult::Negative => Ok(self.neg()),
            SignResult::Positive | SignResult::Zero => Ok(self.clone()),
            SignResult::ZeroThrough(b) => Err(Error::UndecidedZero { bound: b }),
        }
    }

    /// Re-expresses the element over ramification `target` (a multiple of
    /// the current one).
    fn raised(&self, target: u32) -> (i64, SeriesU<C>) {
        let Repr::Lazy {
            ram, start, unit, ..
        } = &self.repr
        else {
            unreachable!("raising the zero marker");
        };
        let factor = target / ram;
        (start * factor as i64, unit.spread(factor as usize))
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) => other.clone(),
            (_, Repr::Zero) => self.clone(),
            (
                Repr::Lazy {
                    ram: ra,
                    precision: pa,
                    ..
                },
                Repr::Lazy {
                    ram: rb,
                    precision: pb,
                    ..
                },
            ) => {
                let ram = ra.lcm(rb);
                let (ea, ua) = self.raised(ram);
                let (eb, ub) = other.raised(ram);
                let start = ea.min(eb);
                let unit = ua
                    .shift_up((ea - start) as usize)
                    .add(&ub.shift_up((eb - start) as usize));
                PuiseuxSeries {
                    repr: Repr::Lazy {
                        ram,
                        start,
                        unit,
                        precision: min_precision(*pa, *pb),
                    },
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-C::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        match &self.repr {
            Repr::Zero => Self::zero(),
            Repr::Lazy {
                ram,
                start,
                unit,
                precision,
            } => PuiseuxSeries {
                repr: Repr::Lazy {
                    ram: *ram,
                    start: *start,
                    unit: unit.scale(c),
                    precision: *precision,
                },
            },
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Self::zero(),
            (
                Repr::Lazy {
                    ram: ra,
                    precision: pa,
                    ..
                },
                Repr::Lazy {
                    ram: rb,
                    precision: pb,
                    ..
                },
            ) => {
                let ram = ra.lcm(rb);
                let (ea, ua) = self.raised(ram);
                let (eb, ub) = other.raised(ram);
                let va = self.valuation_floor();
                let vb = other.valuation_floor();
                let precision = min_precision(pa.map(|p| p + vb), pb.map(|p| p + va));
                PuiseuxSeries {
                    repr: Repr::Lazy {
                        ram,
                        start: ea + eb,
                        unit: ua.mul(&ub),
                        precision,
                    },
                }
            }
        }
    }

    /// Multiplicative inverse, locating the leading term within `bound`.
    ///
    /// The leading monomial is factored out and the remaining unit is
    /// inverted as a power series.
    pub fn inv_within(&self, bound: Exponent) -> Result<Self> {
        let Repr::Lazy {
            ram,
            start,
            unit,
            precision,
        } = &self.repr
        else {
            return Err(Error::DivisionByZero);
        };
        let (lead, _) = match self.leading_term(bound) {
            Leading::Term(e, c) => (e, c),
            Leading::Zero => return Err(Error::DivisionByZero),
            Leading::ZeroThrough(b) => return Err(Error::UndecidedZero { bound: b }),
        };
        let skip = (lead * Exponent::from_integer(*ram as i64)).to_integer() - start;
        let inverse = unit_tail(unit, skip as usize).invert_unit()?;
        Ok(PuiseuxSeries {
            repr: Repr::Lazy {
                ram: *ram,
                start: -(start + skip),
                unit: inverse,
                precision: precision.map(|p| p - lead * Exponent::from_integer(2)),
            },
        })
    }

    /// Multiplicative inverse with the default leading-term search.
    pub fn inv(&self) -> Result<Self> {
        self.inv_within(self.default_search_bound())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Termwise derivative `d/dt`.
    pub fn derive(&self) -> Self {
        let Repr::Lazy {
            ram,
            start,
            unit,
            precision,
        } = &self.repr
        else {
            return Self::zero();
        };
        let (ram, start, u) = (*ram, *start, unit.clone());
        let unit = SeriesU::from_rule(unit.degree_bound(), move |k, _| {
            let e = C::from_int(start + k as i64) / C::from_int(ram as i64);
            e * u.coeff(k)
        });
        PuiseuxSeries {
            repr: Repr::Lazy {
                ram,
                start: start - ram as i64,
                unit,
                precision: precision.map(|p| p - Exponent::one()),
            },
        }
    }

    /// Canonical form for finitely supported exact values: leading zeros
    /// stripped and the ramification reduced as far as the support allows.
    /// Other values are returned unchanged.
    pub fn normalized(&self) -> Self {
        if !self.is_finite() || self.is_zero_marker() {
            return self.clone();
        }
        let Repr::Lazy {
            ram, start, unit, ..
        } = &self.repr
        else {
            unreachable!()
        };
        let end = unit.degree_bound().unwrap() as i64 + 1;
        let terms = self.terms_below(Exponent::new(start + end, *ram as i64));
        if terms.is_empty() {
            return Self::zero();
        }
        let g = terms
            .iter()
            .fold(0i64, |g, (e, _)| {
                g.gcd(&(e * Exponent::from_integer(*ram as i64)).to_integer())
            })
            .gcd(&(*ram as i64));
        let new_ram = *ram as i64 / g;
        let first = (terms[0].0 * Exponent::from_integer(new_ram)).to_integer();
        let last = (terms.last().unwrap().0 * Exponent::from_integer(new_ram)).to_integer();
        let mut coeffs = vec![C::zero(); (last - first + 1) as usize];
        for (e, c) in terms {
            let k = (e * Exponent::from_integer(new_ram)).to_integer() - first;
            coeffs[k as usize] = c;
        }
        PuiseuxSeries {
            repr: Repr::Lazy {
                ram: new_ram as u32,
                start: first,
                unit: SeriesU::polynomial(coeffs),
                precision: None,
            },
        }
    }

    fn default_search_bound(&self) -> Exponent {
        match &self.repr {
            Repr::Zero => Exponent::zero(),
            Repr::Lazy { ram, start, .. } => {
                Exponent::new(start + DEFAULT_SEARCH_TERMS, *ram as i64)
            }
        }
    }

    fn debug_bound(&self) -> Exponent {
        let base = self.start_exponent().unwrap_or_else(Exponent::zero);
        base + Exponent::from_integer(8)
    }

    /// Text form `c·t^e + … + O(t^N)` with terms in increasing exponent.
    ///
    /// `N` is the smaller of `bound` and the precision. The tail is omitted
    /// for exact finite values whose support lies below `bound`.
    pub fn render(&self, bound: Exponent) -> String {
        let effective = self.effective_bound(bound);
        let mut w = TermWriter::new();
        for (e, c) in self.terms_below(effective) {
            w.term(&c, &t_power(e));
        }
        let exact_below = match &self.repr {
            Repr::Zero => true,
            Repr::Lazy {
                ram,
                start,
                unit,
                precision,
            } => {
                precision.is_none()
                    && unit
                        .degree_bound()
                        .is_some_and(|b| Exponent::new(start + b as i64, *ram as i64) < bound)
            }
        };
        if !exact_below {
            let tail = t_power(effective);
            w.tail(&format!(
                "O({})",
                if tail.is_empty() { "1".into() } else { tail }
            ));
        }
        w.finish()
    }

    /// Dense coefficients over ramification `ram`, for exponents `k/ram`
    /// with `0 <= k < len`.
    pub(crate) fn dense(&self, ram: u32, len: usize) -> Vec<C> {
        (0..len)
            .map(|k| self.coeff_at(Exponent::new(k as i64, ram as i64)))
            .collect()
    }
}

/// The unit series with its first `skip` coefficients dropped.
fn unit_tail<C: Scalar>(unit: &SeriesU<C>, skip: usize) -> SeriesU<C> {
    if skip == 0 {
        return unit.clone();
    }
    let u = unit.clone();
    let bound = unit.degree_bound().map(|b| b.saturating_sub(skip));
    SeriesU::from_rule(bound, move |k, _| u.coeff(k + skip))
}

/// `t^e` in parser syntax.
pub fn t_power(e: Exponent) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        "t".to_string()
    } else if e.is_integer() && *e.numer() > 0 {
        format!("t^{}", e.numer())
    } else {
        format!("t^({e})")
    }
}

impl<C: Scalar> Add for &PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn add(self, rhs: Self) -> PuiseuxSeries<C> {
        PuiseuxSeries::add(self, rhs)
    }
}

impl<C: Scalar> Sub for &PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn sub(self, rhs: Self) -> PuiseuxSeries<C> {
        PuiseuxSeries::sub(self, rhs)
    }
}

impl<C: Scalar> Mul for &PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn mul(self, rhs: Self) -> PuiseuxSeries<C> {
        PuiseuxSeries::mul(self, rhs)
    }
}

impl<C: Scalar> Neg for &PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn neg(self) -> PuiseuxSeries<C> {
        PuiseuxSeries::neg(self)
    }
}

impl Comparison {
    /// Maps to `Ordering` when the comparison was decided.
    pub fn ordering(&self) -> Option<Ordering> {
        match self {
            Comparison::Less => Some(Ordering::Less),
            Comparison::Greater => Some(Ordering::Greater),
            Comparison::EqualThrough(_) => None,
        }
    }
}
