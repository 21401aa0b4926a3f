//! First-order linear equations `A·F' + B·F = C` with power-series
//! coefficients, solved coefficient by coefficient.
//!
//! Matching `zⁿ` on both sides gives
//!
//! ```text
//! Σ_k A_k (n-k+1) a_{n-k+1} + Σ_k B_k a_{n-k} = C_n
//! ```
//!
//! When `A(0) ≠ 0` this determines `a_{n+1}` from the earlier coefficients
//! and `a_0` must be supplied. When `A(0) = 0` and `B(0) ≠ 0` the newest
//! coefficient is `a_n`, with pivot `B(0) + n·A_1`; the solution is then
//! unique, provided that pivot never vanishes.

use std::fmt;

use crate::error::{Error, Result};
use crate::fps::SeriesU;
use crate::Scalar;

/// `A(z)·F'(z) + B(z)·F(z) = C(z)`.
pub struct LinearOde<C> {
    pub a: SeriesU<C>,
    pub b: SeriesU<C>,
    pub c: SeriesU<C>,
}

impl<C> Clone for LinearOde<C> {
    fn clone(&self) -> Self {
        LinearOde {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
        }
    }
}

impl<C: Scalar> fmt::Debug for LinearOde<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearOde")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("c", &self.c)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `A(0) = 0`, `B(0) ≠ 0`: the equation fixes every coefficient.
    Unique,
    /// `A(0) ≠ 0`: one free coefficient, `F(0)`.
    InitialValue,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Unique => "unique",
            Regime::InitialValue => "ivp",
        })
    }
}

pub struct FormalSolution<C> {
    pub series: SeriesU<C>,
    pub regime: Regime,
}

impl<C> Clone for FormalSolution<C> {
    fn clone(&self) -> Self {
        FormalSolution {
            series: self.series.clone(),
            regime: self.regime,
        }
    }
}

impl<C: Scalar> fmt::Debug for FormalSolution<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormalSolution")
            .field("series", &self.series)
            .field("regime", &self.regime)
            .finish()
    }
}

/// Outcome of comparing two candidate solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    /// Coefficients `0..n` agree.
    EqualThrough(usize),
    /// First index where the candidates differ.
    Differ(usize),
}

impl<C: Scalar> LinearOde<C> {
    pub fn new(a: SeriesU<C>, b: SeriesU<C>, c: SeriesU<C>) -> Self {
        LinearOde { a, b, c }
    }

    /// `F = z²F' + z`, stored as `z²·F' - F = -z`.
    pub fn flagship() -> Self {
        Self::new(
            SeriesU::monomial(C::one(), 2),
            SeriesU::constant(-C::one()),
            SeriesU::monomial(-C::one(), 1),
        )
    }

    pub fn regime(&self) -> Result<Regime> {
        if !self.a.coeff(0).is_zero() {
            Ok(Regime::InitialValue)
        } else if !self.b.coeff(0).is_zero() {
            Ok(Regime::Unique)
        } else {
            Err(Error::SingularEquation)
        }
    }

    /// The lazily computed formal solution.
    ///
    /// `initial` is `F(0)`; it is required exactly in the initial-value
    /// regime.
    pub fn solve(&self, initial: Option<C>) -> Result<FormalSolution<C>> {
        let regime = self.regime()?;
        let (a, b, c) = (self.a.clone(), self.b.clone(), self.c.clone());
        let series = match (regime, initial) {
            (Regime::Unique, Some(_)) => return Err(Error::UnexpectedInitialValue),
            (Regime::InitialValue, None) => return Err(Error::MissingInitialValue),
            (Regime::Unique, None) => {
                let b0 = b.coeff(0);
                let a1 = a.coeff(1);
                if let Some(index) = resonance(&b0, &a1) {
                    return Err(Error::ResonantEquation { index });
                }
                SeriesU::recursive(move |n, prev: &[C]| {
                    let mut rhs = c.coeff(n);
                    for k in 1..=bounded(n, b.degree_bound()) {
                        let bk = b.coeff(k);
                        if !bk.is_zero() {
                            rhs = rhs - bk * prev[n - k].clone();
                        }
                    }
                    for k in 2..=bounded(n, a.degree_bound()) {
                        let ak = a.coeff(k);
                        if !ak.is_zero() {
                            rhs = rhs
                                - ak * C::from_int((n - k + 1) as i64) * prev[n - k + 1].clone();
                        }
                    }
                    rhs / (b0.clone() + a1.clone() * C::from_int(n as i64))
                })
            }
            (Regime::InitialValue, Some(init)) => {
                let a0 = a.coeff(0);
                SeriesU::recursive(move |m, prev: &[C]| {
                    if m == 0 {
                        return init.clone();
                    }
                    // coefficient of z^n with n = m - 1 fixes a_m
                    let n = m - 1;
                    let mut rhs = c.coeff(n);
                    for k in 1..=bounded(n, a.degree_bound()) {
                        let ak = a.coeff(k);
                        if !ak.is_zero() {
                            rhs = rhs
                                - ak * C::from_int((n - k + 1) as i64) * prev[n - k + 1].clone();
                        }
                    }
                    for k in 0..=bounded(n, b.degree_bound()) {
                        let bk = b.coeff(k);
                        if !bk.is_zero() {
                            rhs = rhs - bk * prev[n - k].clone();
                        }
                    }
                    rhs / (a0.clone() * C::from_int(m as i64))
                })
            }
        };
        Ok(FormalSolution { series, regime })
    }

    /// `A·F' + B·F - C` as a lazy series.
    pub fn residual_series(&self, f: &SeriesU<C>) -> SeriesU<C> {
        self.a.mul(&f.derive()).add(&self.b.mul(f)).sub(&self.c)
    }

    /// The first `order` coefficients of `A·F' + B·F - C`.
    pub fn residual(&self, f: &SeriesU<C>, order: usize) -> Vec<C> {
        self.residual_series(f).prefix(order)
    }

    fn require_solution(&self, f: &SeriesU<C>, order: usize, which: &'static str) -> Result<()> {
        match self.residual(f, order).iter().position(|r| !r.is_zero()) {
            Some(index) => Err(Error::NonzeroResidual { which, index }),
            None => Ok(()),
        }
    }

    /// Checks that two candidate solutions of a uniquely solvable equation
    /// share their first `order` coefficients.
    ///
    /// Both candidates must satisfy the equation through `order`.
    pub fn taylor_uniqueness_witness(
        &self,
        f: &SeriesU<C>,
        g: &SeriesU<C>,
        order: usize,
    ) -> Result<Uniqueness> {
        if self.regime()? != Regime::Unique {
            return Err(Error::NotUniqueRegime);
        }
        self.require_solution(f, order, "F")?;
        self.require_solution(g, order, "G")?;
        Ok(match f.first_difference(g, order) {
            Some(i) => Uniqueness::Differ(i),
            None => Uniqueness::EqualThrough(order),
        })
    }
}

fn bounded(n: usize, degree_bound: Option<usize>) -> usize {
    degree_bound.map_or(n, |d| d.min(n))
}

/// Least `n ≥ 1` with `b0 + n·a1 = 0`, if any.
///
/// Uses only ordered-field operations: brackets `-b0/a1` between
/// consecutive integers by doubling and bisection.
fn resonance<C: Scalar>(b0: &C, a1: &C) -> Option<usize> {
    if a1.is_zero() {
        return None;
    }
    let r = -b0.clone() / a1.clone();
    let one = C::one();
    if r < one {
        return None;
    }
    let mut hi: i64 = 1;
    while C::from_int(hi) <= r {
        hi = hi.checked_mul(2)?;
    }
    // from_int(lo) <= r < from_int(hi)
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if C::from_int(mid) <= r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (C::from_int(lo) == r).then_some(lo as usize)
}
