use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, MutexGuard};

use crate::error::{Error, Result};
use crate::text::{self, TermWriter};
use crate::Scalar;

/// Coefficient rule: receives the index to produce and the already computed
/// prefix of the same series.
type Rule<C> = dyn Fn(usize, &[C]) -> C + Send + Sync;

struct Node<C> {
    memo: Mutex<Vec<C>>,
    rule: Box<Rule<C>>,
    /// All coefficients past this index are zero.
    degree_bound: Option<usize>,
}

/// A lazily evaluated univariate formal power series `Σ a_n z^n`.
///
/// Coefficients are produced on demand, in index order, and memoized.
/// Handles are cheap to clone and share the memo. A rule holds its own
/// series' lock while it runs and only ever locks series it was built
/// from, so lock acquisition follows the construction DAG and concurrent
/// requests cannot deadlock.
pub struct SeriesU<C> {
    node: Arc<Node<C>>,
}

impl<C> Clone for SeriesU<C> {
    fn clone(&self) -> Self {
        SeriesU {
            node: Arc::clone(&self.node),
        }
    }
}

impl<C: Scalar> fmt::Debug for SeriesU<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesU")
            .field("known", &*self.memo())
            .field("degree_bound", &self.node.degree_bound)
            .finish()
    }
}

impl<C: Scalar> SeriesU<C> {
    /// Series from a general recursive rule.
    pub fn from_rule<F>(degree_bound: Option<usize>, rule: F) -> Self
    where
        F: Fn(usize, &[C]) -> C + Send + Sync + 'static,
    {
        SeriesU {
            node: Arc::new(Node {
                memo: Mutex::new(Vec::new()),
                rule: Box::new(rule),
                degree_bound,
            }),
        }
    }

    /// Series whose `n`-th coefficient is `f(n)`.
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(usize) -> C + Send + Sync + 'static,
    {
        Self::from_rule(None, move |n, _| f(n))
    }

    /// Series where each coefficient may depend on the earlier ones.
    pub fn recursive<F>(f: F) -> Self
    where
        F: Fn(usize, &[C]) -> C + Send + Sync + 'static,
    {
        Self::from_rule(None, f)
    }

    /// Finite series `Σ coeffs[i] z^i`.
    pub fn polynomial(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let bound = coeffs.len().saturating_sub(1);
        Self::from_rule(Some(bound), move |n, _| {
            coeffs.get(n).cloned().unwrap_or_else(C::zero)
        })
    }

    pub fn zero() -> Self {
        Self::polynomial(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::polynomial(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::polynomial(coeffs)
    }

    /// The series `z`.
    pub fn variable() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `Σ_{n≥0} z^n`.
    pub fn geometric() -> Self {
        Self::from_fn(|_| C::one())
    }

    /// `Σ_{n≥0} z^n / n!`.
    pub fn exponential() -> Self {
        Self::recursive(|n, prev| {
            if n == 0 {
                C::one()
            } else {
                prev[n - 1].clone() / C::from_int(n as i64)
            }
        })
    }

    /// `Σ_{n≥1} (n-1)! z^n`, the formal solution of `F = z^2 F' + z`.
    pub fn factorial() -> Self {
        Self::recursive(|n, prev| match n {
            0 => C::zero(),
            1 => C::one(),
            _ => prev[n - 1].clone() * C::from_int(n as i64 - 1),
        })
    }

    fn memo(&self) -> MutexGuard<'_, Vec<C>> {
        self.node.memo.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn ensure<'a>(&'a self, memo: &mut MutexGuard<'a, Vec<C>>, len: usize) {
        while memo.len() < len {
            let k = memo.len();
            let c = (self.node.rule)(k, memo.as_slice());
            memo.push(c);
        }
    }

    /// Coefficient of `z^n`.
    pub fn coeff(&self, n: usize) -> C {
        if self.node.degree_bound.is_some_and(|b| n > b) {
            return C::zero();
        }
        let mut memo = self.memo();
        self.ensure(&mut memo, n + 1);
        memo[n].clone()
    }

    /// The first `len` coefficients.
    pub fn prefix(&self, len: usize) -> Vec<C> {
        self.with_prefix(len, |p| p.to_vec())
    }

    /// Runs `f` on the first `len` coefficients without cloning them.
    ///
    /// `f` must not request coefficients of this same series.
    pub fn with_prefix<R>(&self, len: usize, f: impl FnOnce(&[C]) -> R) -> R {
        let computed = match self.node.degree_bound {
            Some(b) => len.min(b + 1),
            None => len,
        };
        let mut memo = self.memo();
        self.ensure(&mut memo, computed);
        if computed == len {
            f(&memo[..len])
        } else {
            let mut padded = memo[..computed].to_vec();
            padded.resize(len, C::zero());
            f(&padded)
        }
    }

    /// Number of coefficients already computed and cached.
    pub fn known_order(&self) -> usize {
        self.memo().len()
    }

    /// Index past which every coefficient is known to vanish.
    pub fn degree_bound(&self) -> Option<usize> {
        self.node.degree_bound
    }

    /// True when the series is certifiably the zero series.
    pub fn is_exactly_zero(&self) -> bool {
        match self.node.degree_bound {
            Some(b) => (0..=b).all(|n| self.coeff(n).is_zero()),
            None => false,
        }
    }

    /// First index below `len` where the two series differ.
    pub fn first_difference(&self, other: &Self, len: usize) -> Option<usize> {
        (0..len).find(|&n| self.coeff(n) != other.coeff(n))
    }

    pub fn agrees_through(&self, other: &Self, len: usize) -> bool {
        self.first_difference(other, len).is_none()
    }

    pub fn neg(&self) -> Self {
        let a = self.clone();
        Self::from_rule(self.degree_bound(), move |n, _| -a.coeff(n))
    }

    pub fn scale(&self, c: C) -> Self {
        let a = self.clone();
        Self::from_rule(self.degree_bound(), move |n, _| c.clone() * a.coeff(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let bound = max_bound(self.degree_bound(), other.degree_bound());
        Self::from_rule(bound, move |n, _| a.coeff(n) + b.coeff(n))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let bound = max_bound(self.degree_bound(), other.degree_bound());
        Self::from_rule(bound, move |n, _| a.coeff(n) - b.coeff(n))
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_exactly_zero() || other.is_exactly_zero() {
            return Self::zero();
        }
        let (a, b) = (self.clone(), other.clone());
        let bound = match (self.degree_bound(), other.degree_bound()) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        Self::from_rule(bound, move |n, _| cauchy_coeff(&a, &b, n))
    }

    /// Formal derivative `d/dz`.
    pub fn derive(&self) -> Self {
        let a = self.clone();
        let bound = self.degree_bound().map(|b| b.saturating_sub(1));
        Self::from_rule(bound, move |n, _| {
            C::from_int(n as i64 + 1) * a.coeff(n + 1)
        })
    }

    /// Multiplication by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        let a = self.clone();
        Self::from_rule(self.degree_bound().map(|b| b + k), move |n, _| {
            if n < k {
                C::zero()
            } else {
                a.coeff(n - k)
            }
        })
    }

    /// Substitution `z -> z^factor`.
    pub fn spread(&self, factor: usize) -> Self {
        assert!(factor > 0, "spread factor must be positive");
        if factor == 1 {
            return self.clone();
        }
        let a = self.clone();
        Self::from_rule(self.degree_bound().map(|b| b * factor), move |n, _| {
            if n % factor == 0 {
                a.coeff(n / factor)
            } else {
                C::zero()
            }
        })
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Composition `self ∘ inner`; requires `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::CompositionUndefined);
        }
        let outer = self.clone();
        let q = inner.clone();
        let bound = match (self.degree_bound(), inner.degree_bound()) {
            (Some(x), Some(y)) => Some(x * y),
            _ => None,
        };
        // powers[k] = inner^k, extended on demand
        let powers: Mutex<Vec<SeriesU<C>>> = Mutex::new(vec![Self::one()]);
        Ok(Self::from_rule(bound, move |n, _| {
            let top = outer.degree_bound().map_or(n, |b| b.min(n));
            let mut powers = powers.lock().unwrap_or_else(|e| e.into_inner());
            while powers.len() <= top {
                let next = powers.last().unwrap().mul(&q);
                powers.push(next);
            }
            let mut acc = C::zero();
            for (k, power) in powers.iter().enumerate().take(top + 1) {
                let pk = outer.coeff(k);
                if !pk.is_zero() {
                    acc = acc + pk * power.coeff(n);
                }
            }
            acc
        }))
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert_unit(&self) -> Result<Self> {
        let lead = self.coeff(0);
        if lead.is_zero() {
            return Err(Error::NonUnit);
        }
        let p = self.clone();
        let inv_lead = C::one() / lead;
        let bound = p.degree_bound();
        if bound == Some(0) {
            return Ok(Self::constant(inv_lead));
        }
        Ok(Self::recursive(move |n, prev| {
            if n == 0 {
                return inv_lead.clone();
            }
            let top = bound.map_or(n, |b| b.min(n));
            let mut acc = C::zero();
            for k in 1..=top {
                let pk = p.coeff(k);
                if !pk.is_zero() {
                    acc = acc + pk * prev[n - k].clone();
                }
            }
            -(acc * inv_lead.clone())
        }))
    }

    /// `self / other` for a unit denominator.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert_unit()?))
    }

    /// Text rendering through `z^(order-1)` with an `O(z^order)` tail.
    ///
    /// A certifiably zero series renders as `0`; exactly finite series whose
    /// support ends before `order` omit the tail.
    pub fn render(&self, var: &str, order: usize) -> String {
        let mut w = TermWriter::new();
        for n in 0..order {
            w.term(&self.coeff(n), &text::power(var, n));
        }
        if self.degree_bound().is_none_or(|b| b >= order) {
            w.tail(&format!("O({})", text::power(var, order.max(1))));
        }
        w.finish()
    }
}

fn max_bound(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a?.max(b?))
}

fn cauchy_coeff<C: Scalar>(a: &SeriesU<C>, b: &SeriesU<C>, n: usize) -> C {
    let mut acc = C::zero();
    match (a.degree_bound(), b.degree_bound()) {
        (_, Some(db)) if db < n => {
            for k in 0..=db {
                let bk = b.coeff(k);
                if !bk.is_zero() {
                    acc = acc + a.coeff(n - k) * bk;
                }
            }
        }
        (Some(da), _) if da < n => {
            for k in 0..=da {
                let ak = a.coeff(k);
                if !ak.is_zero() {
                    acc = acc + ak * b.coeff(n - k);
                }
            }
        }
        _ => {
            let pa = a.prefix(n + 1);
            let pb = b.prefix(n + 1);
            for (k, ak) in pa.iter().enumerate() {
                if !ak.is_zero() && !pb[n - k].is_zero() {
                    acc = acc + ak.clone() * pb[n - k].clone();
                }
            }
        }
    }
    acc
}

impl<C: Scalar> Add for &SeriesU<C> {
    type Output = SeriesU<C>;
    fn add(self, rhs: Self) -> SeriesU<C> {
        SeriesU::add(self, rhs)
    }
}

impl<C: Scalar> Sub for &SeriesU<C> {
    type Output = SeriesU<C>;
    fn sub(self, rhs: Self) -> SeriesU<C> {
        SeriesU::sub(self, rhs)
    }
}

impl<C: Scalar> Mul for &SeriesU<C> {
    type Output = SeriesU<C>;
    fn mul(self, rhs: Self) -> SeriesU<C> {
        SeriesU::mul(self, rhs)
    }
}

impl<C: Scalar> Neg for &SeriesU<C> {
    type Output = SeriesU<C>;
    fn neg(self) -> SeriesU<C> {
        SeriesU::neg(self)
    }
}
