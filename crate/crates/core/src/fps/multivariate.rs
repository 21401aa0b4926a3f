use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fps::SeriesU;
use crate::scalar::binomial;
use crate::text::{self, TermWriter};
use crate::Scalar;

/// Exponent vector `α ∈ ℕⁿ`.
pub type Monomial = Vec<u32>;

/// Nonzero coefficients of one total-degree slice.
pub type Slice<C> = BTreeMap<Monomial, C>;

type SliceRule<C> = dyn Fn(usize) -> Slice<C> + Send + Sync;

struct Node<C> {
    arity: usize,
    memo: Mutex<Vec<Arc<Slice<C>>>>,
    rule: Box<SliceRule<C>>,
    degree_bound: Option<usize>,
}

/// A lazily evaluated formal power series in `arity` variables.
///
/// Coefficients are organized by total degree; slice `d` holds every
/// monomial of degree `d` with a nonzero coefficient. Slices are computed
/// in order and memoized.
pub struct SeriesM<C> {
    node: Arc<Node<C>>,
}

impl<C> Clone for SeriesM<C> {
    fn clone(&self) -> Self {
        SeriesM {
            node: Arc::clone(&self.node),
        }
    }
}

impl<C: Scalar> fmt::Debug for SeriesM<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesM")
            .field("arity", &self.node.arity)
            .field("degree_bound", &self.node.degree_bound)
            .finish_non_exhaustive()
    }
}

fn insert_nonzero<C: Scalar>(slice: &mut Slice<C>, m: Monomial, c: C) {
    if c.is_zero() {
        return;
    }
    match slice.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl<C: Scalar> SeriesM<C> {
    /// Series from a slice rule; `rule(d)` must only return monomials of
    /// total degree `d` and length `arity`.
    pub fn from_slices<F>(arity: usize, degree_bound: Option<usize>, rule: F) -> Self
    where
        F: Fn(usize) -> Slice<C> + Send + Sync + 'static,
    {
        assert!(arity > 0, "arity must be positive");
        SeriesM {
            node: Arc::new(Node {
                arity,
                memo: Mutex::new(Vec::new()),
                rule: Box::new(rule),
                degree_bound,
            }),
        }
    }

    /// Finite series from `(monomial, coefficient)` pairs.
    pub fn polynomial<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut by_degree: Vec<Slice<C>> = Vec::new();
        for (m, c) in terms {
            if m.len() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: m.len(),
                });
            }
            let d = m.iter().map(|&e| e as usize).sum::<usize>();
            if by_degree.len() <= d {
                by_degree.resize_with(d + 1, Slice::new);
            }
            insert_nonzero(&mut by_degree[d], m, c);
        }
        while by_degree.last().is_some_and(|s| s.is_empty()) {
            by_degree.pop();
        }
        let bound = by_degree.len().saturating_sub(1);
        Ok(Self::from_slices(arity, Some(bound), move |d| {
            by_degree.get(d).cloned().unwrap_or_default()
        }))
    }

    pub fn zero(arity: usize) -> Self {
        Self::polynomial(arity, std::iter::empty()).unwrap()
    }

    pub fn constant(arity: usize, c: C) -> Self {
        Self::polynomial(arity, [(vec![0; arity], c)]).unwrap()
    }

    /// The coordinate function `ξ_index` (zero-based).
    pub fn variable(arity: usize, index: usize) -> Result<Self> {
        if index >= arity {
            return Err(Error::VariableOutOfRange { index, arity });
        }
        let mut m = vec![0; arity];
        m[index] = 1;
        Self::polynomial(arity, [(m, C::one())])
    }

    /// Embeds `p(ξ_var)` into `arity` variables.
    pub fn from_univariate(p: &SeriesU<C>, arity: usize, var: usize) -> Result<Self> {
        if var >= arity {
            return Err(Error::VariableOutOfRange { index: var, arity });
        }
        let p = p.clone();
        Ok(Self::from_slices(arity, p.degree_bound(), move |d| {
            let mut slice = Slice::new();
            let mut m = vec![0; arity];
            m[var] = d as u32;
            insert_nonzero(&mut slice, m, p.coeff(d));
            slice
        }))
    }

    pub fn arity(&self) -> usize {
        self.node.arity
    }

    pub fn degree_bound(&self) -> Option<usize> {
        self.node.degree_bound
    }

    /// Nonzero coefficients of total degree `d`.
    pub fn slice(&self, d: usize) -> Arc<Slice<C>> {
        if self.node.degree_bound.is_some_and(|b| d > b) {
            return Arc::new(Slice::new());
        }
        let mut memo = self.node.memo.lock().unwrap_or_else(|e| e.into_inner());
        while memo.len() <= d {
            let k = memo.len();
            let s = (self.node.rule)(k);
            memo.push(Arc::new(s));
        }
        Arc::clone(&memo[d])
    }

    /// Coefficient of `ξ^α`; zero for a wrong-length exponent vector.
    pub fn coeff(&self, alpha: &[u32]) -> C {
        if alpha.len() != self.arity() {
            return C::zero();
        }
        let d = alpha.iter().map(|&e| e as usize).sum();
        self.slice(d).get(alpha).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_exactly_zero(&self) -> bool {
        match self.degree_bound() {
            Some(b) => (0..=b).all(|d| self.slice(d).is_empty()),
            None => false,
        }
    }

    /// First `(degree, monomial)` through total degree `max_degree` where the
    /// two series differ.
    pub fn first_difference(&self, other: &Self, max_degree: usize) -> Option<(usize, Monomial)> {
        for d in 0..=max_degree {
            let (a, b) = (self.slice(d), other.slice(d));
            if a != b {
                let m = a
                    .iter()
                    .chain(b.iter())
                    .map(|(m, _)| m)
                    .find(|m| a.get(*m) != b.get(*m))
                    .cloned()
                    .unwrap_or_default();
                return Some((d, m));
            }
        }
        None
    }

    pub fn agrees_through(&self, other: &Self, max_degree: usize) -> bool {
        self.first_difference(other, max_degree).is_none()
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity() != other.arity() {
            Err(Error::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let (a, b) = (self.clone(), other.clone());
        let bound = match (self.degree_bound(), other.degree_bound()) {
            (Some(x), Some(y)) => Some(x.max(y)),
            _ => None,
        };
        Ok(Self::from_slices(self.arity(), bound, move |d| {
            let mut out = (*a.slice(d)).clone();
            for (m, c) in b.slice(d).iter() {
                insert_nonzero(&mut out, m.clone(), c.clone());
            }
            out
        }))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-C::one())
    }

    pub fn scale(&self, c: C) -> Self {
        let a = self.clone();
        Self::from_slices(self.arity(), self.degree_bound(), move |d| {
            let mut out = Slice::new();
            for (m, v) in a.slice(d).iter() {
                insert_nonzero(&mut out, m.clone(), c.clone() * v.clone());
            }
            out
        })
    }

    /// Cauchy product over multi-indices.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let (a, b) = (self.clone(), other.clone());
        let bound = match (self.degree_bound(), other.degree_bound()) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        Ok(Self::from_slices(self.arity(), bound, move |d| {
            let mut out = Slice::new();
            for e in 0..=d {
                let (sa, sb) = (a.slice(e), b.slice(d - e));
                for (ma, ca) in sa.iter() {
                    for (mb, cb) in sb.iter() {
                        let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                        insert_nonzero(&mut out, m, ca.clone() * cb.clone());
                    }
                }
            }
            out
        }))
    }

    /// Formal partial derivative `∂/∂ξ_index` (zero-based).
    pub fn derive(&self, index: usize) -> Result<Self> {
        if index >= self.arity() {
            return Err(Error::VariableOutOfRange {
                index,
                arity: self.arity(),
            });
        }
        let a = self.clone();
        let bound = self.degree_bound().map(|b| b.saturating_sub(1));
        Ok(Self::from_slices(self.arity(), bound, move |d| {
            let mut out = Slice::new();
            for (m, c) in a.slice(d + 1).iter() {
                if m[index] > 0 {
                    let mut lowered = m.clone();
                    lowered[index] -= 1;
                    insert_nonzero(&mut out, lowered, C::from_int(m[index] as i64) * c.clone());
                }
            }
            out
        }))
    }

    /// Substitutes the constant `value` for variable `var`, dropping it.
    ///
    /// Needs a finite degree bound unless `value` is zero.
    pub fn specialize(&self, var: usize, value: C) -> Result<Self> {
        let arity = self.arity();
        if var >= arity {
            return Err(Error::VariableOutOfRange { index: var, arity });
        }
        if arity == 1 {
            return Err(Error::InvalidArgument(
                "cannot eliminate the only variable".into(),
            ));
        }
        let top = if value.is_zero() {
            None
        } else {
            Some(self.degree_bound().ok_or(Error::UnboundedSubstitution)?)
        };
        let a = self.clone();
        Ok(Self::from_slices(
            arity - 1,
            self.degree_bound(),
            move |d| {
                let mut out = Slice::new();
                let last = top.unwrap_or(d).max(d);
                for e in d..=last {
                    for (m, c) in a.slice(e).iter() {
                        let j = m[var];
                        if (e - j as usize) != d {
                            continue;
                        }
                        let mut rest = m.clone();
                        rest.remove(var);
                        let weight = num_traits::pow(value.clone(), j as usize);
                        insert_nonzero(&mut out, rest, c.clone() * weight);
                    }
                }
                out
            },
        ))
    }

    /// The arity-1 case as a univariate series.
    pub fn to_univariate(&self) -> Result<SeriesU<C>> {
        if self.arity() != 1 {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: 1,
            });
        }
        let a = self.clone();
        Ok(SeriesU::from_rule(self.degree_bound(), move |n, _| {
            a.coeff(&[n as u32])
        }))
    }

    /// Text rendering through total degree `order - 1`, slices in ascending
    /// degree and monomials in descending lexicographic order inside a slice.
    pub fn render(&self, vars: &[&str], order: usize) -> String {
        let mut w = TermWriter::new();
        for d in 0..order {
            for (m, c) in self.slice(d).iter().rev() {
                w.term(c, &text::monomial(vars, m));
            }
        }
        if self.degree_bound().is_none_or(|b| b >= order) {
            w.tail(&format!("O(deg {order})"));
        }
        w.finish()
    }
}

/// The bivariate series `(p(ξ + h) - p(ξ)) / h` in variables `(ξ, h)`.
///
/// Expanding `(ξ + h)^n - ξ^n` and dropping one power of `h` gives the
/// coefficient `p_{a+b+1} · C(a+b+1, b+1)` on `ξ^a h^b`; the division by `h`
/// is an exponent shift.
pub fn shift_quotient<C: Scalar>(p: &SeriesU<C>) -> SeriesM<C> {
    let p = p.clone();
    let bound = p.degree_bound().map(|b| b.saturating_sub(1));
    SeriesM::from_slices(2, bound, move |d| {
        let mut out = Slice::new();
        let lead = p.coeff(d + 1);
        if lead.is_zero() {
            return out;
        }
        for b in 0..=d {
            let c = lead.clone() * binomial::<C>(d as u64 + 1, b as u64 + 1);
            insert_nonzero(&mut out, vec![(d - b) as u32, b as u32], c);
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type M = SeriesM<Rational>;
    type S = SeriesU<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn poly2(terms: &[((u32, u32), i64)]) -> M {
        M::polynomial(2, terms.iter().map(|&((a, b), c)| (vec![a, b], q(c)))).unwrap()
    }

    #[test]
    fn arity_mismatch_rejected() {
        let a = M::constant(2, q(1));
        let b = M::constant(3, q(1));
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(M::polynomial(2, [(vec![1], q(1))]).is_err());
    }

    #[test]
    fn derivative_of_product_of_variables() {
        let x1x2 = poly2(&[((1, 1), 1)]);
        let d = x1x2.derive(0).unwrap();
        assert!(d.agrees_through(&M::variable(2, 1).unwrap(), 5));
        assert!(matches!(
            x1x2.derive(2),
            Err(Error::VariableOutOfRange { index: 2, arity: 2 })
        ));
    }

    #[test]
    fn product_matches_hand_expansion() {
        // (x + y)^2 = x^2 + 2xy + y^2
        let s = poly2(&[((1, 0), 1), ((0, 1), 1)]);
        let sq = s.checked_mul(&s).unwrap();
        assert!(sq.agrees_through(&poly2(&[((2, 0), 1), ((1, 1), 2), ((0, 2), 1)]), 4));
    }

    #[test]
    fn cancellation_removes_entries() {
        let a = poly2(&[((1, 0), 1), ((0, 1), 2)]);
        let diff = a.checked_sub(&a).unwrap();
        assert!(diff.is_exactly_zero());
    }

    #[test]
    fn shift_quotient_examples() {
        let sq2 = shift_quotient(&S::monomial(q(1), 2));
        assert!(sq2.agrees_through(&poly2(&[((1, 0), 2), ((0, 1), 1)]), 6));
        let sq3 = shift_quotient(&S::monomial(q(1), 3));
        assert!(sq3.agrees_through(&poly2(&[((2, 0), 3), ((1, 1), 3), ((0, 2), 1)]), 6));
    }

    #[test]
    fn shift_quotient_at_zero_step_is_derivative() {
        for p in [S::factorial(), S::exponential(), S::geometric()] {
            let at_zero = shift_quotient(&p).specialize(1, q(0)).unwrap();
            let at_zero = at_zero.to_univariate().unwrap();
            assert!(at_zero.agrees_through(&p.derive(), 25));
        }
    }

    #[test]
    fn specialize_requires_bound_for_nonzero_value() {
        let p = M::from_univariate(&S::geometric(), 2, 0).unwrap();
        assert_eq!(
            p.specialize(1, q(2)).unwrap_err(),
            Error::UnboundedSubstitution
        );
        let poly = poly2(&[((1, 2), 3), ((0, 1), 1)]);
        // 3 x y^2 + y at y = 2 -> 12 x + 2
        let s = poly.specialize(1, q(2)).unwrap().to_univariate().unwrap();
        assert!(s.agrees_through(&S::polynomial(vec![q(2), q(12)]), 5));
    }

    #[test]
    fn render_bivariate() {
        let p = poly2(&[((2, 0), 1), ((0, 2), -1), ((1, 1), 2)]);
        assert_eq!(p.render(&["x", "y"], 3), "x^2 + 2*x*y - y^2");
        let g = M::from_univariate(&S::geometric(), 2, 1).unwrap();
        assert_eq!(g.render(&["x", "y"], 2), "1 + y + O(deg 2)");
    }
}
