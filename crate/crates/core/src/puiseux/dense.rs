use super::{Exponent, PuiseuxSeries};
use crate::fps::SeriesU;
use crate::Scalar;

/// Truncated arithmetic on the lattice `t^{k/ram}`, `0 <= k < len`.
///
/// Used by the evaluation routines, where every operand has nonnegative
/// valuation and the result is only wanted below a fixed exponent.
#[derive(Clone, Debug)]
pub(crate) struct Dense<C> {
    pub(crate) ram: u32,
    pub(crate) coeffs: Vec<C>,
}

/// Number of lattice slots `k` with `k / ram < bound`.
pub(crate) fn slots(bound: Exponent, ram: u32) -> usize {
    let scaled = bound * Exponent::from_integer(ram as i64);
    scaled.ceil().to_integer().max(0) as usize
}

impl<C: Scalar> Dense<C> {
    pub(crate) fn zero(ram: u32, len: usize) -> Self {
        Dense {
            ram,
            coeffs: vec![C::zero(); len],
        }
    }

    pub(crate) fn constant(ram: u32, len: usize, c: C) -> Self {
        let mut d = Self::zero(ram, len);
        if len > 0 {
            d.coeffs[0] = c;
        }
        d
    }

    pub(crate) fn from_series(x: &PuiseuxSeries<C>, ram: u32, len: usize) -> Self {
        Dense {
            ram,
            coeffs: x.dense(ram, len),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = a.clone() + b.clone();
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Self, c: &C) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = a.clone() + b.clone() * c.clone();
            }
        }
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Dense {
            ram: self.ram,
            coeffs,
        }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        let len = self.coeffs.len();
        let mut out = Self::zero(self.ram, len);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub(crate) fn into_series(self, precision: Exponent) -> PuiseuxSeries<C> {
        let ram = self.ram;
        PuiseuxSeries::from_parts(ram, 0, SeriesU::polynomial(self.coeffs))
            .expect("positive ramification")
            .with_precision(precision)
    }
}

/// Least common ramification of the given elements.
pub(crate) fn common_ramification<'a, C: Scalar + 'a>(
    xs: impl IntoIterator<Item = &'a PuiseuxSeries<C>>,
) -> u32 {
    xs.into_iter()
        .filter(|x| !x.is_zero_marker())
        .fold(1u32, |acc, x| num_integer::lcm(acc, x.ramification()))
}
