//! Exact term-test certificates: a witness `n` with `|a_n|·rⁿ > M` shows
//! the terms of `Σ a_n zⁿ` are not bounded by `M` at `|z| = r`; witnesses
//! for every `M` mean divergence there.
//!
//! Scans compare `|p|·uⁿ·w` against `m·q·vⁿ` in the integers, for
//! `a_n = p/q`, `r = u/v` and `M = m/w`, so no rational is normalized until
//! a witness is found.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fps::SeriesU;
use crate::Rational;

/// `|a_n|·rⁿ > M`, with the exact value of the left side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceCertificate {
    pub r: Rational,
    #[serde(rename = "M")]
    pub m: Rational,
    pub n: usize,
    /// `|a_n|·rⁿ`.
    pub witness: Rational,
}

impl DivergenceCertificate {
    /// Rechecks `witness > M` on its own.
    pub fn is_consistent(&self) -> bool {
        self.witness > self.m && self.r.is_positive() && self.m.is_positive()
    }

    /// Recomputes the witness from `s` and rechecks the inequality.
    pub fn validate(&self, s: &SeriesU<Rational>) -> bool {
        let Ok(value) = term_magnitude(s, &self.r, self.n) else {
            return false;
        };
        value == self.witness && self.is_consistent()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Divergence {
    Certified(DivergenceCertificate),
    /// No index up to and including `nmax` exceeds the bound.
    NotFound {
        nmax: usize,
    },
}

impl Divergence {
    pub fn certificate(&self) -> Option<&DivergenceCertificate> {
        match self {
            Divergence::Certified(c) => Some(c),
            Divergence::NotFound { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decay {
    Pass,
    /// First index in range with `|a_n|·rⁿ > M`.
    Fail {
        n: usize,
        value: Rational,
    },
}

fn require_positive(name: &str, x: &Rational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive, got {x}"
        )))
    }
}

/// `|a_n|·rⁿ`, exactly.
pub fn term_magnitude(s: &SeriesU<Rational>, r: &Rational, n: usize) -> Result<Rational> {
    require_positive("r", r)?;
    let a = s.coeff(n);
    if a.is_zero() {
        return Ok(Rational::zero());
    }
    let exp =
        i32::try_from(n).map_err(|_| Error::InvalidArgument(format!("index {n} too large")))?;
    Ok(a.abs() * r.pow(exp))
}

/// Walks `n = from..=to`, stopping at the first `|a_n|·rⁿ > M`.
fn scan(
    s: &SeriesU<Rational>,
    r: &Rational,
    m: &Rational,
    from: usize,
    to: usize,
) -> Result<Option<usize>> {
    require_positive("r", r)?;
    if m.is_negative() {
        // every magnitude exceeds a negative bound
        return Ok((from <= to).then_some(from));
    }
    let (u, v) = (r.numer(), r.denom());
    let (mn, mw) = (m.numer(), m.denom());
    let exp = u32::try_from(from)
        .map_err(|_| Error::InvalidArgument(format!("index {from} too large")))?;
    let mut un = num_traits::pow(u.clone(), exp as usize);
    let mut vn = num_traits::pow(v.clone(), exp as usize);
    let unit_u = u.is_one();
    let unit_v = v.is_one();
    for n in from..=to {
        let a = s.coeff(n);
        if !a.is_zero() {
            let lhs: BigInt = a.numer().abs() * &un * mw;
            let rhs: BigInt = mn * a.denom() * &vn;
            if lhs > rhs {
                return Ok(Some(n));
            }
        }
        if !unit_u {
            un *= u;
        }
        if !unit_v {
            vn *= v;
        }
    }
    Ok(None)
}

/// Least `n ≤ nmax` with `|a_n|·rⁿ > M`.
pub fn certify_divergence(
    s: &SeriesU<Rational>,
    r: &Rational,
    m: &Rational,
    nmax: usize,
) -> Result<Divergence> {
    require_positive("M", m)?;
    Ok(match scan(s, r, m, 0, nmax)? {
        Some(n) => Divergence::Certified(DivergenceCertificate {
            r: r.clone(),
            m: m.clone(),
            n,
            witness: term_magnitude(s, r, n)?,
        }),
        None => Divergence::NotFound { nmax },
    })
}

/// Checks `|a_n|·rⁿ ≤ M` for every `n` in `from..=to`.
pub fn certify_term_decay(
    s: &SeriesU<Rational>,
    r: &Rational,
    m: &Rational,
    from: usize,
    to: usize,
) -> Result<Decay> {
    if from > to {
        return Err(Error::InvalidArgument(format!("empty range {from}..={to}")));
    }
    Ok(match scan(s, r, m, from, to)? {
        Some(n) => Decay::Fail {
            n,
            value: term_magnitude(s, r, n)?,
        },
        None => Decay::Pass,
    })
}
