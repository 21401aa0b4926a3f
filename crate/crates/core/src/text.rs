//! Plain-text rendering shared by the series types.
//!
//! Terms are written in the syntax the command-line parser reads back:
//! `3*z^2`, `-1/2*t^(3/2)`, `x*y^2`.

use std::fmt::Write;

use crate::Scalar;

/// Accumulates `c*m` terms into a signed sum.
#[derive(Default)]
pub(crate) struct TermWriter {
    out: String,
}

impl TermWriter {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Appends `coeff * monomial`; an empty monomial is the constant term.
    pub(crate) fn term<C: Scalar>(&mut self, coeff: &C, monomial: &str) {
        if coeff.is_zero() {
            return;
        }
        let negative = coeff.is_negative();
        let magnitude = coeff.abs();
        if self.out.is_empty() {
            if negative {
                self.out.push('-');
            }
        } else if negative {
            self.out.push_str(" - ");
        } else {
            self.out.push_str(" + ");
        }
        if monomial.is_empty() {
            let _ = write!(self.out, "{magnitude}");
        } else if magnitude.is_one() {
            self.out.push_str(monomial);
        } else {
            let _ = write!(self.out, "{magnitude}*{monomial}");
        }
    }

    /// Appends a raw `+ tail` such as an `O(z^5)` marker.
    pub(crate) fn tail(&mut self, tail: &str) {
        if !self.out.is_empty() {
            self.out.push_str(" + ");
        }
        self.out.push_str(tail);
    }

    pub(crate) fn finish(self) -> String {
        if self.out.is_empty() {
            "0".to_string()
        } else {
            self.out
        }
    }
}

/// `z`, `z^3`, or the empty string for exponent zero.
pub(crate) fn power(var: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{exp}"),
    }
}

/// Product of powers, e.g. `x^2*y`.
pub(crate) fn monomial(vars: &[&str], exps: &[u32]) -> String {
    exps.iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| power(v, *e as usize))
        .collect::<Vec<_>>()
        .join("*")
}
