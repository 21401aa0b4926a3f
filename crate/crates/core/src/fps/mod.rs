//! Exact lazy formal power series.
//!
//! [`SeriesU`] is the univariate case used for `ℝ[[ζ]]`; [`SeriesM`] is the
//! multivariate ring `ℝ[[ξ₁,…,ξₙ]]` stored by total-degree slices.

mod multivariate;
mod univariate;

pub use multivariate::{shift_quotient, Monomial, SeriesM, Slice};
pub use univariate::SeriesU;
