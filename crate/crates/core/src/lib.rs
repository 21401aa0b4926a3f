//! Exact lazy power series, the Puiseux series field `R = ⋃ₙ ℝ((t^{1/n}))`
//! with `t` a positive infinitesimal, its algebraic closure `K = R(√-1)`,
//! and the machinery to replay the differential equation `F = z²F' + z`:
//! a formal solution `Σ (n-1)! zⁿ` that is K-differentiable on the
//! infinitesimal disc yet diverges at every nonzero standard radius.
//!
//! Every series type is generic over a [`Scalar`] coefficient domain. The
//! aliases below fix it to the exact [`Rational`] type, which is what all
//! certificates and checks in this crate are stated for.

pub mod complexified;
pub mod convergence;
pub mod error;
pub mod fps;
pub mod ode;
pub mod puiseux;
pub mod rational;
pub mod scalar;
mod text;

pub use error::{Error, Result};
pub use rational::Rational;
pub use scalar::Scalar;

/// Univariate series with exact rational coefficients.
pub type Series = fps::SeriesU<Rational>;
/// Multivariate series with exact rational coefficients.
pub type MSeries = fps::SeriesM<Rational>;
/// Element of the Puiseux field over the rationals.
pub type Puiseux = puiseux::PuiseuxSeries<Rational>;
/// Element of `K = R(√-1)` over the rationals.
pub type ComplexPuiseux = complexified::ComplexPuiseux<Rational>;
/// First-order linear equation with rational power-series coefficients.
pub type LinearOde = ode::LinearOde<Rational>;

/// Floating-point counterparts, for quick numerical experiments.
pub type SeriesF64 = fps::SeriesU<f64>;
pub type PuiseuxF64 = puiseux::PuiseuxSeries<f64>;
