//! Coefficient domain abstraction.
//!
//! Every series type is generic over a [`Scalar`]. Exact work uses
//! [`Rational`](crate::Rational); `f64` is accepted for quick numerical
//! experiments, with the usual rounding caveats.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// An ordered field element usable as a series coefficient.
pub trait Scalar:
    Num + Signed + PartialOrd + FromPrimitive + Clone + Debug + Display + Send + Sync + 'static
{
    /// Embeds a machine integer.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer not representable in scalar type")
    }
}

impl<T> Scalar for T where
    T: Num + Signed + PartialOrd + FromPrimitive + Clone + Debug + Display + Send + Sync + 'static
{
}

/// Binomial coefficient `C(n, k)` built by the multiplicative formula.
pub fn binomial<C: Scalar>(n: u64, k: u64) -> C {
    if k > n {
        return C::zero();
    }
    let k = k.min(n - k);
    let mut acc = C::one();
    for i in 0..k {
        acc = acc * C::from_u64(n - i).unwrap() / C::from_u64(i + 1).unwrap();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn binomials() {
        assert_eq!(binomial::<Rational>(5, 2), Rational::from_i64(10));
        assert_eq!(
            binomial::<Rational>(30, 15),
            Rational::from_i64(155_117_520)
        );
        assert_eq!(binomial::<Rational>(3, 4), Rational::from_i64(0));
        assert_eq!(binomial::<f64>(6, 3), 20.0);
    }
}
