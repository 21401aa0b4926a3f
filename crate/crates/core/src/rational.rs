//! Exact arbitrary-precision rationals.
//!
//! Stored in lowest terms with a positive denominator. The arithmetic is
//! written against [`BigInt`] directly so that integer-valued operands (the
//! common case for factorial-sized coefficients) never pay for a gcd, and
//! the gcd itself reduces by remainders before touching large operands.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number `num / den` with `den > 0` and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

/// Greatest common divisor of `|a|` and `|b|`.
///
/// Euclid's algorithm on remainders; falls back to machine words once both
/// operands fit.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.abs();
    let mut y = b.abs();
    if x.is_one() || y.is_one() {
        return BigInt::one();
    }
    loop {
        if y.is_zero() {
            return x;
        }
        if let (Some(p), Some(q)) = (x.to_u64(), y.to_u64()) {
            return BigInt::from(p.gcd(&q));
        }
        let r = &x % &y;
        x = y;
        y = r;
    }
}

impl Rational {
    /// Builds `num / den`, reducing to lowest terms.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "rational with zero denominator");
        let mut r = Rational { num, den };
        r.normalize();
        r
    }

    /// Fallible variant of [`Rational::new`].
    pub fn checked_new(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Self::new(num, den))
        }
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational {
            num: n,
            den: BigInt::one(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.num, self.den)
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let (num, den) = if self.num.is_negative() {
            (-self.den.clone(), -self.num.clone())
        } else {
            (self.den.clone(), self.num.clone())
        };
        Some(Rational { num, den })
    }

    /// Integer power; negative exponents invert. Panics on `0^-k`.
    pub fn pow(&self, exp: i32) -> Self {
        let e = exp.unsigned_abs();
        let r = Rational {
            num: num_traits::pow(self.num.clone(), e as usize),
            den: num_traits::pow(self.den.clone(), e as usize),
        };
        if exp < 0 {
            r.recip().expect("zero raised to a negative power")
        } else {
            r
        }
    }

    /// Nearest `f64`, for display and diagnostics only.
    pub fn to_f64_lossy(&self) -> f64 {
        match (self.num.to_f64(), self.den.to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                // scale down both sides until they fit
                let shift = self.num.bits().max(self.den.bits()).saturating_sub(1000);
                let n = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
                let d = (&self.den >> shift).to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.num = -std::mem::take(&mut self.num);
            self.den = -std::mem::take(&mut self.den);
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num /= &g;
            self.den /= &g;
        }
    }

    fn add_ref(&self, rhs: &Rational) -> Rational {
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Rational::new(&self.num + &rhs.num, self.den.clone());
        }
        Rational::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }

    fn sub_ref(&self, rhs: &Rational) -> Rational {
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num - &rhs.num);
        }
        if self.den == rhs.den {
            return Rational::new(&self.num - &rhs.num, self.den.clone());
        }
        Rational::new(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }

    fn mul_ref(&self, rhs: &Rational) -> Rational {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Rational::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num * &rhs.num);
        }
        // cross-reduce so the product is already in lowest terms
        let g1 = if rhs.den.is_one() {
            BigInt::one()
        } else {
            gcd(&self.num, &rhs.den)
        };
        let g2 = if self.den.is_one() {
            BigInt::one()
        } else {
            gcd(&rhs.num, &self.den)
        };
        let num = (&self.num / &g1) * (&rhs.num / &g2);
        let den = (&self.den / &g2) * (&rhs.den / &g1);
        Rational { num, den }
    }

    fn div_ref(&self, rhs: &Rational) -> Rational {
        let inv = rhs.recip().expect("rational division by zero");
        self.mul_ref(&inv)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p`, `p/q` and finite decimals such as `-0.125` or `1e-6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let invalid = || ParseRationalError::Invalid(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let num = BigInt::from_str(n.trim()).map_err(|_| invalid())?;
            let den = BigInt::from_str(d.trim()).map_err(|_| invalid())?;
            return Rational::checked_new(num, den)
                .ok_or_else(|| ParseRationalError::ZeroDenominator(s.to_string()));
        }
        let (mantissa, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| invalid())?),
            None => (s, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(invalid());
        }
        if !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(invalid());
        }
        let digits = format!("{int_part}{frac_part}");
        let digits = if digits == "-" || digits == "+" || digits.is_empty() {
            return Err(invalid());
        } else {
            digits
        };
        let num = BigInt::from_str(&digits).map_err(|_| invalid())?;
        let scale = exp - frac_part.len() as i32;
        Ok(Rational::from_integer(num) * Rational::from_i64(10).pow(scale))
    }
}

/// JSON form: `{"num": "<decimal>", "den": "<decimal>"}`.
#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.num.to_string(),
            den: self.den.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = RationalRepr::deserialize(deserializer)?;
        let num = BigInt::from_str(&repr.num).map_err(D::Error::custom)?;
        let den = BigInt::from_str(&repr.den).map_err(D::Error::custom)?;
        Rational::checked_new(num, den).ok_or_else(|| D::Error::custom("zero denominator"))
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $imp:ident, $Assign:ident, $assign:ident) => {
        impl $Trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl<'a> $Trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl<'a> $Trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl<'a, 'b> $Trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $Assign<Rational> for Rational {
            fn $assign(&mut self, rhs: Rational) {
                *self = self.$imp(&rhs);
            }
        }
        impl<'a> $Assign<&'a Rational> for Rational {
            fn $assign(&mut self, rhs: &'a Rational) {
                *self = self.$imp(rhs);
            }
        }
    };
}

forward_binop!(Add, add, add_ref, AddAssign, add_assign);
forward_binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
forward_binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
forward_binop!(Div, div, div_ref, DivAssign, div_assign);

impl Rem for Rational {
    type Output = Rational;
    /// Truncated remainder `a - b * trunc(a / b)`.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn rem(self, rhs: Rational) -> Rational {
        let q = self.div_ref(&rhs);
        let trunc = Rational::from_integer(&q.num / &q.den);
        self.sub_ref(&trunc.mul_ref(&rhs))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::from_integer(BigInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::from_integer(BigInt::one())
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Num for Rational {
    type FromStrRadixErr = ParseRationalError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix == 10 {
            return s.parse();
        }
        let invalid = || ParseRationalError::Invalid(s.to_string());
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let num = BigInt::from_str_radix(n, radix).map_err(|_| invalid())?;
        let den = BigInt::from_str_radix(d, radix).map_err(|_| invalid())?;
        Rational::checked_new(num, den).ok_or_else(|| ParseRationalError::ZeroDenominator(s.into()))
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Rational::zero()
        } else {
            self - other
        }
    }
    fn signum(&self) -> Self {
        match self.num.sign() {
            Sign::Minus => -Rational::one(),
            Sign::NoSign => Rational::zero(),
            Sign::Plus => Rational::one(),
        }
    }
    fn is_positive(&self) -> bool {
        self.num.sign() == Sign::Plus
    }
    fn is_negative(&self) -> bool {
        self.num.sign() == Sign::Minus
    }
}

impl FromPrimitive for Rational {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Rational::from_i64(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Rational::from_integer(BigInt::from(n)))
    }
    fn from_i128(n: i128) -> Option<Self> {
        Some(Rational::from_integer(BigInt::from(n)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_i64(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(q(0, -7).denom(), &BigInt::one());
    }

    #[test]
    fn field_operations() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2) - q(1, 3), q(1, 6));
        assert_eq!(q(2, 3) * q(9, 4), q(3, 2));
        assert_eq!(q(2, 3) / q(4, 9), q(3, 2));
        assert_eq!(-q(2, 3), q(-2, 3));
        assert_eq!(q(7, 2) % q(1, 1), q(1, 2));
        assert_eq!(q(-2, 3).recip(), Some(q(-3, 2)));
        assert_eq!(Rational::zero().recip(), None);
        assert_eq!(q(2, 3).pow(-2), q(9, 4));
    }

    #[test]
    fn ordering_and_sign() {
        assert!(q(1, 3) < q(1, 2));
        assert!(q(-1, 2) < q(-1, 3));
        assert!(q(-5, 3).is_negative());
        assert_eq!(q(-5, 3).abs(), q(5, 3));
    }

    #[test]
    fn gcd_handles_huge_against_small() {
        let big = num_traits::pow(BigInt::from(10), 5000) * BigInt::from(3);
        assert_eq!(gcd(&big, &BigInt::from(9)), BigInt::from(3));
        assert_eq!(gcd(&big, &BigInt::one()), BigInt::one());
        assert_eq!(gcd(&BigInt::zero(), &BigInt::from(-4)), BigInt::from(4));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/-6".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("-0.125".parse::<Rational>().unwrap(), q(-1, 8));
        assert_eq!("1e-6".parse::<Rational>().unwrap(), q(1, 1_000_000));
        assert_eq!("1000000".parse::<Rational>().unwrap(), q(1_000_000, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!(".".parse::<Rational>().is_err());
    }

    #[test]
    fn json_uses_decimal_strings() {
        let s = serde_json::to_string(&q(-3, 12)).unwrap();
        assert_eq!(s, r#"{"num":"-1","den":"4"}"#);
        let back: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q(-1, 4));
    }

    #[test]
    fn display() {
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(q(-1, 3).to_string(), "-1/3");
    }
}
