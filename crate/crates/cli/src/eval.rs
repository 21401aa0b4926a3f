//! Typing and evaluation of parsed expressions.
//!
//! Every expression lives in one context fixed by its variables: a series
//! in `z`, a series in `x, y`, or a Puiseux element in `t`. Rational
//! constants fit anywhere; mixing contexts is a type error.

use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use puiseux_core::puiseux::Exponent;
use puiseux_core::{LinearOde, MSeries, Puiseux, Rational, Series};
use serde_json::{json, Value as Json};

use crate::error::CliError;
use crate::expr::{parse_equation, BinOp, Expr, Generator, Var};

/// Largest absolute integer exponent accepted.
const MAX_POWER: i64 = 10_000;

#[derive(Debug, Clone)]
pub enum Value {
    Scalar(Rational),
    Series(Series),
    Bivariate(MSeries),
    Puiseux(Puiseux),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Series(_) => "series in z",
            Value::Bivariate(_) => "series in x, y",
            Value::Puiseux(_) => "Puiseux element in t",
        }
    }

    pub fn into_series(self) -> Result<Series, CliError> {
        match self {
            Value::Scalar(c) => Ok(Series::constant(c)),
            Value::Series(s) => Ok(s),
            other => Err(CliError::Type(format!(
                "expected a series in z, found a {}",
                other.kind()
            ))),
        }
    }

    pub fn into_bivariate(self) -> Result<MSeries, CliError> {
        match self {
            Value::Scalar(c) => Ok(MSeries::constant(2, c)),
            Value::Bivariate(s) => Ok(s),
            other => Err(CliError::Type(format!(
                "expected a series in x, y, found a {}",
                other.kind()
            ))),
        }
    }

    pub fn into_puiseux(self) -> Result<Puiseux, CliError> {
        match self {
            Value::Scalar(c) => Ok(Puiseux::constant(c)),
            Value::Puiseux(p) => Ok(p),
            other => Err(CliError::Type(format!(
                "expected a Puiseux element in t, found a {}",
                other.kind()
            ))),
        }
    }

    pub fn into_scalar(self) -> Result<Rational, CliError> {
        match self {
            Value::Scalar(c) => Ok(c),
            other => Err(CliError::Type(format!(
                "expected a constant, found a {}",
                other.kind()
            ))),
        }
    }

    /// Terms below `order`, with an `O(·)` tail when more may follow.
    pub fn render(&self, order: usize) -> String {
        match self {
            Value::Scalar(c) => c.to_string(),
            Value::Series(s) => s.render("z", order),
            Value::Bivariate(s) => s.render(&["x", "y"], order),
            Value::Puiseux(p) => p.render(Exponent::from_integer(order as i64)),
        }
    }

    pub fn to_json(&self, order: usize) -> Json {
        match self {
            Value::Scalar(c) => json!({ "kind": "scalar", "value": c }),
            Value::Series(s) => json!({
                "kind": "series",
                "variable": "z",
                "order": order,
                "coefficients": s.prefix(order),
            }),
            Value::Bivariate(s) => {
                let mut terms = Vec::new();
                for d in 0..order {
                    for (m, c) in s.slice(d).iter().rev() {
                        terms.push(json!({ "monomial": m, "coefficient": c }));
                    }
                }
                json!({ "kind": "bivariate", "variables": ["x", "y"], "order": order, "terms": terms })
            }
            Value::Puiseux(p) => {
                let bound = Exponent::from_integer(order as i64);
                let terms: Vec<Json> = p
                    .terms_below(bound)
                    .into_iter()
                    .map(|(e, c)| json!({ "exponent": exponent_json(e), "coefficient": c }))
                    .collect();
                json!({
                    "kind": "puiseux",
                    "order": order,
                    "ramification": p.ramification(),
                    "precision": p.precision().map(exponent_json),
                    "terms": terms,
                })
            }
        }
    }
}

pub fn exponent_json(e: Exponent) -> Json {
    json!({ "num": e.numer().to_string(), "den": e.denom().to_string() })
}

fn same_context(a: Value, b: Value) -> Result<(Value, Value), CliError> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(a), Series(b)) => (Series(puiseux_core::Series::constant(a)), Series(b)),
        (Series(a), Scalar(b)) => (Series(a), Series(puiseux_core::Series::constant(b))),
        (Scalar(a), Bivariate(b)) => (Bivariate(MSeries::constant(2, a)), Bivariate(b)),
        (Bivariate(a), Scalar(b)) => (Bivariate(a), Bivariate(MSeries::constant(2, b))),
        (Scalar(a), Puiseux(b)) => (Puiseux(puiseux_core::Puiseux::constant(a)), Puiseux(b)),
        (Puiseux(a), Scalar(b)) => (Puiseux(a), Puiseux(puiseux_core::Puiseux::constant(b))),
        (a, b) if std::mem::discriminant(&a) == std::mem::discriminant(&b) => (a, b),
        (a, b) => {
            return Err(CliError::Type(format!(
                "cannot combine a {} with a {}",
                a.kind(),
                b.kind()
            )))
        }
    })
}

fn binary(op: BinOp, a: Value, b: Value) -> Result<Value, CliError> {
    use Value::*;
    if op == BinOp::Div {
        return divide(a, b);
    }
    Ok(match same_context(a, b)? {
        (Scalar(a), Scalar(b)) => Scalar(match op {
            BinOp::Add => a + b,
            BinOp::Sub => a - b,
            _ => a * b,
        }),
        (Series(a), Series(b)) => Series(match op {
            BinOp::Add => a.add(&b),
            BinOp::Sub => a.sub(&b),
            _ => a.mul(&b),
        }),
        (Bivariate(a), Bivariate(b)) => Bivariate(match op {
            BinOp::Add => a.checked_add(&b)?,
            BinOp::Sub => a.checked_sub(&b)?,
            _ => a.checked_mul(&b)?,
        }),
        (Puiseux(a), Puiseux(b)) => Puiseux(match op {
            BinOp::Add => a.add(&b),
            BinOp::Sub => a.sub(&b),
            _ => a.mul(&b),
        }),
        _ => unreachable!("contexts unified"),
    })
}

fn divide(a: Value, b: Value) -> Result<Value, CliError> {
    use Value::*;
    if let (Bivariate(a), Scalar(c)) = (&a, &b) {
        let inv = c.recip().ok_or(puiseux_core::Error::DivisionByZero)?;
        return Ok(Bivariate(a.scale(inv)));
    }
    Ok(match same_context(a, b)? {
        (Scalar(a), Scalar(b)) => Scalar(a * b.recip().ok_or(puiseux_core::Error::DivisionByZero)?),
        (Series(a), Series(b)) => Series(a.checked_div(&b)?),
        (Puiseux(a), Puiseux(b)) => Puiseux(a.checked_div(&b)?),
        (Bivariate(_), Bivariate(_)) => {
            return Err(CliError::Type(
                "division of series in x, y is only by constants".into(),
            ))
        }
        _ => unreachable!("contexts unified"),
    })
}

fn power(base_expr: &Expr, base: Value, k: Rational) -> Result<Value, CliError> {
    if !k.is_integer() {
        if *base_expr != Expr::Var(Var::T) {
            return Err(CliError::Type(format!(
                "exponent {k} is not an integer; fractional exponents are allowed on t only"
            )));
        }
        let (num, den) = (k.numer().to_i64(), k.denom().to_i64());
        let (Some(num), Some(den)) = (num, den) else {
            return Err(CliError::Type(format!("exponent {k} is too large")));
        };
        return Ok(Value::Puiseux(Puiseux::monomial(
            Rational::one(),
            Exponent::new(num, den),
        )));
    }
    let n = k
        .numer()
        .to_i64()
        .filter(|n| n.abs() <= MAX_POWER)
        .ok_or_else(|| CliError::Type(format!("exponent {k} is too large (limit {MAX_POWER})")))?;
    Ok(match base {
        Value::Scalar(c) => {
            if n < 0 && c.is_zero() {
                return Err(puiseux_core::Error::DivisionByZero.into());
            }
            Value::Scalar(c.pow(n as i32))
        }
        Value::Series(s) => {
            let s = if n < 0 { s.invert_unit()? } else { s };
            Value::Series(s.pow(n.unsigned_abs() as u32))
        }
        Value::Bivariate(s) => {
            if n < 0 {
                return Err(CliError::Type(
                    "negative powers of series in x, y are not supported".into(),
                ));
            }
            let mut acc = MSeries::constant(2, Rational::one());
            for _ in 0..n {
                acc = acc.checked_mul(&s)?;
            }
            Value::Bivariate(acc)
        }
        Value::Puiseux(p) => Value::Puiseux(p.pow(n)?),
    })
}

pub fn eval(e: &Expr) -> Result<Value, CliError> {
    Ok(match e {
        Expr::Int(n) => Value::Scalar(Rational::from(n.clone())),
        Expr::Decimal(s) => Value::Scalar(
            Rational::from_str(s).map_err(|_| CliError::Type(format!("bad number '{s}'")))?,
        ),
        Expr::Var(Var::Z) => Value::Series(Series::variable()),
        Expr::Var(Var::X) => Value::Bivariate(MSeries::variable(2, 0)?),
        Expr::Var(Var::Y) => Value::Bivariate(MSeries::variable(2, 1)?),
        Expr::Var(Var::T) => Value::Puiseux(Puiseux::t()),
        Expr::Gen(g) => Value::Series(match g {
            Generator::Geom => Series::geometric(),
            Generator::Exp => Series::exponential(),
            Generator::Factorial => Series::factorial(),
        }),
        Expr::F | Expr::FPrime => {
            return Err(CliError::Type(
                "the unknown F may only appear in an equation".into(),
            ))
        }
        Expr::Neg(a) => match eval(a)? {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Series(s) => Value::Series(s.neg()),
            Value::Bivariate(s) => Value::Bivariate(s.neg()),
            Value::Puiseux(p) => Value::Puiseux(p.neg()),
        },
        Expr::Bin(op, a, b) => binary(*op, eval(a)?, eval(b)?)?,
        Expr::Pow(a, b) => {
            let k = eval(b)?
                .into_scalar()
                .map_err(|_| CliError::Type(format!("exponent '{b}' must be a constant")))?;
            power(a, eval(a)?, k)?
        }
        Expr::Derive(a, var) => derive(eval(a)?, *var)?,
    })
}

fn derive(v: Value, var: Option<Var>) -> Result<Value, CliError> {
    let mismatch = |v: &Value, var: Var| {
        CliError::Type(format!(
            "cannot differentiate a {} with respect to {}",
            v.kind(),
            var.name()
        ))
    };
    Ok(match (v, var) {
        (Value::Scalar(_), _) => Value::Scalar(Rational::zero()),
        (Value::Series(s), None | Some(Var::Z)) => Value::Series(s.derive()),
        (Value::Bivariate(s), Some(Var::X)) => Value::Bivariate(s.derive(0)?),
        (Value::Bivariate(s), Some(Var::Y)) => Value::Bivariate(s.derive(1)?),
        (Value::Bivariate(_), None) => {
            return Err(CliError::Type(
                "derive of a series in x, y needs a variable: derive(e, x) or derive(e, y)".into(),
            ))
        }
        (Value::Puiseux(p), None | Some(Var::T)) => Value::Puiseux(p.derive()),
        (v, Some(var)) => return Err(mismatch(&v, var)),
    })
}

/// `fp·F' + f·F + rest`.
struct Linear {
    fp: Series,
    f: Series,
    rest: Series,
}

impl Linear {
    fn map(self, g: impl Fn(&Series) -> Result<Series, CliError>) -> Result<Linear, CliError> {
        Ok(Linear {
            fp: g(&self.fp)?,
            f: g(&self.f)?,
            rest: g(&self.rest)?,
        })
    }

    fn combine(self, other: Linear, g: impl Fn(&Series, &Series) -> Series) -> Linear {
        Linear {
            fp: g(&self.fp, &other.fp),
            f: g(&self.f, &other.f),
            rest: g(&self.rest, &other.rest),
        }
    }
}

fn linear(e: &Expr) -> Result<Linear, CliError> {
    if !e.contains_unknown() {
        let rest = eval(e)?
            .into_series()
            .map_err(|_| CliError::Type(format!("equation terms must be series in z: '{e}'")))?;
        return Ok(Linear {
            fp: Series::zero(),
            f: Series::zero(),
            rest,
        });
    }
    Ok(match e {
        Expr::F => Linear {
            fp: Series::zero(),
            f: Series::one(),
            rest: Series::zero(),
        },
        Expr::FPrime => Linear {
            fp: Series::one(),
            f: Series::zero(),
            rest: Series::zero(),
        },
        Expr::Neg(a) => linear(a)?.map(|s| Ok(s.neg()))?,
        Expr::Bin(BinOp::Add, a, b) => linear(a)?.combine(linear(b)?, |x, y| x.add(y)),
        Expr::Bin(BinOp::Sub, a, b) => linear(a)?.combine(linear(b)?, |x, y| x.sub(y)),
        Expr::Bin(BinOp::Mul, a, b) => {
            let (unknown, coeff) = if a.contains_unknown() { (a, b) } else { (b, a) };
            if coeff.contains_unknown() {
                return Err(CliError::Type(format!(
                    "equation is not linear in F: '{e}'"
                )));
            }
            let k = eval(coeff)?.into_series()?;
            linear(unknown)?.map(|s| Ok(s.mul(&k)))?
        }
        Expr::Bin(BinOp::Div, a, b) => {
            if b.contains_unknown() {
                return Err(CliError::Type(format!(
                    "equation is not linear in F: '{e}'"
                )));
            }
            let k = eval(b)?.into_series()?;
            let inv = k.invert_unit()?;
            linear(a)?.map(|s| Ok(s.mul(&inv)))?
        }
        Expr::Pow(..) => {
            return Err(CliError::Type(format!(
                "equation is not linear in F: '{e}'"
            )))
        }
        Expr::Derive(..) => return Err(CliError::Type("write the derivative of F as F'".into())),
        _ => unreachable!("leaf without unknown handled above"),
    })
}

/// Reads `A(z)*F' + B(z)*F = C(z)`, in any linear arrangement.
pub fn parse_ode(input: &str) -> Result<LinearOde, CliError> {
    let (lhs, rhs) = parse_equation(input)?;
    if !lhs.contains_unknown() && !rhs.contains_unknown() {
        return Err(CliError::Type("equation does not involve F".into()));
    }
    let l = linear(&lhs)?.combine(linear(&rhs)?, |x, y| x.sub(y));
    Ok(LinearOde::new(l.fp, l.f, l.rest.neg()))
}

/// Reads an optional `F(0)` given as a rational, e.g. `1` or `-1/2`.
pub fn parse_rational(s: &str, what: &str) -> Result<Rational, CliError> {
    let v = Rational::from_str(s)
        .map_err(|_| CliError::Usage(format!("{what}: '{s}' is not a rational number")))?;
    Ok(v)
}

pub fn require_positive(r: &Rational, what: &str) -> Result<(), CliError> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{what} must be positive, got {r}")))
    }
}
