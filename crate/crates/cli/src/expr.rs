//! Expression syntax: lexer, Pratt parser and a renderer that emits the
//! fewest parentheses that parse back to the same tree.
//!
//! Precedence, loosest first: `+ -`, then `* /`, then unary `-`, then `^`
//! (right associative). `ζ`, `·`, `−` and `′` are accepted for `z`, `*`,
//! `-` and `'`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Z,
    X,
    Y,
    T,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::X => "x",
            Var::Y => "y",
            Var::T => "t",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `Σ zⁿ`
    Geom,
    /// `Σ zⁿ/n!`
    Exp,
    /// `Σ_{n≥1} (n-1)! zⁿ`
    Factorial,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::Geom => "geom",
            Generator::Exp => "exp",
            Generator::Factorial => "factorial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// Decimal literal, kept verbatim, e.g. `0.001`.
    Decimal(String),
    Var(Var),
    Gen(Generator),
    /// The unknown function of an equation.
    F,
    /// Its derivative, `F'`.
    FPrime,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Derive(Box<Expr>, Option<Var>),
}

const PREC_NEG: u8 = 5;
const PREC_POW: u8 = 7;
const PREC_ATOM: u8 = 9;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.precedence(),
            Expr::Neg(_) => PREC_NEG,
            Expr::Pow(..) => PREC_POW,
            _ => PREC_ATOM,
        }
    }

    pub fn contains_unknown(&self) -> bool {
        match self {
            Expr::F | Expr::FPrime => true,
            Expr::Neg(e) | Expr::Derive(e, _) => e.contains_unknown(),
            Expr::Bin(_, a, b) | Expr::Pow(a, b) => a.contains_unknown() || b.contains_unknown(),
            _ => false,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Decimal(s) => f.write_str(s),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Gen(g) => f.write_str(g.name()),
            Expr::F => f.write_str("F"),
            Expr::FPrime => f.write_str("F'"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, e.precedence() < PREC_NEG)
            }
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                write_child(f, a, a.precedence() < p)?;
                f.write_str(op.symbol())?;
                write_child(f, b, b.precedence() <= p)
            }
            Expr::Pow(a, b) => {
                write_child(f, a, a.precedence() <= PREC_POW)?;
                f.write_str("^")?;
                write_child(f, b, b.precedence() < PREC_NEG)
            }
            Expr::Derive(e, None) => write!(f, "derive({e})"),
            Expr::Derive(e, Some(v)) => write!(f, "derive({e}, {})", v.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Prime,
    Equals,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Decimal(s) => write!(f, "number {s}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Prime => f.write_str("'''"),
            Tok::Equals => f.write_str("'='"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

fn lex(input: &str) -> Result<Vec<(Tok, Pos)>, CliError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() || d == '.' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let tok = if s.contains('.') {
                if s.matches('.').count() > 1 || s.ends_with('.') {
                    return Err(CliError::parse(pos, format!("malformed number '{s}'")));
                }
                Tok::Decimal(s)
            } else {
                Tok::Int(s.parse().expect("digits"))
            };
            out.push((tok, pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            if s == "ζ" {
                s = "z".into();
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '\'' | '′' => Tok::Prime,
            '=' => Tok::Equals,
            other => {
                return Err(CliError::parse(
                    pos,
                    format!("unexpected character '{other}'"),
                ));
            }
        };
        chars.next();
        col += 1;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), CliError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(CliError::parse(
                self.pos(),
                format!("expected {want}, found {}", self.peek()),
            ))
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr, CliError> {
        let mut lhs = self.prefix()?;
        loop {
            let (l_bp, r_bp) = match self.peek() {
                Tok::Plus | Tok::Minus => (1, 2),
                Tok::Star | Tok::Slash => (3, 4),
                Tok::Caret => (8, 7),
                _ => break,
            };
            if l_bp < min_bp {
                break;
            }
            let op = self.bump();
            let rhs = self.expr(r_bp)?;
            lhs = match op {
                Tok::Plus => Expr::Bin(BinOp::Add, Box::new(lhs), Box::new(rhs)),
                Tok::Minus => Expr::Bin(BinOp::Sub, Box::new(lhs), Box::new(rhs)),
                Tok::Star => Expr::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs)),
                Tok::Slash => Expr::Bin(BinOp::Div, Box::new(lhs), Box::new(rhs)),
                _ => Expr::Pow(Box::new(lhs), Box::new(rhs)),
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr, CliError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Minus => Ok(Expr::Neg(Box::new(self.expr(PREC_NEG)?))),
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Decimal(s) => Ok(Expr::Decimal(s)),
            Tok::LParen => {
                let e = self.expr(0)?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(&name, pos),
            other => Err(CliError::parse(
                pos,
                format!("expected an expression, found {other}"),
            )),
        }
    }

    fn ident(&mut self, name: &str, pos: Pos) -> Result<Expr, CliError> {
        Ok(match name {
            "F" => {
                if *self.peek() == Tok::Prime {
                    self.bump();
                    Expr::FPrime
                } else {
                    Expr::F
                }
            }
            "derive" => {
                self.expect(Tok::LParen)?;
                let inner = self.expr(0)?;
                let var = if *self.peek() == Tok::Comma {
                    self.bump();
                    let vpos = self.pos();
                    match self.bump() {
                        Tok::Ident(v) => Some(variable(&v).ok_or_else(|| {
                            CliError::parse(vpos, format!("'{v}' is not a variable"))
                        })?),
                        other => {
                            return Err(CliError::parse(
                                vpos,
                                format!("expected a variable, found {other}"),
                            ))
                        }
                    }
                } else {
                    None
                };
                self.expect(Tok::RParen)?;
                Expr::Derive(Box::new(inner), var)
            }
            "geom" => Expr::Gen(Generator::Geom),
            "exp" => Expr::Gen(Generator::Exp),
            "factorial" => Expr::Gen(Generator::Factorial),
            other => match variable(other) {
                Some(v) => Expr::Var(v),
                None => return Err(CliError::parse(pos, format!("unknown name '{other}'"))),
            },
        })
    }

    fn finish(&self) -> Result<(), CliError> {
        match self.peek() {
            Tok::End => Ok(()),
            other => Err(CliError::parse(
                self.pos(),
                format!("unexpected {other} after expression"),
            )),
        }
    }
}

fn variable(name: &str) -> Option<Var> {
    match name {
        "z" | "ζ" => Some(Var::Z),
        "x" => Some(Var::X),
        "y" => Some(Var::Y),
        "t" => Some(Var::T),
        _ => None,
    }
}

pub fn parse(input: &str) -> Result<Expr, CliError> {
    let mut p = Parser {
        toks: lex(input)?,
        at: 0,
    };
    let e = p.expr(0)?;
    p.finish()?;
    Ok(e)
}

/// Parses `lhs = rhs`.
pub fn parse_equation(input: &str) -> Result<(Expr, Expr), CliError> {
    let mut p = Parser {
        toks: lex(input)?,
        at: 0,
    };
    let lhs = p.expr(0)?;
    p.expect(Tok::Equals)?;
    let rhs = p.expr(0)?;
    p.finish()?;
    Ok((lhs, rhs))
}
