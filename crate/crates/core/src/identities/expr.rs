//! Series expressions: theta functions, q-powers, integers and sifts.

use std::fmt;

use num_bigint::BigInt;

use super::lexer::{Cursor, TokKind};
use super::RegistryError;
use crate::series::{Series, SeriesError};
use crate::theta::{self, QArg, ThetaError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    /// `q^k`
    QPow(usize),
    Func { name: String, args: Vec<QArg> },
    /// `S[t,s](inner)`
    Sift { t: usize, s: usize, inner: Box<Expr> },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

impl Expr {
    /// Evaluate as a series with exponents `0..n`.
    pub fn eval(&self, n: usize) -> Result<Series, EvalError> {
        Ok(match self {
            Expr::Int(v) => Series::constant(*v, n),
            Expr::QPow(k) => Series::monomial(1, *k, n),
            Expr::Func { name, args } => theta::named_function(name, args, n)?,
            Expr::Sift { t, s, inner } => {
                let wide = if n == 0 { 0 } else { t * (n - 1) + s + 1 };
                inner.eval(wide)?.sift(*t, *s)?
            }
            Expr::Neg(a) => a.eval(n)?.neg(),
            Expr::Add(a, b) => a.eval(n)?.add(&b.eval(n)?),
            Expr::Sub(a, b) => a.eval(n)?.sub(&b.eval(n)?),
            Expr::Mul(a, b) => match (a.as_ref(), b.as_ref()) {
                // Scalars and q-powers skip the convolution.
                (Expr::Int(c), other) | (other, Expr::Int(c)) => other.eval(n)?.scale(&BigInt::from(*c)),
                (Expr::QPow(k), other) | (other, Expr::QPow(k)) => {
                    other.eval(n.saturating_sub(*k))?.extend_shift(*k, n)
                }
                _ => a.eval(n)?.mul(&b.eval(n)?),
            },
            Expr::Div(a, b) => a.eval(n)?.div(&b.eval(n)?)?,
            Expr::Pow(a, e) => a.eval(n)?.pow(*e),
        })
    }

    /// True if a sift operator occurs anywhere in the tree.
    pub fn has_sift(&self) -> bool {
        match self {
            Expr::Sift { .. } => true,
            Expr::Int(_) | Expr::QPow(_) | Expr::Func { .. } => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.has_sift(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.has_sift() || b.has_sift(),
        }
    }
}

trait ExtendShift {
    fn extend_shift(&self, k: usize, n: usize) -> Series;
}

impl ExtendShift for Series {
    /// `q^k * self`, where `self` was computed to `n - k` terms.
    fn extend_shift(&self, k: usize, n: usize) -> Series {
        let mut coeffs = vec![BigInt::from(0); n];
        for (i, c) in self.coeffs().iter().enumerate() {
            if i + k < n {
                coeffs[i + k] = c.clone();
            }
        }
        Series::from_coeffs(coeffs)
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Neg(_) => 2,
        Expr::Mul(..) | Expr::Div(..) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::QPow(1) => write!(f, "q"),
            Expr::QPow(k) => write!(f, "q^{k}"),
            Expr::Func { name, args } => {
                let a: Vec<String> = args.iter().map(|x| x.to_string()).collect();
                write!(f, "{name}({})", a.join(","))
            }
            Expr::Sift { t, s, inner } => write!(f, "S[{t},{s}]({inner})"),
            Expr::Neg(a) => write!(f, "-{}", wrap(a, 3)),
            Expr::Add(a, b) => write!(f, "{a} + {}", wrap(b, 2)),
            Expr::Sub(a, b) => write!(f, "{a} - {}", wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 3), wrap(b, 4)),
            Expr::Div(a, b) => write!(f, "{}/{}", wrap(a, 3), wrap(b, 4)),
            Expr::Pow(a, e) => write!(f, "{}^{e}", wrap(a, 5)),
        }
    }
}

pub fn parse_expr(c: &mut Cursor) -> Result<Expr, RegistryError> {
    let mut lhs = if c.eat_punct("-") { Expr::Neg(Box::new(parse_term(c)?)) } else { parse_term(c)? };
    loop {
        if c.eat_punct("+") {
            lhs = Expr::Add(Box::new(lhs), Box::new(parse_term(c)?));
        } else if c.eat_punct("-") {
            lhs = Expr::Sub(Box::new(lhs), Box::new(parse_term(c)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_term(c: &mut Cursor) -> Result<Expr, RegistryError> {
    let mut lhs = parse_factor(c)?;
    loop {
        if c.eat_punct("*") {
            lhs = Expr::Mul(Box::new(lhs), Box::new(parse_factor(c)?));
        } else if c.eat_punct("/") {
            lhs = Expr::Div(Box::new(lhs), Box::new(parse_factor(c)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_exponent(c: &mut Cursor) -> Result<u32, RegistryError> {
    let e = c.expect_int()?;
    u32::try_from(e).map_err(|_| c.error("exponent too large"))
}

fn parse_factor(c: &mut Cursor) -> Result<Expr, RegistryError> {
    let base = parse_primary(c)?;
    if c.eat_punct("^") {
        let e = parse_exponent(c)?;
        return Ok(match base {
            Expr::QPow(1) => Expr::QPow(e as usize),
            other => Expr::Pow(Box::new(other), e),
        });
    }
    Ok(base)
}

/// `q`, `q^k`, `-q`, `-q^k`
fn parse_qarg(c: &mut Cursor) -> Result<QArg, RegistryError> {
    let negate = c.eat_punct("-");
    if !c.eat_ident("q") {
        return Err(c.error("expected a q-power argument"));
    }
    let power = if c.eat_punct("^") { c.expect_int()? as usize } else { 1 };
    if power == 0 {
        return Err(c.error("argument power must be positive"));
    }
    Ok(QArg { negate, power })
}

fn parse_primary(c: &mut Cursor) -> Result<Expr, RegistryError> {
    let (line, col) = c.position();
    match c.next() {
        Some(TokKind::Int(v)) => Ok(Expr::Int(v)),
        Some(TokKind::Punct("(")) => {
            let e = parse_expr(c)?;
            c.expect_punct(")")?;
            Ok(e)
        }
        Some(TokKind::Ident(name)) if name == "q" => Ok(Expr::QPow(1)),
        Some(TokKind::Ident(name)) if name == "S" && c.is_punct("[") => {
            c.expect_punct("[")?;
            let t = c.expect_int()?;
            c.expect_punct(",")?;
            let s = c.expect_int()?;
            c.expect_punct("]")?;
            if t < 1 || s < 0 || s >= t {
                return Err(RegistryError::Parse { line, col, msg: format!("sift S[{t},{s}] needs 0 <= s < t") });
            }
            c.expect_punct("(")?;
            let inner = parse_expr(c)?;
            c.expect_punct(")")?;
            Ok(Expr::Sift { t: t as usize, s: s as usize, inner: Box::new(inner) })
        }
        Some(TokKind::Ident(name)) => {
            if !theta::is_builtin(&name) {
                return Err(RegistryError::UnknownPrimitive { name, line, col });
            }
            c.expect_punct("(")?;
            let mut args = vec![parse_qarg(c)?];
            while c.eat_punct(",") {
                args.push(parse_qarg(c)?);
            }
            c.expect_punct(")")?;
            let expected = if name == "f" { 2 } else { 1 };
            if args.len() != expected {
                return Err(RegistryError::Parse {
                    line,
                    col,
                    msg: format!("{name} takes {expected} argument(s), got {}", args.len()),
                });
            }
            Ok(Expr::Func { name, args })
        }
        _ => Err(RegistryError::Parse { line, col, msg: "expected a series term".into() }),
    }
}
