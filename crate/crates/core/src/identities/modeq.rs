//! Degree-3 modular equations checked through the parametrization
//! `alpha = p(2+p)^3/(1+2p)^3`, `beta = p^3(2+p)/(1+2p)`, `m = 1+2p`.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use super::lexer::{Cursor, TokKind};
use super::ratfunc::{rational_root, RationalFunction, RootError};
use super::RegistryError;

type Exp = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MExpr {
    Int(i64),
    M,
    Alpha,
    Beta,
    Neg(Box<MExpr>),
    Add(Box<MExpr>, Box<MExpr>),
    Sub(Box<MExpr>, Box<MExpr>),
    Mul(Box<MExpr>, Box<MExpr>),
    Div(Box<MExpr>, Box<MExpr>),
    Pow(Box<MExpr>, Exp),
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ModEqError {
    #[error("unsupported by parametrization: {0}")]
    Unsupported(String),
    #[error("unsupported by parametrization: {0}")]
    Root(#[from] RootError),
}

pub fn alpha() -> RationalFunction {
    let p = RationalFunction::poly(&[0, 1]);
    let a = RationalFunction::poly(&[2, 1]).pow(3).unwrap();
    let b = RationalFunction::poly(&[1, 2]).pow(-3).unwrap();
    p.mul(&a).mul(&b)
}

pub fn beta() -> RationalFunction {
    let p3 = RationalFunction::poly(&[0, 1]).pow(3).unwrap();
    p3.mul(&RationalFunction::poly(&[2, 1])).mul(&RationalFunction::poly(&[1, 2]).recip().unwrap())
}

pub fn multiplier() -> RationalFunction {
    RationalFunction::poly(&[1, 2])
}

/// `sum c_i alpha^(x_i) beta^(y_i)` with rational-function coefficients.
#[derive(Clone, Debug, PartialEq)]
struct Radicals(Vec<(RationalFunction, Exp, Exp)>);

impl Radicals {
    fn constant(c: RationalFunction) -> Self {
        Radicals(vec![(c, Exp::zero(), Exp::zero())]).normalized()
    }

    fn atom(x: i64, y: i64) -> Self {
        Radicals(vec![(RationalFunction::constant(1), Exp::from_integer(x), Exp::from_integer(y))])
    }

    fn normalized(self) -> Self {
        let mut out: Vec<(RationalFunction, Exp, Exp)> = Vec::new();
        for (c, x, y) in self.0 {
            match out.iter_mut().find(|(_, a, b)| *a == x && *b == y) {
                Some(slot) => slot.0 = slot.0.add(&c),
                None => out.push((c, x, y)),
            }
        }
        out.retain(|(c, _, _)| !c.is_zero());
        Radicals(out)
    }

    fn add(&self, o: &Self) -> Self {
        Radicals(self.0.iter().chain(o.0.iter()).cloned().collect()).normalized()
    }

    fn neg(&self) -> Self {
        Radicals(self.0.iter().map(|(c, x, y)| (c.neg(), *x, *y)).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Vec::new();
        for (c, x, y) in &self.0 {
            for (d, u, v) in &o.0 {
                out.push((c.mul(d), x + u, y + v));
            }
        }
        Radicals(out).normalized()
    }

    fn recip(&self) -> Result<Self, ModEqError> {
        match self.0.as_slice() {
            [(c, x, y)] => {
                let c = c.recip().ok_or_else(|| ModEqError::Unsupported("division by zero".into()))?;
                Ok(Radicals(vec![(c, -x, -y)]))
            }
            _ => Err(ModEqError::Unsupported("division by a sum of radicals".into())),
        }
    }

    fn pow(&self, e: Exp) -> Result<Self, ModEqError> {
        if e.is_integer() {
            let k = e.to_integer();
            let base = if k < 0 { self.recip()? } else { self.clone() };
            let mut out = Radicals::constant(RationalFunction::constant(1));
            for _ in 0..k.unsigned_abs() {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        match self.0.as_slice() {
            [(c, x, y)] if *c == RationalFunction::constant(1) => Ok(Radicals(vec![(c.clone(), x * e, y * e)])),
            _ => Err(ModEqError::Unsupported(format!("fractional power {e} of a non-monomial"))),
        }
    }

    /// Substitute the parametrization, taking one 8th root per monomial.
    fn collapse(&self) -> Result<RationalFunction, ModEqError> {
        let mut total = RationalFunction::constant(0);
        for (c, x, y) in &self.0 {
            let (x8, y8) = (x * 8, y * 8);
            if !x8.is_integer() || !y8.is_integer() {
                return Err(ModEqError::Unsupported(format!("exponents {x}, {y} are not in eighths")));
            }
            let radicand = alpha()
                .pow(x8.to_integer())
                .expect("alpha is nonzero")
                .mul(&beta().pow(y8.to_integer()).expect("beta is nonzero"));
            total = total.add(&c.mul(&rational_root(&radicand, 8)?));
        }
        Ok(total)
    }
}

impl MExpr {
    fn radicals(&self) -> Result<Radicals, ModEqError> {
        Ok(match self {
            MExpr::Int(v) => Radicals::constant(RationalFunction::constant(*v)),
            MExpr::M => Radicals::constant(multiplier()),
            MExpr::Alpha => Radicals::atom(1, 0),
            MExpr::Beta => Radicals::atom(0, 1),
            MExpr::Neg(a) => a.radicals()?.neg(),
            MExpr::Add(a, b) => a.radicals()?.add(&b.radicals()?),
            MExpr::Sub(a, b) => a.radicals()?.add(&b.radicals()?.neg()),
            MExpr::Mul(a, b) => a.radicals()?.mul(&b.radicals()?),
            MExpr::Div(a, b) => a.radicals()?.mul(&b.radicals()?.recip()?),
            MExpr::Pow(a, e) => a.radicals()?.pow(*e)?,
        })
    }

    /// The expression as a rational function of `p`.
    pub fn in_p(&self) -> Result<RationalFunction, ModEqError> {
        self.radicals()?.collapse()
    }
}

fn prec(e: &MExpr) -> u8 {
    match e {
        MExpr::Add(..) | MExpr::Sub(..) => 1,
        MExpr::Neg(_) => 2,
        MExpr::Mul(..) | MExpr::Div(..) => 3,
        MExpr::Pow(..) => 4,
        _ => 5,
    }
}

fn wrap(e: &MExpr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for MExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MExpr::Int(v) => write!(f, "{v}"),
            MExpr::M => write!(f, "m"),
            MExpr::Alpha => write!(f, "alpha"),
            MExpr::Beta => write!(f, "beta"),
            MExpr::Neg(a) => write!(f, "-{}", wrap(a, 3)),
            MExpr::Add(a, b) => write!(f, "{a} + {}", wrap(b, 2)),
            MExpr::Sub(a, b) => write!(f, "{a} - {}", wrap(b, 2)),
            MExpr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 3), wrap(b, 4)),
            MExpr::Div(a, b) => write!(f, "{}/{}", wrap(a, 3), wrap(b, 4)),
            MExpr::Pow(a, e) if e.is_integer() => write!(f, "{}^{e}", wrap(a, 5)),
            MExpr::Pow(a, e) => write!(f, "{}^({e})", wrap(a, 5)),
        }
    }
}

pub fn parse_mexpr(c: &mut Cursor) -> Result<MExpr, RegistryError> {
    let mut lhs = if c.eat_punct("-") { MExpr::Neg(Box::new(parse_term(c)?)) } else { parse_term(c)? };
    loop {
        if c.eat_punct("+") {
            lhs = MExpr::Add(Box::new(lhs), Box::new(parse_term(c)?));
        } else if c.eat_punct("-") {
            lhs = MExpr::Sub(Box::new(lhs), Box::new(parse_term(c)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_term(c: &mut Cursor) -> Result<MExpr, RegistryError> {
    let mut lhs = parse_factor(c)?;
    loop {
        if c.eat_punct("*") {
            lhs = MExpr::Mul(Box::new(lhs), Box::new(parse_factor(c)?));
        } else if c.eat_punct("/") {
            lhs = MExpr::Div(Box::new(lhs), Box::new(parse_factor(c)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_factor(c: &mut Cursor) -> Result<MExpr, RegistryError> {
    let base = parse_primary(c)?;
    if !c.eat_punct("^") {
        return Ok(base);
    }
    let e = if c.eat_punct("(") {
        let num = c.expect_signed_int()?;
        let den = if c.eat_punct("/") { c.expect_int()? } else { 1 };
        c.expect_punct(")")?;
        if den == 0 {
            return Err(c.error("zero denominator in exponent"));
        }
        Exp::new(num, den)
    } else {
        Exp::from_integer(c.expect_int()?)
    };
    Ok(MExpr::Pow(Box::new(base), e))
}

fn parse_primary(c: &mut Cursor) -> Result<MExpr, RegistryError> {
    let (line, col) = c.position();
    match c.next() {
        Some(TokKind::Int(v)) => Ok(MExpr::Int(v)),
        Some(TokKind::Punct("(")) => {
            let e = parse_mexpr(c)?;
            c.expect_punct(")")?;
            Ok(e)
        }
        Some(TokKind::Ident(name)) => match name.as_str() {
            "m" => Ok(MExpr::M),
            "alpha" => Ok(MExpr::Alpha),
            "beta" => Ok(MExpr::Beta),
            _ => Err(RegistryError::UnknownPrimitive { name, line, col }),
        },
        _ => Err(RegistryError::Parse { line, col, msg: "expected m, alpha, beta or an integer".into() }),
    }
}

/// Both sides in `p`, and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModEqCheck {
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
}

impl ModEqCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn check(lhs: &MExpr, rhs: &MExpr) -> Result<ModEqCheck, ModEqError> {
    Ok(ModEqCheck { lhs: lhs.in_p()?, rhs: rhs.in_p()? })
}
