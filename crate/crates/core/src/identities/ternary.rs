//! Counting identities between ternary forms, with side conditions on `M`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use num_traits::Zero;

use super::lexer::{Cursor, TokKind};
use super::RegistryError;
use crate::arith::jacobi;
use crate::forms::TernaryForm;
use crate::genus::{self, GenusError, GenusRecord, SGenus};

pub type Value = Ratio<i64>;

/// The argument `M / w^2` (`div == 1` for plain `M`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arg {
    pub div: i64,
}

impl Arg {
    fn apply(&self, m: i64) -> Option<i64> {
        if m % self.div == 0 {
            Some(m / self.div)
        } else {
            None
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.div == 1 {
            write!(f, "M")
        } else {
            write!(f, "M/{}", self.div)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TExpr {
    Int(i64),
    /// `(a,b,c,d,e,f)(M/w^2)`
    Count(TernaryForm, Arg),
    /// `W(form)(M)`: weighted count over the genus of `form`.
    Genus(TernaryForm, Arg),
    /// `EW(S,w)(M)`: `sum_i eps(i,w) W_i(M)` over the S-genus.
    SignedGenus { s: i64, w: i64, arg: Arg },
    /// `aut(form)`
    Aut(TernaryForm),
    /// `eps(form, w)` for the genus of `form`.
    Eps(TernaryForm, i64),
    Neg(Box<TExpr>),
    Add(Box<TExpr>, Box<TExpr>),
    Sub(Box<TExpr>, Box<TExpr>),
    Mul(Box<TExpr>, Box<TExpr>),
    Div(Box<TExpr>, Box<TExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `M ≡ r1,r2,.. mod t`
    Residue { residues: Vec<i64>, modulus: i64 },
    /// `w | M`
    Divides(i64),
    /// `p || M`
    ExactlyDivides(i64),
    /// `(M|p) = v`
    Symbol { p: i64, value: i32 },
}

impl Condition {
    pub fn holds(&self, m: i64) -> bool {
        match self {
            Condition::Residue { residues, modulus } => residues.contains(&m.rem_euclid(*modulus)),
            Condition::Divides(w) => m % w == 0,
            Condition::ExactlyDivides(p) => m % p == 0 && m % (p * p) != 0,
            Condition::Symbol { p, value } => jacobi(m, *p) == *value,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Residue { residues, modulus } => {
                let r: Vec<String> = residues.iter().map(|x| x.to_string()).collect();
                write!(f, "M ≡ {} mod {modulus}", r.join(","))
            }
            Condition::Divides(w) => write!(f, "{w} | M"),
            Condition::ExactlyDivides(p) => write!(f, "{p} || M"),
            Condition::Symbol { p, value } => write!(f, "(M|{p}) = {value}"),
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TernaryError {
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error("{0} is not in any genus of its discriminant")]
    NoGenus(TernaryForm),
    #[error("division by zero at M = {0}")]
    DivisionByZero(i64),
}

/// Representation counts, genus partitions and S-genera shared across
/// identities. Entries only ever grow.
#[derive(Default)]
pub struct CountCache {
    counts: Mutex<HashMap<[i64; 6], Arc<Vec<u64>>>>,
    genera: Mutex<HashMap<i64, Arc<Vec<GenusRecord>>>>,
    sgenera: Mutex<HashMap<i64, Arc<SGenus>>>,
}

impl CountCache {
    pub fn global() -> &'static CountCache {
        static CACHE: OnceLock<CountCache> = OnceLock::new();
        CACHE.get_or_init(CountCache::default)
    }

    /// `r_form(0..n)`, computed once per form and length.
    pub fn counts(&self, form: &TernaryForm, n: usize) -> Arc<Vec<u64>> {
        let key = form.sextuple();
        if let Some(c) = self.counts.lock().unwrap().get(&key) {
            if c.len() >= n {
                return c.clone();
            }
        }
        let fresh = Arc::new(form.theta_counts(n));
        let mut map = self.counts.lock().unwrap();
        let slot = map.entry(key).or_insert_with(|| fresh.clone());
        if slot.len() < n {
            *slot = fresh;
        }
        slot.clone()
    }

    pub fn genera(&self, disc: i64) -> Arc<Vec<GenusRecord>> {
        if let Some(g) = self.genera.lock().unwrap().get(&disc) {
            return g.clone();
        }
        let fresh = Arc::new(genus::genus_partition(disc));
        self.genera.lock().unwrap().entry(disc).or_insert(fresh).clone()
    }

    pub fn genus_of(&self, form: &TernaryForm) -> Result<GenusRecord, TernaryError> {
        self.genera(form.discriminant())
            .iter()
            .find(|g| g.contains(form))
            .cloned()
            .ok_or(TernaryError::NoGenus(*form))
    }

    pub fn sgenus(&self, s: i64) -> Result<Arc<SGenus>, GenusError> {
        if let Some(g) = self.sgenera.lock().unwrap().get(&s) {
            return Ok(g.clone());
        }
        let fresh = Arc::new(genus::build_sgenus(s)?);
        Ok(self.sgenera.lock().unwrap().entry(s).or_insert(fresh).clone())
    }
}

/// Evaluates a [`TExpr`] for every `M` in `0..n` at once.
pub struct Evaluator<'a> {
    cache: &'a CountCache,
    n: usize,
}

impl<'a> Evaluator<'a> {
    pub fn new(cache: &'a CountCache, n: usize) -> Self {
        Evaluator { cache, n }
    }

    fn genus_counts(&self, g: &GenusRecord) -> Result<Vec<i64>, TernaryError> {
        let weights = g.weights()?;
        let mut out = vec![0i64; self.n];
        for (form, w) in g.classes.iter().zip(weights) {
            let r = self.cache.counts(form, self.n);
            for (o, x) in out.iter_mut().zip(r.iter()) {
                *o += w as i64 * *x as i64;
            }
        }
        Ok(out)
    }

    fn at_arg(values: &[i64], arg: Arg) -> Vec<Value> {
        (0..values.len() as i64)
            .map(|m| match arg.apply(m) {
                Some(k) => Value::from_integer(values[k as usize]),
                None => Value::zero(),
            })
            .collect()
    }

    /// Values at `M = 0..n`; `None` entries are divisions by zero.
    pub fn eval(&self, e: &TExpr) -> Result<Vec<Option<Value>>, TernaryError> {
        let n = self.n;
        let lift = |v: Vec<Value>| v.into_iter().map(Some).collect::<Vec<_>>();
        Ok(match e {
            TExpr::Int(v) => vec![Some(Value::from_integer(*v)); n],
            TExpr::Count(form, arg) => {
                let r = self.cache.counts(form, n);
                let r: Vec<i64> = r[..n].iter().map(|x| *x as i64).collect();
                lift(Self::at_arg(&r, *arg))
            }
            TExpr::Genus(form, arg) => {
                let g = self.cache.genus_of(form)?;
                lift(Self::at_arg(&self.genus_counts(&g)?, *arg))
            }
            TExpr::SignedGenus { s, w, arg } => {
                let sg = self.cache.sgenus(*s)?;
                let mut total = vec![0i64; n];
                for (i, g) in sg.tg.iter().enumerate() {
                    let eps = sg.eps(i, *w)? as i64;
                    for (t, x) in total.iter_mut().zip(self.genus_counts(g)?) {
                        *t += eps * x;
                    }
                }
                lift(Self::at_arg(&total, *arg))
            }
            TExpr::Aut(form) => vec![Some(Value::from_integer(form.aut_count() as i64)); n],
            TExpr::Eps(form, w) => {
                let g = self.cache.genus_of(form)?;
                let eps = genus::epsilon(&g, *w)?;
                vec![Some(Value::from_integer(eps as i64)); n]
            }
            TExpr::Neg(a) => self.eval(a)?.into_iter().map(|x| x.map(|v| -v)).collect(),
            TExpr::Add(a, b) => zip(self.eval(a)?, self.eval(b)?, |x, y| Some(x + y)),
            TExpr::Sub(a, b) => zip(self.eval(a)?, self.eval(b)?, |x, y| Some(x - y)),
            TExpr::Mul(a, b) => zip(self.eval(a)?, self.eval(b)?, |x, y| Some(x * y)),
            TExpr::Div(a, b) => zip(self.eval(a)?, self.eval(b)?, |x, y| if y.is_zero() { None } else { Some(x / y) }),
        })
    }
}

fn zip(
    a: Vec<Option<Value>>,
    b: Vec<Option<Value>>,
    op: impl Fn(Value, Value) -> Option<Value>,
) -> Vec<Option<Value>> {
    a.into_iter()
        .zip(b)
        .map(|(x, y)| match (x, y) {
            (Some(x), Some(y)) => op(x, y),
            _ => None,
        })
        .collect()
}

fn prec(e: &TExpr) -> u8 {
    match e {
        TExpr::Add(..) | TExpr::Sub(..) => 1,
        TExpr::Neg(_) => 2,
        TExpr::Mul(..) | TExpr::Div(..) => 3,
        _ => 5,
    }
}

fn wrap(e: &TExpr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for TExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TExpr::Int(v) => write!(f, "{v}"),
            TExpr::Count(form, arg) => write!(f, "{form}({arg})"),
            TExpr::Genus(form, arg) => write!(f, "W{form}({arg})"),
            TExpr::SignedGenus { s, w, arg } => write!(f, "EW({s},{w})({arg})"),
            TExpr::Aut(form) => write!(f, "aut{form}"),
            TExpr::Eps(form, w) => write!(f, "eps({form},{w})"),
            TExpr::Neg(a) => write!(f, "-{}", wrap(a, 3)),
            TExpr::Add(a, b) => write!(f, "{a} + {}", wrap(b, 2)),
            TExpr::Sub(a, b) => write!(f, "{a} - {}", wrap(b, 2)),
            TExpr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 3), wrap(b, 4)),
            TExpr::Div(a, b) => write!(f, "{}/{}", wrap(a, 3), wrap(b, 4)),
        }
    }
}

pub fn parse_texpr(c: &mut Cursor) -> Result<TExpr, RegistryError> {
    let mut lhs = if c.eat_punct("-") { TExpr::Neg(Box::new(parse_term(c)?)) } else { parse_term(c)? };
    loop {
        if c.eat_punct("+") {
            lhs = TExpr::Add(Box::new(lhs), Box::new(parse_term(c)?));
        } else if c.eat_punct("-") {
            lhs = TExpr::Sub(Box::new(lhs), Box::new(parse_term(c)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_term(c: &mut Cursor) -> Result<TExpr, RegistryError> {
    let mut lhs = parse_primary(c)?;
    loop {
        if c.eat_punct("*") {
            lhs = TExpr::Mul(Box::new(lhs), Box::new(parse_primary(c)?));
        } else if c.eat_punct("/") {
            lhs = TExpr::Div(Box::new(lhs), Box::new(parse_primary(c)?));
        } else {
            return Ok(lhs);
        }
    }
}

/// `(a,b,c,d,e,f)`, positive definite.
fn parse_sextuple(c: &mut Cursor) -> Result<TernaryForm, RegistryError> {
    let (line, col) = c.position();
    let malformed = |msg: String| RegistryError::MalformedSextuple { line, col, msg };
    c.expect_punct("(")?;
    let mut v = vec![c.expect_signed_int()?];
    while c.eat_punct(",") {
        v.push(c.expect_signed_int()?);
    }
    c.expect_punct(")")?;
    if v.len() != 6 {
        return Err(malformed(format!("expected 6 coefficients, got {}", v.len())));
    }
    TernaryForm::new(v[0], v[1], v[2], v[3], v[4], v[5]).map_err(|e| malformed(e.to_string()))
}

/// `(M)`, `(M/k)` or `(M/w^2)`.
fn parse_arg(c: &mut Cursor) -> Result<Arg, RegistryError> {
    c.expect_punct("(")?;
    c.expect_ident("M")?;
    let mut div = 1;
    if c.eat_punct("/") {
        let w = c.expect_int()?;
        div = if c.eat_punct("^") { w.pow(c.expect_int()? as u32) } else { w };
        if div < 1 {
            return Err(c.error("divisor must be positive"));
        }
    }
    c.expect_punct(")")?;
    Ok(Arg { div })
}

fn parse_primary(c: &mut Cursor) -> Result<TExpr, RegistryError> {
    let (line, col) = c.position();
    match c.peek().cloned() {
        Some(TokKind::Int(v)) => {
            c.next();
            Ok(TExpr::Int(v))
        }
        Some(TokKind::Punct("(")) => {
            let sextuple = matches!(c.peek_at(1), Some(TokKind::Int(_)))
                && matches!(c.peek_at(2), Some(TokKind::Punct(",")))
                || matches!(c.peek_at(1), Some(TokKind::Punct("-")));
            if sextuple {
                let form = parse_sextuple(c)?;
                let arg = parse_arg(c)?;
                Ok(TExpr::Count(form, arg))
            } else {
                c.next();
                let e = parse_texpr(c)?;
                c.expect_punct(")")?;
                Ok(e)
            }
        }
        Some(TokKind::Ident(name)) => {
            c.next();
            match name.as_str() {
                "W" => {
                    let form = parse_sextuple(c)?;
                    Ok(TExpr::Genus(form, parse_arg(c)?))
                }
                "EW" => {
                    c.expect_punct("(")?;
                    let s = c.expect_int()?;
                    c.expect_punct(",")?;
                    let w = c.expect_int()?;
                    c.expect_punct(")")?;
                    Ok(TExpr::SignedGenus { s, w, arg: parse_arg(c)? })
                }
                "aut" => Ok(TExpr::Aut(parse_sextuple(c)?)),
                "eps" => {
                    c.expect_punct("(")?;
                    let form = parse_sextuple(c)?;
                    c.expect_punct(",")?;
                    let w = c.expect_int()?;
                    c.expect_punct(")")?;
                    Ok(TExpr::Eps(form, w))
                }
                _ => Err(RegistryError::UnknownPrimitive { name, line, col }),
            }
        }
        _ => Err(RegistryError::Parse { line, col, msg: "expected a counting term".into() }),
    }
}

/// Conditions joined by `and`.
pub fn parse_conditions(c: &mut Cursor) -> Result<Vec<Condition>, RegistryError> {
    let mut out = vec![parse_condition(c)?];
    while c.eat_ident("and") {
        out.push(parse_condition(c)?);
    }
    Ok(out)
}

fn parse_condition(c: &mut Cursor) -> Result<Condition, RegistryError> {
    if c.is_punct("(") {
        c.expect_punct("(")?;
        c.expect_ident("M")?;
        c.expect_punct("|")?;
        let p = c.expect_int()?;
        c.expect_punct(")")?;
        c.expect_punct("=")?;
        let value = c.expect_signed_int()?;
        if !matches!(value, -1..=1) || p < 3 || p % 2 == 0 {
            return Err(c.error("symbol condition needs an odd modulus and a value in {-1,0,1}"));
        }
        return Ok(Condition::Symbol { p, value: value as i32 });
    }
    if c.eat_ident("M") {
        if !(c.eat_punct("≡") || c.eat_punct("==")) {
            return Err(c.error("expected ≡"));
        }
        let mut residues = vec![c.expect_signed_int()?];
        while c.eat_punct(",") {
            residues.push(c.expect_signed_int()?);
        }
        c.expect_ident("mod")?;
        let modulus = c.expect_int()?;
        if modulus < 1 {
            return Err(c.error("modulus must be positive"));
        }
        let residues = residues.into_iter().map(|r| r.rem_euclid(modulus)).collect();
        return Ok(Condition::Residue { residues, modulus });
    }
    let w = c.expect_int()?;
    if w < 1 {
        return Err(c.error("divisor must be positive"));
    }
    let exact = if c.eat_punct("||") {
        true
    } else {
        c.expect_punct("|")?;
        false
    };
    c.expect_ident("M")?;
    Ok(if exact { Condition::ExactlyDivides(w) } else { Condition::Divides(w) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::lexer::tokenize;

    fn cursor(text: &str) -> Cursor {
        Cursor::new(tokenize(text, 1, 1).unwrap(), (1, text.len() + 1))
    }

    fn form(s: [i64; 6]) -> TernaryForm {
        TernaryForm::new(s[0], s[1], s[2], s[3], s[4], s[5]).unwrap()
    }

    #[test]
    fn parse_terms() {
        let mut c = cursor("7*(1,8,8,0,0,0)(M/7^2) + W(1,14,14,0,0,0)(M) - EW(15,3)(M/9)");
        let e = parse_texpr(&mut c).unwrap();
        c.expect_end().unwrap();
        let TExpr::Sub(left, right) = &e else { panic!("{e:?}") };
        assert_eq!(**right, TExpr::SignedGenus { s: 15, w: 3, arg: Arg { div: 9 } });
        let TExpr::Add(scaled, _) = left.as_ref() else { panic!() };
        assert_eq!(
            **scaled,
            TExpr::Mul(Box::new(TExpr::Int(7)), Box::new(TExpr::Count(form([1, 8, 8, 0, 0, 0]), Arg { div: 49 })))
        );
        let mut c = cursor("3*((1,6,6,0,0,0)(M) + 2*(2,3,6,0,0,0)(M))");
        assert!(parse_texpr(&mut c).is_ok());
    }

    #[test]
    fn malformed_sextuple() {
        let mut c = cursor("(1,8,8)(M)");
        assert!(matches!(parse_texpr(&mut c), Err(RegistryError::MalformedSextuple { line: 1, col: 1, .. })));
        let mut c = cursor("(1,1,-1,0,0,0)(M)");
        assert!(matches!(parse_texpr(&mut c), Err(RegistryError::MalformedSextuple { .. })));
    }

    #[test]
    fn conditions() {
        let mut c = cursor("M ≡ 1,2 mod 4 and 7 | M and 3 || M and (M|7) = -1");
        let conds = parse_conditions(&mut c).unwrap();
        assert_eq!(
            conds,
            vec![
                Condition::Residue { residues: vec![1, 2], modulus: 4 },
                Condition::Divides(7),
                Condition::ExactlyDivides(3),
                Condition::Symbol { p: 7, value: -1 },
            ]
        );
        assert!(conds[2].holds(33) && !conds[2].holds(9) && !conds[2].holds(10));
        assert!(conds[3].holds(17) && !conds[3].holds(2) && !conds[3].holds(14));
        assert!(conds[0].holds(6) && !conds[0].holds(7));
    }

    #[test]
    fn evaluation_matches_repcount() {
        let cache = CountCache::default();
        let ev = Evaluator::new(&cache, 120);
        let mut c = cursor("(1,8,8,0,0,0)(M) - 2*(2,3,6,0,0,0)(M/9)");
        let e = parse_texpr(&mut c).unwrap();
        let vals = ev.eval(&e).unwrap();
        let f = form([1, 8, 8, 0, 0, 0]);
        let g = form([2, 3, 6, 0, 0, 0]);
        for m in 0..120i64 {
            let second = if m % 9 == 0 { g.repcount(m / 9) as i64 } else { 0 };
            assert_eq!(vals[m as usize], Some(Value::from_integer(f.repcount(m) as i64 - 2 * second)));
        }
        assert_eq!(vals[25], Some(Value::from_integer(10)));
    }

    #[test]
    fn weighted_terms() {
        let cache = CountCache::default();
        let ev = Evaluator::new(&cache, 60);
        let mut c = cursor("16*(1,6,6,0,0,0)(M)/aut(1,6,6,0,0,0) + 16*(2,3,6,0,0,0)(M)/aut(2,3,6,0,0,0)");
        let explicit = ev.eval(&parse_texpr(&mut c).unwrap()).unwrap();
        let mut c = cursor("W(1,6,6,0,0,0)(M) + W(2,3,6,0,0,0)(M)");
        let genus = ev.eval(&parse_texpr(&mut c).unwrap()).unwrap();
        let mut c = cursor("EW(3,1)(M)");
        let signed = ev.eval(&parse_texpr(&mut c).unwrap()).unwrap();
        assert_eq!(explicit, genus);
        assert_eq!(genus, signed);
        let mut c = cursor("eps(2,3,6,0,0,0, 3)");
        assert!(parse_texpr(&mut c).is_err());
        let mut c = cursor("eps((2,3,6,0,0,0), 3) + eps((1,6,6,0,0,0), 3)");
        let e = ev.eval(&parse_texpr(&mut c).unwrap()).unwrap();
        assert_eq!(e[0], Some(Value::zero()));
    }
}
