//! The identity registry and the verification engine.
//!
//! A registry is plain text with one entry per identity:
//!
//! ```text
//! # comment
//! 2.9: series: psi(q^2)*phi(q)^2 = psi(q^2)*phi(q^3)^2 + 4*q*psi(q)*psi(q^3)*psi(q^6)
//! 2.18: ternary: (1,8,8,0,0,0)(M) = (1,6,6,0,0,0)(M) + 2*(2,3,6,0,0,0)(M)
//!     where M ≡ 1 mod 8
//! ```
//!
//! Lines that start with whitespace continue the previous entry.

pub mod expr;
pub mod lexer;
pub mod modeq;
pub mod ratfunc;
pub mod ternary;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::prover::{self, Combination, ProofCertificate, ProverError};
use crate::theta::EtaQuotient;
use expr::{parse_expr, EvalError, Expr};
use lexer::{tokenize, Cursor};
use modeq::{parse_mexpr, MExpr, ModEqCheck, ModEqError};
use ternary::{parse_conditions, parse_texpr, Condition, CountCache, Evaluator, TExpr, TernaryError, Value};

/// The registry shipped with the crate.
pub const DEFAULT_REGISTRY: &str = include_str!("../../data/registry.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegistryError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown primitive {name:?}")]
    UnknownPrimitive { name: String, line: usize, col: usize },
    #[error("{line}:{col}: malformed sextuple: {msg}")]
    MalformedSextuple { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown mode {mode:?}")]
    UnknownMode { mode: String, line: usize, col: usize },
    #[error("line {line}: duplicate identity {name:?} (first defined on line {first})")]
    Duplicate { name: String, line: usize, first: usize },
    #[error("identity {name:?} links to {link:?}, which is not a series identity in the registry")]
    MissingLink { name: String, link: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Series,
    Sift,
    Ternary,
    Positivity,
    ModEq3,
    EtaValence,
}

impl Mode {
    pub const ALL: [Mode; 6] = [Mode::Series, Mode::Sift, Mode::Ternary, Mode::Positivity, Mode::ModEq3, Mode::EtaValence];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Series => "series",
            Mode::Sift => "sift",
            Mode::Ternary => "ternary",
            Mode::Positivity => "positivity",
            Mode::ModEq3 => "modeq3",
            Mode::EtaValence => "eta-valence",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL.iter().copied().find(|m| m.as_str() == s).ok_or_else(|| s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    /// Used by both series and sift entries.
    Series { lhs: Expr, rhs: Expr },
    Ternary { lhs: TExpr, rhs: TExpr, conditions: Vec<Condition> },
    Positivity { expr: Expr, expect_positive: bool },
    ModEq { lhs: MExpr, rhs: MExpr, theta: Vec<String> },
    /// `rhs - lhs` as a combination of eta-quotients.
    Eta { combination: Combination },
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentitySpec {
    pub name: String,
    pub mode: Mode,
    pub body: Body,
    /// Line of the entry header in the registry text.
    pub line: usize,
}

impl fmt::Display for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: ", self.name, self.mode)?;
        match &self.body {
            Body::Series { lhs, rhs } => write!(f, "{lhs} = {rhs}"),
            Body::Ternary { lhs, rhs, conditions } => {
                let c: Vec<String> = conditions.iter().map(|c| c.to_string()).collect();
                write!(f, "{lhs} = {rhs} where {}", c.join(" and "))
            }
            Body::Positivity { expr, expect_positive } => {
                write!(f, "{expr} {}", if *expect_positive { "in P" } else { "not in P" })
            }
            Body::ModEq { lhs, rhs, theta } => {
                write!(f, "{lhs} = {rhs}")?;
                if !theta.is_empty() {
                    write!(f, " where theta {}", theta.join(", "))?;
                }
                Ok(())
            }
            Body::Eta { combination } => write!(f, "0 = {combination}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Registry {
    entries: Vec<IdentitySpec>,
}

impl Registry {
    pub fn entries(&self) -> &[IdentitySpec] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&IdentitySpec> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }
}

pub fn default_registry() -> Registry {
    parse_registry(DEFAULT_REGISTRY).expect("bundled registry parses")
}

/// Parse a single series expression such as `phi(q)^2 - phi(q^7)^2`.
pub fn parse_series_expr(text: &str) -> Result<Expr, RegistryError> {
    let mut c = cursor_for(text, (1, 1))?;
    let e = parse_expr(&mut c)?;
    c.expect_end()?;
    Ok(e)
}

/// Position after walking over `text` from `(line, col)`.
fn advance(mut line: usize, mut col: usize, text: &str) -> (usize, usize) {
    for ch in text.chars() {
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// Byte offset of the first free-standing `where`.
fn find_where(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    body.match_indices("where").map(|(i, _)| i).find(|&i| {
        let before = i == 0 || bytes[i - 1].is_ascii_whitespace();
        let after = i + 5 == bytes.len() || bytes[i + 5].is_ascii_whitespace();
        before && after
    })
}

struct RawEntry {
    name: String,
    mode: String,
    mode_pos: (usize, usize),
    body: String,
    body_pos: (usize, usize),
    line: usize,
}

fn split_entries(text: &str) -> Result<Vec<RawEntry>, RegistryError> {
    let mut out: Vec<RawEntry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        if content.starts_with(char::is_whitespace) {
            match out.last_mut() {
                Some(entry) => {
                    let (l, _) = advance(entry.body_pos.0, entry.body_pos.1, &entry.body);
                    // Pad so that positions inside the continuation stay exact.
                    for _ in l..line {
                        entry.body.push('\n');
                    }
                    entry.body.push_str(content);
                    continue;
                }
                None => {
                    return Err(RegistryError::Parse { line, col: 1, msg: "continuation line without an entry".into() })
                }
            }
        }
        let mut parts = content.splitn(3, ':');
        let name = parts.next().unwrap_or("").trim();
        let mode = parts.next();
        let body = parts.next();
        let (Some(mode), Some(body)) = (mode, body) else {
            return Err(RegistryError::Parse { line, col: 1, msg: "expected \"name: mode: body\"".into() });
        };
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(RegistryError::Parse { line, col: 1, msg: format!("bad identity name {name:?}") });
        }
        let first = content.find(':').unwrap() + 1;
        let mode_byte = first + (mode.len() - mode.trim_start().len());
        let body_byte = first + mode.len() + 1;
        let col_of = |byte: usize| content[..byte].chars().count() + 1;
        out.push(RawEntry {
            name: name.to_string(),
            mode: mode.trim().to_string(),
            mode_pos: (line, col_of(mode_byte)),
            body: body.to_string(),
            body_pos: (line, col_of(body_byte)),
            line,
        });
    }
    Ok(out)
}

fn parse_equation<T>(
    c: &mut Cursor,
    side: impl Fn(&mut Cursor) -> Result<T, RegistryError>,
) -> Result<(T, T), RegistryError> {
    let lhs = side(c)?;
    c.expect_punct("=")?;
    let rhs = side(c)?;
    Ok((lhs, rhs))
}

fn cursor_for(text: &str, pos: (usize, usize)) -> Result<Cursor, RegistryError> {
    let toks = tokenize(text, pos.0, pos.1)?;
    Ok(Cursor::new(toks, advance(pos.0, pos.1, text)))
}

/// `eta[d:r, ...]` terms with integer or `a/b` coefficients and constants.
fn parse_eta_side(c: &mut Cursor) -> Result<Vec<(BigRational, Option<Vec<(u64, i64)>>)>, RegistryError> {
    let mut terms = Vec::new();
    let mut sign = if c.eat_punct("-") { -1 } else { 1 };
    loop {
        let mut coeff = BigRational::from_integer(BigInt::from(sign));
        let mut eta = None;
        loop {
            if c.eat_ident("eta") {
                if eta.is_some() {
                    return Err(c.error("at most one eta-quotient per term"));
                }
                c.expect_punct("[")?;
                let mut exps = Vec::new();
                loop {
                    let d = c.expect_int()?;
                    c.expect_punct(":")?;
                    let r = c.expect_signed_int()?;
                    if d < 1 {
                        return Err(c.error("eta factor must be positive"));
                    }
                    exps.push((d as u64, r));
                    if !c.eat_punct(",") {
                        break;
                    }
                }
                c.expect_punct("]")?;
                eta = Some(exps);
            } else {
                coeff *= BigRational::from_integer(BigInt::from(c.expect_int()?));
            }
            if c.eat_punct("/") {
                let d = c.expect_int()?;
                if d == 0 {
                    return Err(c.error("division by zero"));
                }
                coeff /= BigRational::from_integer(BigInt::from(d));
            }
            if !c.eat_punct("*") {
                break;
            }
        }
        terms.push((coeff, eta));
        if c.eat_punct("+") {
            sign = 1;
        } else if c.eat_punct("-") {
            sign = -1;
        } else {
            return Ok(terms);
        }
    }
}

fn parse_entry(raw: &RawEntry) -> Result<IdentitySpec, RegistryError> {
    let mode: Mode = raw.mode.parse().map_err(|mode| RegistryError::UnknownMode {
        mode,
        line: raw.mode_pos.0,
        col: raw.mode_pos.1,
    })?;
    let (main, clause) = match find_where(&raw.body) {
        Some(i) => {
            let clause_pos = advance(raw.body_pos.0, raw.body_pos.1, &raw.body[..i + 5]);
            (&raw.body[..i], Some((&raw.body[i + 5..], clause_pos)))
        }
        None => (raw.body.as_str(), None),
    };
    let mut c = cursor_for(main, raw.body_pos)?;
    let no_clause = |clause: &Option<(&str, (usize, usize))>| -> Result<(), RegistryError> {
        match clause {
            Some((_, (line, col))) => {
                Err(RegistryError::Parse { line: *line, col: *col, msg: format!("{mode} entries take no where clause") })
            }
            None => Ok(()),
        }
    };
    let body = match mode {
        Mode::Series | Mode::Sift => {
            no_clause(&clause)?;
            let (lhs, rhs) = parse_equation(&mut c, parse_expr)?;
            c.expect_end()?;
            let sifted = lhs.has_sift() || rhs.has_sift();
            if sifted != (mode == Mode::Sift) {
                let msg = if sifted { "series entry uses a sift; use mode sift" } else { "sift entry without a sift operator" };
                return Err(RegistryError::Parse { line: raw.line, col: 1, msg: msg.into() });
            }
            Body::Series { lhs, rhs }
        }
        Mode::Positivity => {
            no_clause(&clause)?;
            let expr = parse_expr(&mut c)?;
            let expect_positive = !c.eat_ident("not");
            c.expect_ident("in")?;
            c.expect_ident("P")?;
            c.expect_end()?;
            Body::Positivity { expr, expect_positive }
        }
        Mode::Ternary => {
            let (lhs, rhs) = parse_equation(&mut c, parse_texpr)?;
            c.expect_end()?;
            let conditions = match clause {
                Some((text, pos)) => {
                    let mut cc = cursor_for(text, pos)?;
                    let conds = parse_conditions(&mut cc)?;
                    cc.expect_end()?;
                    conds
                }
                None => Vec::new(),
            };
            Body::Ternary { lhs, rhs, conditions }
        }
        Mode::ModEq3 => {
            let (lhs, rhs) = parse_equation(&mut c, parse_mexpr)?;
            c.expect_end()?;
            let mut theta = Vec::new();
            if let Some((text, (line, col))) = clause {
                let mut words = text.split(|ch: char| ch.is_whitespace() || ch == ',').filter(|w| !w.is_empty());
                if words.next() != Some("theta") {
                    return Err(RegistryError::Parse { line, col, msg: "expected \"theta NAME, ...\"".into() });
                }
                theta = words.map(str::to_string).collect();
            }
            Body::ModEq { lhs, rhs, theta }
        }
        Mode::EtaValence => {
            let (lhs, rhs) = parse_equation(&mut c, parse_eta_side)?;
            c.expect_end()?;
            let Some((text, pos)) = clause else {
                return Err(RegistryError::Parse { line: raw.line, col: 1, msg: "eta-valence needs \"where level N\"".into() });
            };
            let mut cc = cursor_for(text, pos)?;
            cc.expect_ident("level")?;
            let level = cc.expect_int()?;
            cc.expect_end()?;
            if level < 1 {
                return Err(RegistryError::Parse { line: pos.0, col: pos.1, msg: "level must be positive".into() });
            }
            let mut comb = Combination::new(level as u64);
            let negated = lhs.into_iter().map(|(c, e)| (-c, e));
            for (coeff, eta) in rhs.into_iter().chain(negated) {
                match eta {
                    Some(exps) => {
                        let q = EtaQuotient::new(level as u64, exps).map_err(|e| RegistryError::Parse {
                            line: raw.line,
                            col: 1,
                            msg: e.to_string(),
                        })?;
                        comb = comb.rational_term(coeff, q);
                    }
                    None => comb.constant += coeff,
                }
            }
            Body::Eta { combination: comb }
        }
    };
    Ok(IdentitySpec { name: raw.name.clone(), mode, body, line: raw.line })
}

/// Parse a registry; names must be unique and theta links must resolve.
pub fn parse_registry(text: &str) -> Result<Registry, RegistryError> {
    let mut entries = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for raw in split_entries(text)? {
        if let Some(first) = seen.get(&raw.name) {
            return Err(RegistryError::Duplicate { name: raw.name.clone(), line: raw.line, first: *first });
        }
        seen.insert(raw.name.clone(), raw.line);
        entries.push(parse_entry(&raw)?);
    }
    let registry = Registry { entries };
    for e in registry.entries() {
        if let Body::ModEq { theta, .. } = &e.body {
            for link in theta {
                let ok = registry.get(link).is_some_and(|t| matches!(t.body, Body::Series { .. }));
                if !ok {
                    return Err(RegistryError::MissingLink { name: e.name.clone(), link: link.clone() });
                }
            }
        }
    }
    Ok(registry)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("{name} is a {mode} identity")]
    WrongMode { name: String, mode: Mode },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Ternary(#[from] TernaryError),
    #[error(transparent)]
    ModEq(#[from] ModEqError),
    #[error(transparent)]
    Prover(#[from] ProverError),
    #[error("no identity named {0:?}")]
    Unknown(String),
}

fn wrong_mode(spec: &IdentitySpec) -> VerifyError {
    VerifyError::WrongMode { name: spec.name.clone(), mode: spec.mode }
}

/// A coefficient where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Compare both sides through `q^(n-1)`; `None` means equal.
pub fn verify_series(spec: &IdentitySpec, n: usize) -> Result<Option<Mismatch>, VerifyError> {
    let Body::Series { lhs, rhs } = &spec.body else {
        return Err(wrong_mode(spec));
    };
    let (a, b) = rayon::join(|| lhs.eval(n), || rhs.eval(n));
    let (a, b) = (a?, b?);
    Ok(a.first_difference(&b).map(|k| Mismatch { exponent: k, lhs: a.coeff(k).clone(), rhs: b.coeff(k).clone() }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryCheck {
    /// Number of qualifying `M` that were compared.
    pub checked: usize,
    /// First `M` where the sides differ, with both values.
    pub violation: Option<(i64, Value, Value)>,
}

/// Compare both sides at every qualifying `1 <= M <= mmax`.
pub fn verify_ternary(spec: &IdentitySpec, mmax: i64) -> Result<TernaryCheck, VerifyError> {
    verify_ternary_with(spec, mmax, CountCache::global())
}

pub fn verify_ternary_with(spec: &IdentitySpec, mmax: i64, cache: &CountCache) -> Result<TernaryCheck, VerifyError> {
    let Body::Ternary { lhs, rhs, conditions } = &spec.body else {
        return Err(wrong_mode(spec));
    };
    let n = mmax.max(0) as usize + 1;
    let ev = Evaluator::new(cache, n);
    let a = ev.eval(lhs)?;
    let b = ev.eval(rhs)?;
    let mut checked = 0;
    for m in 1..n as i64 {
        if !conditions.iter().all(|c| c.holds(m)) {
            continue;
        }
        let (Some(x), Some(y)) = (a[m as usize], b[m as usize]) else {
            return Err(TernaryError::DivisionByZero(m).into());
        };
        checked += 1;
        if x != y {
            return Ok(TernaryCheck { checked, violation: Some((m, x, y)) });
        }
    }
    Ok(TernaryCheck { checked, violation: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityCheck {
    pub limit: usize,
    /// Smallest exponent with a negative coefficient.
    pub witness: Option<(usize, BigInt)>,
}

impl PositivityCheck {
    pub fn is_nonnegative(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn check_positivity(expr: &Expr, limit: usize) -> Result<PositivityCheck, VerifyError> {
    let s = expr.eval(limit)?;
    let witness = s.first_negative().map(|k| (k, s.coeff(k).clone()));
    Ok(PositivityCheck { limit, witness })
}

pub fn verify_positivity(spec: &IdentitySpec, limit: usize) -> Result<PositivityCheck, VerifyError> {
    let Body::Positivity { expr, .. } = &spec.body else {
        return Err(wrong_mode(spec));
    };
    check_positivity(expr, limit)
}

/// `psi(q)(phi(q)^2 - phi(q^S)^2)`.
pub fn positivity_expr(s: usize) -> Expr {
    let text = format!("psi(q)*(phi(q)^2 - phi(q^{s})^2)");
    let mut c = cursor_for(&text, (1, 1)).expect("fixed text tokenizes");
    parse_expr(&mut c).expect("fixed text parses")
}

pub fn verify_positivity_s(s: usize, limit: usize) -> Result<PositivityCheck, VerifyError> {
    check_positivity(&positivity_expr(s), limit)
}

pub fn verify_modeq3(spec: &IdentitySpec) -> Result<ModEqCheck, VerifyError> {
    let Body::ModEq { lhs, rhs, .. } = &spec.body else {
        return Err(wrong_mode(spec));
    };
    Ok(modeq::check(lhs, rhs)?)
}

pub fn prove_entry(spec: &IdentitySpec) -> Result<ProofCertificate, VerifyError> {
    let Body::Eta { combination } = &spec.body else {
        return Err(wrong_mode(spec));
    };
    Ok(prover::prove(combination)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub terms: usize,
    pub mmax: i64,
    pub limit: usize,
    /// Truncation for the theta-function cross-check of modular equations.
    pub link_terms: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { terms: 500, mmax: 10_000, limit: 1000, link_terms: 300 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub mode: Mode,
    pub params: String,
    pub status: Status,
    pub witness: String,
    pub elapsed_ms: u128,
}

fn outcome_of(spec: &IdentitySpec, registry: &Registry, cfg: &VerifyConfig) -> (String, Result<(Status, String), VerifyError>) {
    match spec.mode {
        Mode::Series | Mode::Sift => {
            let params = format!("N={}", cfg.terms);
            let r = verify_series(spec, cfg.terms).map(|m| match m {
                None => (Status::Pass, String::new()),
                Some(m) => (Status::Fail, format!("q^{}: lhs {} rhs {}", m.exponent, m.lhs, m.rhs)),
            });
            (params, r)
        }
        Mode::Ternary => {
            let params = format!("Mmax={}", cfg.mmax);
            let r = verify_ternary(spec, cfg.mmax).map(|t| match t.violation {
                None => (Status::Pass, format!("{} values", t.checked)),
                Some((m, x, y)) => (Status::Fail, format!("M={m}: lhs {x} rhs {y}")),
            });
            (params, r)
        }
        Mode::Positivity => {
            let params = format!("limit={}", cfg.limit);
            let expect = matches!(spec.body, Body::Positivity { expect_positive: true, .. });
            let r = verify_positivity(spec, cfg.limit).map(|p| {
                let witness = p.witness.as_ref().map(|(k, c)| format!("q^{k}: {c}")).unwrap_or_default();
                let status = if p.is_nonnegative() == expect { Status::Pass } else { Status::Fail };
                (status, witness)
            });
            (params, r)
        }
        Mode::ModEq3 => {
            let params = format!("links N={}", cfg.link_terms);
            let r = verify_modeq3(spec).and_then(|chk| {
                if !chk.holds() {
                    return Ok((Status::Fail, format!("lhs {} rhs {}", chk.lhs, chk.rhs)));
                }
                let Body::ModEq { theta, .. } = &spec.body else { unreachable!() };
                for link in theta {
                    let target = registry.get(link).ok_or_else(|| VerifyError::Unknown(link.clone()))?;
                    if let Some(m) = verify_series(target, cfg.link_terms)? {
                        return Ok((Status::Fail, format!("theta form {link} differs at q^{}", m.exponent)));
                    }
                }
                Ok((Status::Pass, format!("both sides {}", chk.lhs)))
            });
            (params, r)
        }
        Mode::EtaValence => {
            let Body::Eta { combination } = &spec.body else { unreachable!() };
            let params = format!("level={}", combination.level);
            let r = prove_entry(spec).map(|cert| match cert.verdict {
                prover::Verdict::Proved => (Status::Pass, format!("B={} verified={}", cert.bound, cert.verified)),
                prover::Verdict::RefutedAt(k) => (Status::Fail, format!("q^{k} nonzero, B={}", cert.bound)),
            });
            (params, r)
        }
    }
}

/// Run one entry in its own mode.
pub fn verify(spec: &IdentitySpec, registry: &Registry, cfg: &VerifyConfig) -> Outcome {
    let start = Instant::now();
    let (params, result) = outcome_of(spec, registry, cfg);
    let (status, witness) = match result {
        Ok(r) => r,
        Err(e) => (Status::Error, e.to_string()),
    };
    Outcome {
        name: spec.name.clone(),
        mode: spec.mode,
        params,
        status,
        witness,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Order names like `2.9 < 2.10 < 2.S24`, digit runs compared numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (x, y) = (chunks(a), chunks(b));
    for ((dx, cx), (dy, cy)) in x.iter().zip(y.iter()) {
        let ord = match (dx, dy) {
            (true, true) => {
                let (tx, ty) = (cx.trim_start_matches('0'), cy.trim_start_matches('0'));
                tx.len().cmp(&ty.len()).then_with(|| tx.cmp(ty))
            }
            _ => cx.cmp(cy),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    x.len().cmp(&y.len()).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<Outcome>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }

    /// Failures and errors.
    pub fn failed(&self) -> usize {
        self.rows.len() - self.passed()
    }

    pub fn summary(&self) -> String {
        format!("{}/{}/{}", self.passed(), self.failed(), self.rows.len())
    }

    pub fn to_table(&self) -> String {
        let header = ["name", "mode", "params", "verdict", "witness", "ms"];
        let rows: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.name.clone(),
                    r.mode.to_string(),
                    r.params.clone(),
                    r.status.to_string(),
                    r.witness.clone(),
                    r.elapsed_ms.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row.iter()) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let fmt_row = |cells: Vec<&str>| -> String {
            let padded: Vec<String> =
                cells.iter().zip(widths.iter()).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = fmt_row(header.to_vec());
        out.push('\n');
        for row in &rows {
            out.push_str(&fmt_row(row.iter().map(String::as_str).collect()));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "mode", "params", "verdict", "witness", "ms"]).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.name.as_str(),
                r.mode.as_str(),
                &r.params,
                &r.status.to_string(),
                &r.witness,
                &r.elapsed_ms.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

/// Run every entry, in parallel, reporting rows in name order.
pub fn run_suite(registry: &Registry, cfg: &VerifyConfig) -> Report {
    run_selected(registry, cfg, |_| true)
}

pub fn run_selected(registry: &Registry, cfg: &VerifyConfig, keep: impl Fn(&IdentitySpec) -> bool + Sync) -> Report {
    let mut rows: Vec<Outcome> =
        registry.entries().par_iter().filter(|e| keep(e)).map(|e| verify(e, registry, cfg)).collect();
    rows.sort_by(|a, b| natural_cmp(&a.name, &b.name));
    Report { rows }
}
