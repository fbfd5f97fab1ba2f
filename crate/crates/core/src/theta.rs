//! Theta functions, the Euler product and eta-quotients as exact [`Series`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::forms::BinaryForm;
use crate::series::{Series, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("f(q^{0}, q^{1}) needs a positive exponent")]
    DegenerateTheta(usize, usize),
    #[error("unknown function {0:?}")]
    UnknownFunction(String),
    #[error("{name} takes {expected} argument(s), got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("eta factor {delta} does not divide level {level}")]
    NotDivisor { delta: u64, level: u64 },
    #[error("sum of delta*r_delta is {0}, not a multiple of 24")]
    NonIntegralOffset(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A substitution argument `±q^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QArg {
    pub negate: bool,
    pub power: usize,
}

impl QArg {
    pub const Q: QArg = QArg { negate: false, power: 1 };

    pub fn pow(power: usize) -> Self {
        QArg { negate: false, power }
    }

    pub fn neg_pow(power: usize) -> Self {
        QArg { negate: true, power }
    }
}

impl fmt::Display for QArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negate { "-" } else { "" };
        if self.power == 1 {
            write!(f, "{sign}q")
        } else {
            write!(f, "{sign}q^{}", self.power)
        }
    }
}

/// `f(a, b)` with `a = ±q^x`, `b = ±q^y`: the bilateral sum of
/// `a^(n(n-1)/2) b^(n(n+1)/2)` truncated below `q^n_terms`.
pub fn general_theta_signed(a: QArg, b: QArg, n_terms: usize) -> Result<Series, ThetaError> {
    let (x, y) = (a.power as i64, b.power as i64);
    if x + y == 0 {
        return Err(ThetaError::DegenerateTheta(a.power, b.power));
    }
    let bound = n_terms as i64;
    let mut coeffs = vec![BigInt::from(0); n_terms];
    let mut add_term = |n: i64| -> bool {
        let ta = n * (n - 1) / 2;
        let tb = n * (n + 1) / 2;
        let e = x * ta + y * tb;
        if e >= bound {
            return false;
        }
        let neg = (a.negate && ta % 2 != 0) ^ (b.negate && tb % 2 != 0);
        coeffs[e as usize] += if neg { -1 } else { 1 };
        true
    };
    // Both half-lines have non-decreasing exponents, so each walk stops at
    // the first term past the truncation.
    let mut n = 0;
    while add_term(n) {
        n += 1;
    }
    let mut n = -1;
    while add_term(n) {
        n -= 1;
    }
    Ok(Series::from_coeffs(coeffs))
}

/// `f(q^x, q^y)`.
pub fn general_theta(x: usize, y: usize, n_terms: usize) -> Result<Series, ThetaError> {
    general_theta_signed(QArg::pow(x), QArg::pow(y), n_terms)
}

/// `phi(q) = f(q, q)`.
pub fn phi(n_terms: usize) -> Series {
    general_theta(1, 1, n_terms).expect("nondegenerate")
}

/// `psi(q) = f(q, q^3)`.
pub fn psi(n_terms: usize) -> Series {
    general_theta(1, 3, n_terms).expect("nondegenerate")
}

fn euler_cache() -> &'static Mutex<HashMap<usize, Series>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Series>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `E(q) = prod_{j >= 1} (1 - q^j)`, expanded factor by factor.
pub fn euler(n_terms: usize) -> Series {
    if let Some(s) = euler_cache().lock().expect("euler cache poisoned").get(&n_terms) {
        return s.clone();
    }
    let mut c = vec![BigInt::from(0); n_terms];
    if n_terms > 0 {
        c[0] = BigInt::from(1);
    }
    for j in 1..n_terms {
        for k in (j..n_terms).rev() {
            let prev = c[k - j].clone();
            c[k] -= prev;
        }
    }
    let s = Series::from_coeffs(c);
    euler_cache()
        .lock()
        .expect("euler cache poisoned")
        .insert(n_terms, s.clone());
    s
}

/// Binary forms whose theta series are registered as built-in functions.
const CHI_FORM: (i64, i64, i64) = (4, 4, 6);
const U_FORM: (i64, i64, i64) = (3, 2, 5);

/// The built-in one-argument functions known to the identity language.
pub const BUILTINS: &[(&str, &str)] = &[
    ("phi", "phi(q) = f(q,q)"),
    ("psi", "psi(q) = f(q,q^3)"),
    ("E", "E(q) = prod (1 - q^j)"),
    ("chi", "theta series of 4x^2+4xz+6z^2"),
    ("u", "theta series of 3x^2+2xy+5y^2"),
    ("f", "general theta f(±q^x, ±q^y), two arguments"),
];

pub fn is_builtin(name: &str) -> bool {
    BUILTINS.iter().any(|(n, _)| *n == name)
}

/// Evaluate a built-in at the given substitution arguments.
pub fn named_function(name: &str, args: &[QArg], n_terms: usize) -> Result<Series, ThetaError> {
    let arity = |expected: usize| -> Result<(), ThetaError> {
        if args.len() == expected {
            Ok(())
        } else {
            Err(ThetaError::Arity { name: name.to_string(), expected, got: args.len() })
        }
    };
    if name == "f" {
        arity(2)?;
        return general_theta_signed(args[0], args[1], n_terms);
    }
    arity(1)?;
    let arg = args[0];
    let base = match name {
        "phi" => phi(n_terms),
        "psi" => psi(n_terms),
        "E" => euler(n_terms),
        "chi" => binary_theta(CHI_FORM, n_terms),
        "u" => binary_theta(U_FORM, n_terms),
        other => return Err(ThetaError::UnknownFunction(other.to_string())),
    };
    let base = if arg.negate { base.alternate_sign() } else { base };
    Ok(base.compose_power(arg.power)?)
}

fn binary_theta((a, b, c): (i64, i64, i64), n_terms: usize) -> Series {
    BinaryForm::new(a, b, c).expect("built-in form is definite").theta_series(n_terms)
}

/// `prod_{delta | level} eta(delta z)^(r_delta)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EtaQuotient {
    level: u64,
    exponents: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    pub fn new(level: u64, exponents: impl IntoIterator<Item = (u64, i64)>) -> Result<Self, ThetaError> {
        let mut map = BTreeMap::new();
        for (delta, r) in exponents {
            if delta == 0 || !level.is_multiple_of(delta) {
                return Err(ThetaError::NotDivisor { delta, level });
            }
            *map.entry(delta).or_insert(0) += r;
        }
        map.retain(|_, r| *r != 0);
        Ok(EtaQuotient { level, exponents: map })
    }

    pub fn trivial(level: u64) -> Self {
        EtaQuotient { level, exponents: BTreeMap::new() }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    /// The same quotient viewed at a multiple of its level.
    pub fn at_level(&self, level: u64) -> Result<Self, ThetaError> {
        EtaQuotient::new(level, self.exponents.iter().map(|(&d, &r)| (d, r)))
    }

    /// `sum delta * r_delta`, which is 24 times the order at infinity.
    pub fn weighted_sum(&self) -> i64 {
        self.exponents.iter().map(|(&d, &r)| d as i64 * r).sum()
    }

    /// Expand as `q^offset * s`, where `s` starts with `1`.
    pub fn expand(&self, n_terms: usize) -> Result<(i64, Series), ThetaError> {
        let sum = self.weighted_sum();
        if sum % 24 != 0 {
            return Err(ThetaError::NonIntegralOffset(sum));
        }
        let e = euler(n_terms);
        let mut num = Series::one(n_terms);
        let mut den = Series::one(n_terms);
        for (&delta, &r) in &self.exponents {
            let factor = e.compose_power(delta as usize)?.pow(r.unsigned_abs() as u32);
            if r > 0 {
                num = num.mul(&factor);
            } else {
                den = den.mul(&factor);
            }
        }
        Ok((sum / 24, num.div(&den)?))
    }
}

pub fn expand_eta_quotient(eq: &EtaQuotient, n_terms: usize) -> Result<(i64, Series), ThetaError> {
    eq.expand(n_terms)
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eta[")?;
        for (i, (d, r)) in self.exponents.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} @ {}", self.level)
    }
}
