//! Univariate rational functions in `p` over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Coefficients from the constant term up.
pub type Poly = Vec<BigInt>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("{0} does not factor over p, 2+p, 1+2p")]
    OutsideSpan(String),
    #[error("exponent {exponent} of {base} is not divisible by {k}")]
    Exponent { base: &'static str, exponent: i64, k: u32 },
    #[error("constant {constant} is not a {k}-th power")]
    Constant { constant: String, k: u32 },
}

fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn degree(a: &Poly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(out)
}

fn poly_neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_scale(a: &Poly, c: &BigInt) -> Poly {
    trim(a.iter().map(|x| x * c).collect())
}

fn content(a: &Poly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &Poly) -> Poly {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by nonzero `b`.
fn pseudo_rem(a: &Poly, b: &Poly) -> Poly {
    let db = degree(b).expect("nonzero divisor");
    let lead = b[db].clone();
    let mut r = a.clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let top = r[dr].clone();
        r = r.iter().map(|x| x * &lead).collect();
        for (i, y) in b.iter().enumerate() {
            r[i + dr - db] -= &top * y;
        }
        r = trim(r);
    }
    r
}

/// Primitive gcd with positive leading coefficient.
fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (primitive(a), primitive(b));
    while !y.is_empty() {
        let r = primitive(&pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    if x.last().is_some_and(|c| c.is_negative()) {
        x = poly_neg(&x);
    }
    x
}

/// Exact quotient `a / b` over the rationals, `None` if `b` does not
/// divide `a` or the quotient is not integral.
fn poly_div_exact(a: &Poly, b: &Poly) -> Option<Poly> {
    let db = degree(b)?;
    let Some(da) = degree(a) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let mut r: Vec<BigRational> = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let lead = BigRational::from_integer(b[db].clone());
    let mut q = vec![BigRational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let t = &r[k + db] / &lead;
        for (i, y) in b.iter().enumerate() {
            r[k + i] -= &t * BigRational::from_integer(y.clone());
        }
        q[k] = t;
    }
    if r.iter().any(|c| !c.is_zero()) || q.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(trim(q.into_iter().map(|c| c.to_integer()).collect()))
}

fn poly_to_string(a: &Poly) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => c.to_string(),
            1 if c.is_one() => "p".into(),
            1 => format!("{c}*p"),
            _ if c.is_one() => format!("p^{i}"),
            _ => format!("{c}*p^{i}"),
        };
        parts.push(mono);
    }
    parts.join(" + ").replace("+ -", "- ")
}

/// `num / den` in lowest terms: coprime polynomials, positive leading
/// denominator coefficient, no integer factor common to both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        let den = trim(den);
        assert!(!den.is_empty(), "zero denominator");
        let num = trim(num);
        if num.is_empty() {
            return RationalFunction { num, den: vec![BigInt::one()] };
        }
        let g = poly_gcd(&num, &den);
        let num = poly_div_exact(&num, &g).expect("gcd divides numerator");
        let den = poly_div_exact(&den, &g).expect("gcd divides denominator");
        let mut dc = content(&den);
        if den.last().is_some_and(|c| c.is_negative()) {
            dc = -dc;
        }
        let scale = BigRational::new(content(&num), dc.clone());
        let den_p: Poly = den.iter().map(|x| x / &dc).collect();
        let num = poly_scale(&primitive(&num), scale.numer());
        let den = poly_scale(&den_p, scale.denom());
        RationalFunction { num, den }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        RationalFunction::new(vec![c.into()], vec![BigInt::one()])
    }

    pub fn poly(coeffs: &[i64]) -> Self {
        RationalFunction::new(coeffs.iter().map(|c| BigInt::from(*c)).collect(), vec![BigInt::one()])
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = poly_add(&poly_mul(&self.num, &o.den), &poly_mul(&o.num, &self.den));
        RationalFunction::new(num, poly_mul(&self.den, &o.den))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: poly_neg(&self.num), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction::new(poly_mul(&self.num, &o.num), poly_mul(&self.den, &o.den))
    }

    /// `None` for the zero function.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RationalFunction::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut out = RationalFunction::constant(1);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Some(out)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.len() == 1 && self.den[0].is_one() {
            write!(f, "{}", poly_to_string(&self.num))
        } else {
            write!(f, "({}) / ({})", poly_to_string(&self.num), poly_to_string(&self.den))
        }
    }
}

/// The factor basis of the degree-3 parametrization.
const BASIS: [(&str, [i64; 2]); 3] = [("p", [0, 1]), ("2+p", [2, 1]), ("1+2p", [1, 2])];

/// Split `a` as `c * prod BASIS_i^(e_i)`; `None` if a cofactor remains.
fn factor_over_basis(a: &Poly) -> Option<(BigInt, [i64; 3])> {
    let mut rest = a.clone();
    let mut exps = [0i64; 3];
    for (i, (_, b)) in BASIS.iter().enumerate() {
        let b: Poly = b.iter().map(|c| BigInt::from(*c)).collect();
        while let Some(q) = poly_div_exact(&rest, &b) {
            if q.is_empty() {
                break;
            }
            rest = q;
            exps[i] += 1;
        }
    }
    if rest.len() == 1 {
        Some((rest[0].clone(), exps))
    } else {
        None
    }
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// The positive `k`-th root of `r`, assuming it factors over `p`, `2+p`
/// and `1+2p` with exponents and constant that are `k`-th powers.
pub fn rational_root(r: &RationalFunction, k: u32) -> Result<RationalFunction, RootError> {
    let (cn, en) = factor_over_basis(&r.num).ok_or_else(|| RootError::OutsideSpan(r.to_string()))?;
    let (cd, ed) = factor_over_basis(&r.den).ok_or_else(|| RootError::OutsideSpan(r.to_string()))?;
    let constant = BigRational::new(cn, cd);
    let not_power = || RootError::Constant { constant: constant.to_string(), k };
    let root_num = exact_root(constant.numer(), k).ok_or_else(not_power)?;
    let root_den = exact_root(constant.denom(), k).ok_or_else(not_power)?;
    let mut out = RationalFunction::new(vec![root_num], vec![root_den]);
    for i in 0..3 {
        let e = en[i] - ed[i];
        if e % k as i64 != 0 {
            return Err(RootError::Exponent { base: BASIS[i].0, exponent: e, k });
        }
        let b = RationalFunction::poly(&BASIS[i].1);
        out = out.mul(&b.pow(e / k as i64).expect("basis elements are nonzero"));
    }
    Ok(out)
}
