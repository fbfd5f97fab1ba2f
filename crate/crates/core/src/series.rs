//! Dense truncated power series in `q` with exact integer coefficients.
//!
//! A [`Series`] of truncation `N` stores the coefficients of `q^0 .. q^(N-1)`;
//! everything at or above `q^N` is unknown. Binary operations keep the smaller
//! truncation of their operands, so unknown coefficients never leak in as zeros.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("power substitution q -> q^k needs k >= 1")]
    ZeroPower,
    #[error("series with constant coefficient {0} is not invertible over the integers")]
    NonUnitConstant(BigInt),
    #[error("sift S[{t},{s}] needs 0 <= s < t")]
    BadSift { t: usize, s: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    pub fn zero(truncation: usize) -> Self {
        Series { coeffs: vec![BigInt::zero(); truncation] }
    }

    pub fn one(truncation: usize) -> Self {
        Self::constant(BigInt::one(), truncation)
    }

    pub fn constant(c: impl Into<BigInt>, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if truncation > 0 {
            s.coeffs[0] = c.into();
        }
        s
    }

    /// `c * q^k` at the given truncation.
    pub fn monomial(c: impl Into<BigInt>, k: usize, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if k < truncation {
            s.coeffs[k] = c.into();
        }
        s
    }

    /// The coefficient vector becomes the series; its length is the truncation.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        Series { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Series { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^k`; panics if `k` is at or beyond the truncation.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Keep only the first `n` coefficients (no-op when `n` is larger).
    pub fn truncate(&self, n: usize) -> Series {
        let n = n.min(self.truncation());
        Series { coeffs: self.coeffs[..n].to_vec() }
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.truncation().min(other.truncation());
        Series {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.truncation().min(other.truncation());
        Series {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Series {
        Series { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `q^k`, dropping whatever moves past the truncation.
    pub fn shift(&self, k: usize) -> Series {
        let n = self.truncation();
        let mut out = Series::zero(n);
        for i in 0..n.saturating_sub(k) {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    /// Cauchy product truncated to the smaller truncation.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.truncation().min(other.truncation());
        let a = nonzero_terms(&self.coeffs[..n]);
        let b = nonzero_terms(&other.coeffs[..n]);
        if let Some(out) = mul_small(&a, &b, n) {
            return out;
        }
        let mut acc = vec![BigInt::zero(); n];
        for (i, x) in &a {
            for (j, y) in &b {
                let k = i + j;
                if k >= n {
                    break;
                }
                acc[k] += *x * *y;
            }
        }
        Series { coeffs: acc }
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut result = Series::one(self.truncation());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitute `q -> q^k`; the truncation is preserved.
    pub fn compose_power(&self, k: usize) -> Result<Series, SeriesError> {
        if k == 0 {
            return Err(SeriesError::ZeroPower);
        }
        let n = self.truncation();
        let mut out = Series::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = i * k;
            if e >= n {
                break;
            }
            out.coeffs[e] = c.clone();
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn invert(&self) -> Result<Series, SeriesError> {
        let n = self.truncation();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(SeriesError::NonUnitConstant(c0.clone()));
        }
        let sign = c0.clone();
        let terms = nonzero_terms(&self.coeffs[1..]);
        let mut inv = vec![BigInt::zero(); n];
        inv[0] = sign.clone();
        for k in 1..n {
            let mut acc = BigInt::zero();
            for (i, a) in &terms {
                let i = i + 1;
                if i > k {
                    break;
                }
                if !inv[k - i].is_zero() {
                    acc += *a * &inv[k - i];
                }
            }
            inv[k] = -(acc * &sign);
        }
        Ok(Series { coeffs: inv })
    }

    /// `self / other`, where `other` must have a unit constant term.
    pub fn div(&self, other: &Series) -> Result<Series, SeriesError> {
        Ok(self.mul(&other.invert()?))
    }

    /// The sifting operator: coefficient `k` of the result is coefficient
    /// `t*k + s` of `self`.
    pub fn sift(&self, t: usize, s: usize) -> Result<Series, SeriesError> {
        if s >= t {
            return Err(SeriesError::BadSift { t, s });
        }
        let n = self.truncation();
        let out_len = if n > s { (n - 1 - s) / t + 1 } else { 0 };
        Ok(Series {
            coeffs: (0..out_len).map(|k| self.coeffs[t * k + s].clone()).collect(),
        })
    }

    /// Substitute `q -> -q`.
    pub fn alternate_sign(&self) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `None` when every stored coefficient is non-negative, otherwise the
    /// smallest exponent carrying a negative coefficient.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(Signed::is_negative)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Smallest exponent at which the two series differ, over the common truncation.
    pub fn first_difference(&self, other: &Series) -> Option<usize> {
        let n = self.truncation().min(other.truncation());
        (0..n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

fn nonzero_terms(c: &[BigInt]) -> Vec<(usize, &BigInt)> {
    c.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// i128 convolution when every term fits and no partial sum can overflow.
fn mul_small(a: &[(usize, &BigInt)], b: &[(usize, &BigInt)], n: usize) -> Option<Series> {
    let small = |v: &[(usize, &BigInt)]| -> Option<Vec<(usize, i64)>> {
        v.iter().map(|(i, x)| x.to_i64().map(|x| (*i, x))).collect()
    };
    let a = small(a)?;
    let b = small(b)?;
    let max_a = a.iter().map(|(_, x)| x.unsigned_abs() as u128).max().unwrap_or(0);
    let max_b = b.iter().map(|(_, x)| x.unsigned_abs() as u128).max().unwrap_or(0);
    let terms = a.len().min(b.len()) as u128;
    let bound = max_a.checked_mul(max_b)?.checked_mul(terms.max(1))?;
    if bound >= 1u128 << 126 {
        return None;
    }
    let mut acc = vec![0i128; n];
    for &(i, x) in &a {
        for &(j, y) in &b {
            let k = i + j;
            if k >= n {
                break;
            }
            acc[k] += x as i128 * y as i128;
        }
    }
    Some(Series { coeffs: acc.into_iter().map(BigInt::from).collect() })
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (trunc {})", self.truncation())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.truncation())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}
