//! Positive definite integral binary and ternary quadratic forms.
//!
//! A ternary form is the sextuple `(a,b,c,d,e,f)` standing for
//! `ax^2 + by^2 + cz^2 + dyz + ezx + fxy`. Its doubled Gram matrix is
//!
//! ```text
//! [2a  f  e]
//! [ f 2b  d]
//! [ e  d 2c]
//! ```
//!
//! and its discriminant is half the determinant of that matrix.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{gcd, isqrt};
use crate::series::Series;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(String),
    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("malformed form literal {0:?}: {1}")]
    Parse(String, String),
    #[error("binary discriminant {0} must be negative and congruent to 0 or 1 mod 4")]
    BadBinaryDiscriminant(i64),
}

pub type Vector3 = [i64; 3];
pub type Matrix3 = [[i64; 3]; 3];

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

impl TernaryForm {
    pub fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Result<Self, FormError> {
        let form = TernaryForm { a, b, c, d, e, f };
        if form.is_positive_definite() {
            Ok(form)
        } else {
            Err(FormError::NotPositiveDefinite(form.to_string()))
        }
    }

    pub fn diagonal(a: i64, b: i64, c: i64) -> Result<Self, FormError> {
        Self::new(a, b, c, 0, 0, 0)
    }

    /// Unchecked constructor for internal candidates already known to be definite.
    pub(crate) fn raw(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Self {
        TernaryForm { a, b, c, d, e, f }
    }

    pub fn sextuple(&self) -> [i64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn gram(&self) -> Matrix3 {
        [
            [2 * self.a, self.f, self.e],
            [self.f, 2 * self.b, self.d],
            [self.e, self.d, 2 * self.c],
        ]
    }

    pub fn from_gram(g: &Matrix3) -> Self {
        TernaryForm::raw(g[0][0] / 2, g[1][1] / 2, g[2][2] / 2, g[1][2], g[0][2], g[0][1])
    }

    pub fn discriminant(&self) -> i64 {
        let TernaryForm { a, b, c, d, e, f } = *self;
        4 * a * b * c + d * e * f - a * d * d - b * e * e - c * f * f
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && 4 * self.a * self.b - self.f * self.f > 0 && self.discriminant() > 0
    }

    pub fn is_primitive(&self) -> bool {
        self.sextuple().iter().fold(0, |g, &x| gcd(g, x)) == 1
    }

    pub fn value(&self, v: Vector3) -> i64 {
        let [x, y, z] = v;
        self.a * x * x + self.b * y * y + self.c * z * z + self.d * y * z + self.e * z * x + self.f * x * y
    }

    /// `u^T G v` with the doubled Gram matrix, so `bilinear(v, v) = 2 * value(v)`.
    pub fn bilinear(&self, u: Vector3, v: Vector3) -> i64 {
        let g = self.gram();
        let mut s = 0;
        for i in 0..3 {
            for j in 0..3 {
                s += u[i] * g[i][j] * v[j];
            }
        }
        s
    }

    /// The form `v -> self(U v)`; columns of `U` are the images of the basis vectors.
    pub fn transform(&self, u: &Matrix3) -> TernaryForm {
        let g = self.gram();
        let mut out = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0;
                for k in 0..3 {
                    for l in 0..3 {
                        s += u[k][i] * g[k][l] * u[l][j];
                    }
                }
                out[i][j] = s;
            }
        }
        TernaryForm::from_gram(&out)
    }

    /// Visit every lattice vector with `value <= bound`.
    ///
    /// The ranges come from completing the square: for fixed `z` the minimum
    /// over `x, y` is `z^2 * disc / (4ab - f^2)`, and for fixed `y, z` the
    /// remaining function of `x` is a convex quadratic.
    pub fn for_each_vector<F: FnMut(Vector3, i64)>(&self, bound: i64, mut visit: F) {
        if bound < 0 {
            return;
        }
        let TernaryForm { a, b, c, d, e, f } = *self;
        let p = 4 * a * b - f * f;
        let disc = self.discriminant();
        let zmax = isqrt(bound * p / disc);
        for z in -zmax..=zmax {
            // 4a * (value minimized over x) = p y^2 + ly y + lc, must be <= 4a * bound
            let ly = (4 * a * d - 2 * f * e) * z;
            let lc = (4 * a * c - e * e) * z * z;
            let cap = 4 * a * bound;
            let yfits = |y: i64| p * y * y + ly * y + lc <= cap;
            let y0 = div_round(-ly, 2 * p);
            let mut ys = Vec::new();
            let mut y = y0;
            while yfits(y) {
                ys.push(y);
                y += 1;
            }
            let mut y = y0 - 1;
            while yfits(y) {
                ys.push(y);
                y -= 1;
            }
            for y in ys {
                let bx = f * y + e * z;
                let cx = b * y * y + d * y * z + c * z * z;
                let x0 = div_round(-bx, 2 * a);
                let mut x = x0;
                loop {
                    let v = a * x * x + bx * x + cx;
                    if v > bound {
                        break;
                    }
                    visit([x, y, z], v);
                    x += 1;
                }
                let mut x = x0 - 1;
                loop {
                    let v = a * x * x + bx * x + cx;
                    if v > bound {
                        break;
                    }
                    visit([x, y, z], v);
                    x -= 1;
                }
            }
        }
    }

    pub fn short_vectors(&self, bound: i64) -> Vec<(Vector3, i64)> {
        let mut out = Vec::new();
        self.for_each_vector(bound, |v, q| out.push((v, q)));
        out
    }

    /// Number of integer triples with `value = m`.
    pub fn repcount(&self, m: i64) -> u64 {
        if m < 0 {
            return 0;
        }
        let TernaryForm { a, b, c, d, e, f } = *self;
        let p = 4 * a * b - f * f;
        let disc = self.discriminant();
        let zmax = isqrt(m * p / disc);
        let mut count = 0u64;
        for z in -zmax..=zmax {
            let ly = (4 * a * d - 2 * f * e) * z;
            let lc = (4 * a * c - e * e) * z * z;
            let cap = 4 * a * m;
            let yfits = |y: i64| p * y * y + ly * y + lc <= cap;
            let y0 = div_round(-ly, 2 * p);
            let mut visit_y = |y: i64| {
                let bx = f * y + e * z;
                let cx = b * y * y + d * y * z + c * z * z;
                // a x^2 + bx x + (cx - m) = 0
                let delta = bx * bx - 4 * a * (cx - m);
                if delta < 0 {
                    return;
                }
                let s = isqrt(delta);
                if s * s != delta {
                    return;
                }
                let hits = |num: i64| num % (2 * a) == 0;
                if s == 0 {
                    count += hits(-bx) as u64;
                } else {
                    count += hits(-bx + s) as u64 + hits(-bx - s) as u64;
                }
            };
            let mut y = y0;
            while yfits(y) {
                visit_y(y);
                y += 1;
            }
            let mut y = y0 - 1;
            while yfits(y) {
                visit_y(y);
                y -= 1;
            }
        }
        count
    }

    /// Representation numbers `r(0), .., r(n-1)`.
    pub fn theta_counts(&self, n: usize) -> Vec<u64> {
        let mut counts = vec![0u64; n];
        if n == 0 {
            return counts;
        }
        self.for_each_vector(n as i64 - 1, |_, q| counts[q as usize] += 1);
        counts
    }

    pub fn theta_series(&self, n: usize) -> Series {
        Series::from_coeffs(self.theta_counts(n).into_iter().map(BigInt::from).collect())
    }

    fn basis_candidates(&self, target: &TernaryForm) -> [Vec<Vector3>; 3] {
        let bound = target.a.max(target.b).max(target.c);
        let mut lists: [Vec<Vector3>; 3] = Default::default();
        self.for_each_vector(bound, |v, q| {
            if q == target.a {
                lists[0].push(v);
            }
            if q == target.b {
                lists[1].push(v);
            }
            if q == target.c {
                lists[2].push(v);
            }
        });
        lists
    }

    /// Visit every `U` with `self.transform(U) == target`, stopping when the
    /// visitor returns `false`.
    fn search_isometries<F: FnMut(&Matrix3) -> bool>(&self, target: &TernaryForm, mut visit: F) {
        let [la, lb, lc] = self.basis_candidates(target);
        for &u1 in &la {
            for &u2 in &lb {
                if self.bilinear(u1, u2) != target.f {
                    continue;
                }
                for &u3 in &lc {
                    if self.bilinear(u1, u3) != target.e || self.bilinear(u2, u3) != target.d {
                        continue;
                    }
                    let u = [
                        [u1[0], u2[0], u3[0]],
                        [u1[1], u2[1], u3[1]],
                        [u1[2], u2[2], u3[2]],
                    ];
                    if !visit(&u) {
                        return;
                    }
                }
            }
        }
    }

    /// An integral change of variables taking `self` to `target`, if one exists.
    pub fn find_equivalence(&self, target: &TernaryForm) -> Result<Option<Matrix3>, FormError> {
        let (d1, d2) = (self.discriminant(), target.discriminant());
        if d1 != d2 {
            return Err(FormError::DiscriminantMismatch(d1, d2));
        }
        let mut found = None;
        self.search_isometries(target, |u| {
            found = Some(*u);
            false
        });
        Ok(found)
    }

    /// Number of integral automorphs, `|{U in GL3(Z) : U^T G U = G}|`.
    pub fn aut_count(&self) -> u64 {
        let mut n = 0;
        self.search_isometries(self, |_| {
            n += 1;
            true
        });
        n
    }

    /// Sort key used for canonical class representatives.
    pub(crate) fn canonical_key(&self) -> (i64, i64, i64, i64, i64, i64, bool, bool, bool) {
        (
            self.a,
            self.b,
            self.c,
            self.d.abs(),
            self.e.abs(),
            self.f.abs(),
            self.d < 0,
            self.e < 0,
            self.f < 0,
        )
    }

    /// Best of the four sign patterns reachable by negating coordinates.
    fn sign_normalized(&self) -> TernaryForm {
        let mut best = *self;
        for (sx, sy, sz) in [(1, 1, -1), (1, -1, 1), (-1, 1, 1)] {
            let cand = TernaryForm::raw(
                self.a,
                self.b,
                self.c,
                self.d * sy * sz,
                self.e * sx * sz,
                self.f * sx * sy,
            );
            if cand.canonical_key() < best.canonical_key() {
                best = cand;
            }
        }
        best
    }
}

pub fn ternary_equivalent(f: &TernaryForm, g: &TernaryForm) -> Result<bool, FormError> {
    Ok(f.find_equivalence(g)?.is_some())
}

fn div_round(num: i64, den: i64) -> i64 {
    // nearest integer to num/den for den > 0
    (2 * num + den).div_euclid(2 * den)
}

/// One representative per GL3(Z)-class of positive definite ternary forms of
/// discriminant `disc`, sorted by (a, b, c, |d|, |e|, |f|, signs).
///
/// Candidates satisfy `0 < a <= b <= c`, `|d| <= b`, `|e|, |f| <= a` and
/// `abc <= disc/2`, a superset of Minkowski-reduced forms; `d` is solved from
/// the discriminant equation. Classes are separated by explicit equivalence.
pub fn enumerate_ternary_classes(disc: i64) -> Vec<TernaryForm> {
    if disc <= 0 {
        return Vec::new();
    }
    let half = disc / 2;
    let mut cands: HashSet<TernaryForm> = HashSet::new();
    let mut a = 1;
    while a * a * a <= half {
        let mut b = a;
        while a * b * b <= half {
            let mut c = b;
            while a * b * c <= half {
                for e in -a..=a {
                    for f in -a..=a {
                        // a d^2 - e f d + (disc - 4abc + b e^2 + c f^2) = 0
                        let k = disc - 4 * a * b * c + b * e * e + c * f * f;
                        let delta = e * e * f * f - 4 * a * k;
                        if delta < 0 {
                            continue;
                        }
                        let s = isqrt(delta);
                        if s * s != delta {
                            continue;
                        }
                        for num in [e * f + s, e * f - s] {
                            if num % (2 * a) != 0 {
                                continue;
                            }
                            let d = num / (2 * a);
                            if d.abs() > b {
                                continue;
                            }
                            let form = TernaryForm::raw(a, b, c, d, e, f);
                            if form.is_positive_definite() {
                                cands.insert(form.sign_normalized());
                            }
                        }
                    }
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    let mut cands: Vec<TernaryForm> = cands.into_iter().collect();
    cands.sort_by_key(TernaryForm::canonical_key);
    dedup_classes(cands)
}

/// Keep the first member of every equivalence class, preserving order.
fn dedup_classes(sorted: Vec<TernaryForm>) -> Vec<TernaryForm> {
    const PREFIX: usize = 48;
    let prefixes: Vec<Vec<u64>> = sorted.par_iter().map(|f| f.theta_counts(PREFIX)).collect();
    let mut buckets: HashMap<&[u64], Vec<usize>> = HashMap::new();
    let mut reps = Vec::new();
    for (i, form) in sorted.iter().enumerate() {
        let bucket = buckets.entry(&prefixes[i]).or_default();
        let known = bucket
            .iter()
            .any(|&j| ternary_equivalent(&sorted[j], form).expect("same discriminant"));
        if !known {
            bucket.push(i);
            reps.push(*form);
        }
    }
    reps
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{},{})", self.a, self.b, self.c, self.d, self.e, self.f)
    }
}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TernaryForm {
    type Err = FormError;

    /// Accepts `a,b,c,d,e,f`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, FormError> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(FormError::Parse(s.to_string(), format!("expected 6 entries, found {}", parts.len())));
        }
        let mut v = [0i64; 6];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| FormError::Parse(s.to_string(), format!("{p:?} is not an integer")))?;
        }
        TernaryForm::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }
}

/// `ax^2 + bxy + cy^2`, positive definite.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, FormError> {
        let form = BinaryForm { a, b, c };
        if a > 0 && form.discriminant() < 0 {
            Ok(form)
        } else {
            Err(FormError::NotPositiveDefinite(form.to_string()))
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b), self.c) == 1
    }

    pub fn value(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    pub fn is_reduced(&self) -> bool {
        let BinaryForm { a, b, c } = *self;
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// The reduced form properly equivalent (under SL2(Z)) to `self`.
    pub fn reduce(&self) -> BinaryForm {
        let disc = self.discriminant();
        let BinaryForm { mut a, mut b, mut c } = *self;
        loop {
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
            } else if b > a || b <= -a {
                // translate x -> x + k y so that -a < b <= a
                let k = (a - b).div_euclid(2 * a);
                b += 2 * k * a;
                c = (b * b - disc) / (4 * a);
            } else {
                break;
            }
        }
        if a == c && b < 0 {
            b = -b;
        }
        BinaryForm { a, b, c }
    }

    /// Lattice points with `value < n`, as a series of representation numbers.
    pub fn theta_series(&self, n: usize) -> Series {
        let mut counts = vec![0u64; n];
        if n > 0 {
            let bound = n as i64 - 1;
            let dabs = -self.discriminant();
            // 4a * value = (2ax + by)^2 + |D| y^2
            let ymax = isqrt(4 * self.a * bound / dabs);
            for y in -ymax..=ymax {
                let x0 = div_round(-self.b * y, 2 * self.a);
                let mut x = x0;
                while self.value(x, y) <= bound {
                    counts[self.value(x, y) as usize] += 1;
                    x += 1;
                }
                let mut x = x0 - 1;
                while self.value(x, y) <= bound {
                    counts[self.value(x, y) as usize] += 1;
                    x -= 1;
                }
            }
        }
        Series::from_coeffs(counts.into_iter().map(BigInt::from).collect())
    }
}

/// Reduced primitive positive definite forms of discriminant `disc`, sorted
/// by `(a, |b|, sign of b)`.
pub fn enumerate_binary_classes(disc: i64) -> Result<Vec<BinaryForm>, FormError> {
    if disc >= 0 || !(disc.rem_euclid(4) == 0 || disc.rem_euclid(4) == 1) {
        return Err(FormError::BadBinaryDiscriminant(disc));
    }
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -disc {
        for b in (-a + 1)..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let form = BinaryForm { a, b, c };
            if c >= a && form.is_reduced() && form.is_primitive() {
                out.push(form);
            }
        }
        a += 1;
    }
    out.sort_by_key(|f| (f.a, f.b.abs(), f.b < 0));
    Ok(out)
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
