//! Genera of ternary forms, binary genera, the binary-to-ternary lift and the
//! S-genus with its characters and masses.
//!
//! Two positive definite ternary forms of the same discriminant lie in the
//! same genus exactly when the discriminant quadratic forms of their doubled
//! Gram lattices are isometric. The doubled Gram lattice is even, so this is
//! decided prime by prime on the p-parts of `L^#/L`, for every `p | 2D`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{divisors, gcd, is_squarefree, jacobi, prime_divisors};
use crate::forms::{
    enumerate_binary_classes, enumerate_ternary_classes, ternary_equivalent, BinaryForm, FormError,
    Matrix3, TernaryForm,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenusError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("S = {0} must be odd, squarefree and at least 3")]
    BadS(i64),
    #[error("{w} does not divide S = {s}")]
    NotDivisor { w: i64, s: i64 },
    #[error("binary form {form} has discriminant {found}, expected {expected}")]
    WrongBinaryDiscriminant { form: String, found: i64, expected: i64 },
    #[error("lifts of binary genus {index} land in different ternary genera ({first} vs {other})")]
    NotWellDefined { index: usize, first: String, other: String },
    #[error("lift {0} not found among the classes of its discriminant")]
    LiftNotFound(String),
    #[error("16/|Aut| is not an integer for {form} (|Aut| = {aut})")]
    NonIntegralWeight { form: String, aut: u64 },
    #[error("no value coprime to {w} represented below {bound}")]
    NoCoprimeValue { w: i64, bound: i64 },
    #[error("character (-n|{w}) depends on n: {n1} gives {e1}, {n2} gives {e2}")]
    CharacterNotConstant { w: i64, n1: i64, e1: i32, n2: i64, e2: i32 },
}

/// The p-part of the discriminant quadratic form of the doubled Gram lattice.
///
/// Generators `h_i` have orders `p^exps[i]`. With `P = p^(2 max exps)`, the
/// matrix `gram` holds `P * b(h_i, h_j)` (mod P off the diagonal) and
/// `P * q(h_i)` (mod 2P on the diagonal).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalForm {
    pub prime: i64,
    pub exps: Vec<u32>,
    pub gram: Vec<Vec<i64>>,
    /// Multiset of `P * q(x)` over the whole group, sorted.
    pub histogram: Vec<(i64, usize)>,
}

impl LocalForm {
    fn scale(&self) -> i64 {
        self.prime.pow(2 * self.exps.iter().copied().max().unwrap_or(0))
    }

    fn order(&self) -> usize {
        self.exps.iter().map(|&e| self.prime.pow(e) as usize).product()
    }

    fn element(&self, mut index: usize) -> Vec<i64> {
        self.exps
            .iter()
            .map(|&e| {
                let m = self.prime.pow(e) as usize;
                let c = index % m;
                index /= m;
                c as i64
            })
            .collect()
    }

    fn q(&self, x: &[i64]) -> i64 {
        let two_p = 2 * self.scale();
        let mut acc: i128 = 0;
        for i in 0..x.len() {
            acc += (x[i] * x[i]) as i128 * self.gram[i][i] as i128;
            for j in i + 1..x.len() {
                acc += 2 * (x[i] * x[j]) as i128 * self.gram[i][j] as i128;
            }
        }
        acc.rem_euclid(two_p as i128) as i64
    }

    fn b(&self, x: &[i64], y: &[i64]) -> i64 {
        let p = self.scale();
        let mut acc: i128 = 0;
        for i in 0..x.len() {
            for j in 0..y.len() {
                acc += (x[i] * y[j]) as i128 * self.gram[i][j] as i128;
            }
        }
        acc.rem_euclid(p as i128) as i64
    }

    /// Whether an isometry `self -> other` exists.
    pub fn isometric(&self, other: &LocalForm) -> bool {
        if self.prime != other.prime || self.exps != other.exps || self.histogram != other.histogram {
            return false;
        }
        let k = self.exps.len();
        if k == 0 {
            return true;
        }
        // candidate images of each generator: right order and right q value
        let elements: Vec<Vec<i64>> = (0..other.order()).map(|i| other.element(i)).collect();
        let candidates: Vec<Vec<&Vec<i64>>> = (0..k)
            .map(|i| {
                let mut unit = vec![0; k];
                unit[i] = 1;
                let target = self.q(&unit);
                let ord = self.prime.pow(self.exps[i]);
                elements
                    .iter()
                    .filter(|x| {
                        other.q(x) == target
                            && x.iter()
                                .zip(&other.exps)
                                .all(|(&c, &e)| (c * ord) % self.prime.pow(e) == 0)
                    })
                    .collect()
            })
            .collect();
        let mut chosen: Vec<&Vec<i64>> = Vec::with_capacity(k);
        self.extend_isometry(other, &candidates, &mut chosen)
    }

    fn extend_isometry<'a>(
        &self,
        other: &LocalForm,
        candidates: &[Vec<&'a Vec<i64>>],
        chosen: &mut Vec<&'a Vec<i64>>,
    ) -> bool {
        let i = chosen.len();
        if i == candidates.len() {
            // b-preserving maps from a nondegenerate form are injective
            return true;
        }
        for &img in &candidates[i] {
            let ok = (0..i).all(|j| {
                let scaled = other.b(chosen[j], img);
                scaled == self.gram[j][i].rem_euclid(self.scale())
            });
            if ok {
                chosen.push(img);
                if self.extend_isometry(other, candidates, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

/// Smith normal form `U G V = diag`; returns the diagonal and `V`.
fn smith_with_right(g: &Matrix3) -> ([i64; 3], Matrix3) {
    let mut m: [[i128; 3]; 3] = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = g[i][j] as i128;
        }
    }
    let mut v: [[i128; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for t in 0..3 {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..3 {
                for j in t..3 {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let piv = m[t][t];
            let mut clean = true;
            for i in t + 1..3 {
                let k = m[i][t].div_euclid(piv);
                for j in 0..3 {
                    m[i][j] -= k * m[t][j];
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..3 {
                let k = m[t][j].div_euclid(piv);
                for i in 0..3 {
                    m[i][j] -= k * m[i][t];
                    v[i][j] -= k * v[i][t];
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..3).find(|&i| (t + 1..3).any(|j| m[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    for j in 0..3 {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
    }
    let mut diag = [0i64; 3];
    let mut vv = [[0i64; 3]; 3];
    for i in 0..3 {
        diag[i] = m[i][i].unsigned_abs() as i64;
        for j in 0..3 {
            vv[i][j] = v[i][j] as i64;
        }
    }
    (diag, vv)
}

/// The p-part of `L^#/L` for the doubled Gram lattice of `form`.
pub fn local_form(form: &TernaryForm, p: i64) -> LocalForm {
    let g = form.gram();
    let (diag, v) = smith_with_right(&g);
    // Q = V^T G V
    let gv = form.transform(&v).gram();
    let mut gens = Vec::new();
    for (i, &d) in diag.iter().enumerate() {
        let mut a = 0u32;
        let mut r = d;
        while r % p == 0 {
            r /= p;
            a += 1;
        }
        if a > 0 {
            gens.push((i, a));
        }
    }
    gens.sort_by_key(|&(_, a)| a);
    let amax = gens.iter().map(|&(_, a)| a).max().unwrap_or(0);
    let scale = p.pow(2 * amax);
    let k = gens.len();
    let mut gram = vec![vec![0i64; k]; k];
    for (x, &(i, ai)) in gens.iter().enumerate() {
        for (y, &(j, aj)) in gens.iter().enumerate() {
            let raw = gv[i][j] as i128 * p.pow(2 * amax - ai - aj) as i128;
            let modulus = if x == y { 2 * scale } else { scale } as i128;
            gram[x][y] = raw.rem_euclid(modulus) as i64;
        }
    }
    let mut local = LocalForm {
        prime: p,
        exps: gens.iter().map(|&(_, a)| a).collect(),
        gram,
        histogram: Vec::new(),
    };
    let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
    for idx in 0..local.order() {
        *hist.entry(local.q(&local.element(idx))).or_default() += 1;
    }
    local.histogram = hist.into_iter().collect();
    local
}

/// Local data of `form` at every prime dividing twice its discriminant.
pub fn local_invariants(form: &TernaryForm) -> Vec<LocalForm> {
    prime_divisors(2 * form.discriminant())
        .into_iter()
        .map(|p| local_form(form, p))
        .collect()
}

fn same_locals(x: &[LocalForm], y: &[LocalForm]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(l, r)| l.isometric(r))
}

pub fn same_genus(f: &TernaryForm, g: &TernaryForm) -> Result<bool, GenusError> {
    let (d1, d2) = (f.discriminant(), g.discriminant());
    if d1 != d2 {
        return Err(FormError::DiscriminantMismatch(d1, d2).into());
    }
    Ok(same_locals(&local_invariants(f), &local_invariants(g)))
}

#[derive(Clone, Debug)]
pub struct GenusRecord {
    pub discriminant: i64,
    pub classes: Vec<TernaryForm>,
    pub local: Vec<LocalForm>,
}

impl GenusRecord {
    /// Index of the class equivalent to `form`, if `form` lies in this genus.
    pub fn class_of(&self, form: &TernaryForm) -> Option<usize> {
        if form.discriminant() != self.discriminant || !same_locals(&local_invariants(form), &self.local) {
            return None;
        }
        self.classes
            .iter()
            .position(|c| ternary_equivalent(c, form).unwrap_or(false))
    }

    pub fn contains(&self, form: &TernaryForm) -> bool {
        self.class_of(form).is_some()
    }

    /// `16 / |Aut(f)|` for every class.
    pub fn weights(&self) -> Result<Vec<u64>, GenusError> {
        self.classes
            .iter()
            .map(|f| {
                let aut = f.aut_count();
                if 16 % aut == 0 {
                    Ok(16 / aut)
                } else {
                    Err(GenusError::NonIntegralWeight { form: f.to_string(), aut })
                }
            })
            .collect()
    }

    /// Represented values of the genus below `bound`, ascending.
    pub fn represented_below(&self, bound: usize) -> Vec<i64> {
        let mut hit = vec![false; bound];
        for f in &self.classes {
            for (n, &c) in f.theta_counts(bound).iter().enumerate() {
                if c > 0 {
                    hit[n] = true;
                }
            }
        }
        (1..bound).filter(|&n| hit[n]).map(|n| n as i64).collect()
    }
}

impl fmt::Display for GenusRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.classes.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// The classes of discriminant `disc` grouped into genera, in order of first
/// class.
pub fn genus_partition(disc: i64) -> Vec<GenusRecord> {
    let classes = enumerate_ternary_classes(disc);
    let locals: Vec<Vec<LocalForm>> = classes.par_iter().map(local_invariants).collect();
    let mut out: Vec<GenusRecord> = Vec::new();
    for (form, local) in classes.into_iter().zip(locals) {
        match out.iter_mut().find(|g| same_locals(&g.local, &local)) {
            Some(g) => g.classes.push(form),
            None => out.push(GenusRecord { discriminant: disc, classes: vec![form], local }),
        }
    }
    out
}

/// Values in `(Z/|D|Z)^*` represented by a binary form; equal sets mean
/// equal genus.
pub fn binary_value_classes(f: &BinaryForm) -> BTreeSet<i64> {
    let m = -f.discriminant();
    let mut out = BTreeSet::new();
    for x in 0..m {
        for y in 0..m {
            let v = f.value(x, y).rem_euclid(m);
            if gcd(v, m) == 1 {
                out.insert(v);
            }
        }
    }
    out
}

/// Reduced classes of discriminant `disc` grouped into genera. Cells are
/// ordered by their lexicographically least `(a, b, c)`.
pub fn binary_genus_partition(disc: i64) -> Result<Vec<Vec<BinaryForm>>, GenusError> {
    let classes = enumerate_binary_classes(disc)?;
    let mut cells: Vec<(BTreeSet<i64>, Vec<BinaryForm>)> = Vec::new();
    for f in classes {
        let key = binary_value_classes(&f);
        match cells.iter_mut().find(|(k, _)| *k == key) {
            Some((_, cell)) => cell.push(f),
            None => cells.push((key, vec![f])),
        }
    }
    let mut out: Vec<Vec<BinaryForm>> = cells.into_iter().map(|(_, c)| c).collect();
    out.sort_by_key(|cell| cell.iter().map(|f| (f.a, f.b, f.c)).min());
    Ok(out)
}

fn check_s(s: i64) -> Result<(), GenusError> {
    if s < 3 || s % 2 == 0 || !is_squarefree(s) {
        Err(GenusError::BadS(s))
    } else {
        Ok(())
    }
}

/// `ax^2 + bxy + cy^2  ->  ax^2 + cy^2 + 2S z^2 + |b| xy`.
pub fn lift_binary_to_ternary(s: i64, bf: &BinaryForm) -> Result<TernaryForm, GenusError> {
    check_s(s)?;
    if bf.discriminant() != -8 * s {
        return Err(GenusError::WrongBinaryDiscriminant {
            form: bf.to_string(),
            found: bf.discriminant(),
            expected: -8 * s,
        });
    }
    Ok(TernaryForm::new(bf.a, bf.c, 2 * s, 0, 0, bf.b.abs())?)
}

/// `(-n | w)` for the least represented `n` coprime to `w`, checked against
/// ten further coprime represented values. Values are searched below
/// `search_bound`.
pub fn epsilon_with_bound(tg: &GenusRecord, w: i64, search_bound: i64) -> Result<i32, GenusError> {
    if w == 1 {
        return Ok(1);
    }
    let mut bound = 64.min(search_bound.max(2));
    loop {
        let coprime: Vec<i64> = tg
            .represented_below(bound as usize)
            .into_iter()
            .filter(|&n| gcd(n, w) == 1)
            .collect();
        if coprime.len() >= 11 || bound >= search_bound {
            let Some(&n0) = coprime.first() else {
                return Err(GenusError::NoCoprimeValue { w, bound: search_bound });
            };
            let e0 = jacobi(-n0, w);
            for &n in coprime.iter().skip(1).take(10) {
                let e = jacobi(-n, w);
                if e != e0 {
                    return Err(GenusError::CharacterNotConstant { w, n1: n0, e1: e0, n2: n, e2: e });
                }
            }
            return Ok(e0);
        }
        bound = (bound * 2).min(search_bound);
    }
}

/// Character `epsilon(i, w)` of a genus of discriminant `16S^2`.
pub fn epsilon(tg: &GenusRecord, w: i64) -> Result<i32, GenusError> {
    epsilon_with_bound(tg, w, tg.discriminant)
}

/// `sum 16/|Aut(f)|` over the classes of the genus.
pub fn mass_direct(tg: &GenusRecord) -> Result<u64, GenusError> {
    Ok(tg.weights()?.iter().sum())
}

/// `prod (p + epsilon(p)) / 2` over the primes dividing `S`.
pub fn mass_formula(tg: &GenusRecord, s: i64) -> Result<u64, GenusError> {
    check_s(s)?;
    let mut m = 1u64;
    for p in prime_divisors(s) {
        let e = epsilon(tg, p)? as i64;
        m *= ((p + e) / 2) as u64;
    }
    Ok(m)
}

/// `W(M) = 16 sum R_f(M) / |Aut(f)|`.
pub fn weighted_count(tg: &GenusRecord, m: i64) -> Result<u64, GenusError> {
    let w = tg.weights()?;
    Ok(tg.classes.iter().zip(w).map(|(f, wt)| wt * f.repcount(m)).sum())
}

/// `W(M)` for all `0 <= M < n` at once.
pub fn weighted_counts(tg: &GenusRecord, n: usize) -> Result<Vec<u64>, GenusError> {
    let w = tg.weights()?;
    let mut out = vec![0u64; n];
    for (f, wt) in tg.classes.iter().zip(w) {
        for (slot, c) in out.iter_mut().zip(f.theta_counts(n)) {
            *slot += wt * c;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SGenus {
    pub s: i64,
    pub primes: Vec<i64>,
    /// Binary genera of discriminant `-8S`, in the order of `tg`.
    pub binary: Vec<Vec<BinaryForm>>,
    pub tg: Vec<GenusRecord>,
    /// `epsilon[i][w]` for every divisor `w` of `S`.
    pub epsilon: Vec<BTreeMap<i64, i32>>,
}

impl SGenus {
    pub fn eps(&self, i: usize, w: i64) -> Result<i32, GenusError> {
        self.epsilon[i]
            .get(&w)
            .copied()
            .ok_or(GenusError::NotDivisor { w, s: self.s })
    }

    /// Index of the genus containing `form`.
    pub fn index_of(&self, form: &TernaryForm) -> Option<usize> {
        self.tg.iter().position(|g| g.contains(form))
    }

    /// `sum_i epsilon(i, w) W_i(M)`.
    pub fn signed_weighted_count(&self, w: i64, m: i64) -> Result<i64, GenusError> {
        let mut total = 0i64;
        for (i, g) in self.tg.iter().enumerate() {
            total += self.eps(i, w)? as i64 * weighted_count(g, m)? as i64;
        }
        Ok(total)
    }
}

pub fn build_sgenus(s: i64) -> Result<SGenus, GenusError> {
    check_s(s)?;
    let disc = 16 * s * s;
    let binary = binary_genus_partition(-8 * s)?;
    let partition = genus_partition(disc);
    let locate = |lift: &TernaryForm| -> Result<usize, GenusError> {
        let local = local_invariants(lift);
        partition
            .iter()
            .position(|g| same_locals(&g.local, &local))
            .ok_or_else(|| GenusError::LiftNotFound(lift.to_string()))
    };
    let mut tg = Vec::new();
    for (index, cell) in binary.iter().enumerate() {
        let first = lift_binary_to_ternary(s, &cell[0])?;
        let at = locate(&first)?;
        for bf in &cell[1..] {
            let lift = lift_binary_to_ternary(s, bf)?;
            if locate(&lift)? != at {
                return Err(GenusError::NotWellDefined {
                    index,
                    first: first.to_string(),
                    other: lift.to_string(),
                });
            }
        }
        tg.push(partition[at].clone());
    }
    let divs = divisors(s);
    let epsilon = tg
        .par_iter()
        .map(|g| {
            divs.iter()
                .map(|&w| epsilon(g, w).map(|e| (w, e)))
                .collect::<Result<BTreeMap<_, _>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SGenus { s, primes: prime_divisors(s), binary, tg, epsilon })
}

pub fn sgenus_mass(sg: &SGenus) -> Result<u64, GenusError> {
    sg.tg.iter().map(mass_direct).sum()
}

/// `sum_i epsilon(i, w) == 0`.
pub fn orthogonality_check(sg: &SGenus, w: i64) -> Result<bool, GenusError> {
    if w < 2 || sg.s % w != 0 {
        return Err(GenusError::NotDivisor { w, s: sg.s });
    }
    let mut sum = 0;
    for i in 0..sg.tg.len() {
        sum += sg.eps(i, w)?;
    }
    Ok(sum == 0)
}
