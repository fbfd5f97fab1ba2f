//! Proving identities between eta-quotients on `Gamma_0(N)` with the valence
//! formula.
//!
//! Each quotient is checked against Newman's criteria, its order at every
//! cusp comes from Ligozat's formula, and the resulting lower bounds give a
//! number `B` such that a modular function vanishing to order `> B` at
//! infinity is zero. The proof then reduces to `B + 1` coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{divisors, factorize, gcd};
use crate::series::Series;
use crate::theta::{EtaQuotient, ThetaError};

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProverError {
    #[error("term {index} ({quotient}) is not a modular function on Gamma_0({level}): {report}")]
    NotModular { index: usize, quotient: String, level: u64, report: String },
    #[error("combination has no level")]
    ZeroLevel,
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

/// A cusp `b/c` of `Gamma_0(N)` with `gcd(b, c) = 1` and `c >= 1`.
/// Infinity is represented by `1/N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cusp {
    pub b: i64,
    pub c: i64,
}

impl Cusp {
    pub fn new(b: i64, c: i64) -> Self {
        assert!(c >= 1 && gcd(b, c) == 1, "cusp {b}/{c} is not a reduced fraction");
        Cusp { b, c }
    }

    pub fn is_infinity(&self, level: u64) -> bool {
        self.c as u64 == level
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c == 1 {
            write!(f, "{}", self.b)
        } else {
            write!(f, "{}/{}", self.b, self.c)
        }
    }
}

/// Inequivalent cusps of `Gamma_0(N)`: for each `d | N` and each unit class
/// `r` mod `gcd(d, N/d)`, the cusp `a/d` with `a` the least positive integer
/// `≡ r` that is coprime to `d`. Ordered by `d`, then `r`; the last cusp is
/// `1/N`.
pub fn cusp_reps(n: u64) -> Vec<Cusp> {
    assert!(n >= 1);
    let n = n as i64;
    let mut out = Vec::new();
    for d in divisors(n) {
        let g = gcd(d, n / d);
        for r in (1..=g).filter(|&r| gcd(r, g) == 1) {
            let a = (0..)
                .map(|k| r + k * g)
                .find(|&a| gcd(a, d) == 1)
                .expect("Dirichlet");
            out.push(Cusp::new(if d == 1 { 1 } else { a }, d));
        }
    }
    out
}

/// Per-condition outcome of Newman's criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewmanReport {
    pub sum_r: i64,
    pub sum_delta_r: i64,
    pub sum_level_over_delta_r: i64,
    pub product_is_square: bool,
}

impl NewmanReport {
    pub fn passes(&self) -> bool {
        self.sum_r == 0
            && self.sum_delta_r % 24 == 0
            && self.sum_level_over_delta_r % 24 == 0
            && self.product_is_square
    }
}

impl fmt::Display for NewmanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sum r = {}, sum delta r = {}, sum (N/delta) r = {}, product square: {}",
            self.sum_r, self.sum_delta_r, self.sum_level_over_delta_r, self.product_is_square
        )
    }
}

pub fn newman_check(eq: &EtaQuotient) -> NewmanReport {
    let n = eq.level() as i64;
    let mut prime_exps: BTreeMap<i64, i64> = BTreeMap::new();
    let mut report = NewmanReport {
        sum_r: 0,
        sum_delta_r: 0,
        sum_level_over_delta_r: 0,
        product_is_square: true,
    };
    for (&delta, &r) in eq.exponents() {
        let delta = delta as i64;
        report.sum_r += r;
        report.sum_delta_r += delta * r;
        report.sum_level_over_delta_r += n / delta * r;
        for (p, e) in factorize(delta) {
            *prime_exps.entry(p).or_default() += e as i64 * r;
        }
    }
    report.product_is_square = prime_exps.values().all(|e| e % 2 == 0);
    report
}

/// `N / (24 gcd(N, c^2)) * sum r_delta gcd(c, delta)^2 / delta`.
pub fn ligozat_order(eq: &EtaQuotient, cusp: &Cusp) -> Rational {
    let n = eq.level() as i64;
    let c = cusp.c;
    let sum: Rational = eq
        .exponents()
        .iter()
        .map(|(&delta, &r)| {
            let delta = delta as i64;
            let g = gcd(c, delta);
            Rational::new(r * g * g, delta)
        })
        .sum();
    sum * Rational::new(n, 24 * gcd(n, c * c))
}

/// `constant + sum coeff_i * quotient_i`, all on a common level.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination {
    pub level: u64,
    pub terms: Vec<(BigRational, EtaQuotient)>,
    pub constant: BigRational,
}

impl Combination {
    pub fn new(level: u64) -> Self {
        Combination { level, terms: Vec::new(), constant: BigRational::zero() }
    }

    pub fn term(mut self, coeff: impl Into<BigInt>, eq: EtaQuotient) -> Self {
        self.terms.push((BigRational::from_integer(coeff.into()), eq));
        self
    }

    pub fn rational_term(mut self, coeff: BigRational, eq: EtaQuotient) -> Self {
        self.terms.push((coeff, eq));
        self
    }

    pub fn constant(mut self, c: impl Into<BigInt>) -> Self {
        self.constant += BigRational::from_integer(c.into());
        self
    }

    fn leveled(&self) -> Result<Vec<(BigRational, EtaQuotient)>, ProverError> {
        if self.level == 0 {
            return Err(ProverError::ZeroLevel);
        }
        self.terms
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, q)| Ok((c.clone(), q.at_level(self.level)?)))
            .collect()
    }

    /// The combination as `q^start * series` for exponents below `end`.
    pub fn expand_range(&self, end: i64) -> Result<(i64, Vec<BigRational>), ProverError> {
        let terms = self.leveled()?;
        let start = terms
            .iter()
            .map(|(_, q)| q.weighted_sum().div_euclid(24))
            .chain(std::iter::once(0))
            .min()
            .unwrap_or(0);
        let len = (end - start).max(0) as usize;
        let mut acc = vec![BigRational::zero(); len];
        if len > 0 && -start < end {
            acc[(-start) as usize] += self.constant.clone();
        }
        let expanded: Vec<Result<(BigRational, i64, Series), ThetaError>> = terms
            .par_iter()
            .map(|(c, q)| {
                let off = q.weighted_sum() / 24;
                let n = (end - off).max(0) as usize;
                let (off, s) = q.expand(n)?;
                Ok((c.clone(), off, s))
            })
            .collect();
        for item in expanded {
            let (c, off, s) = item?;
            for (k, coeff) in s.coeffs().iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let idx = (off - start) as usize + k;
                if idx < len {
                    acc[idx] += &c * BigRational::from_integer(coeff.clone());
                }
            }
        }
        Ok((start, acc))
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (c, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{q}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Orders of every term at every finite cusp, and the resulting lower bound
/// for the order of the combination.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderTable {
    pub level: u64,
    pub cusps: Vec<Cusp>,
    /// `orders[k][i]` is the order of term `i` at `cusps[k]`.
    pub orders: Vec<Vec<Rational>>,
    pub bounds: Vec<Rational>,
}

impl OrderTable {
    /// `-sum min(0, ceil(bound))` over the cusps of the table.
    pub fn valence_bound(&self) -> i64 {
        -self.bounds.iter().map(|b| b.ceil().to_integer().min(0)).sum::<i64>()
    }
}

/// Per-cusp bounds over every cusp except infinity.
pub fn order_table(comb: &Combination) -> Result<OrderTable, ProverError> {
    let terms = comb.leveled()?;
    for (index, (_, q)) in terms.iter().enumerate() {
        let report = newman_check(q);
        if !report.passes() {
            return Err(ProverError::NotModular {
                index,
                quotient: q.to_string(),
                level: comb.level,
                report: report.to_string(),
            });
        }
    }
    let cusps: Vec<Cusp> = cusp_reps(comb.level)
        .into_iter()
        .filter(|c| !c.is_infinity(comb.level))
        .collect();
    let mut orders = Vec::with_capacity(cusps.len());
    let mut bounds = Vec::with_capacity(cusps.len());
    for cusp in &cusps {
        let row: Vec<Rational> = terms.iter().map(|(_, q)| ligozat_order(q, cusp)).collect();
        let floor = if comb.constant.is_zero() { None } else { Some(Rational::zero()) };
        let bound = row.iter().copied().chain(floor).min().unwrap_or_else(Rational::zero);
        orders.push(row);
        bounds.push(bound);
    }
    Ok(OrderTable { level: comb.level, cusps, orders, bounds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proved,
    /// The coefficient of `q^k` is nonzero for this `k <= B`.
    RefutedAt(i64),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proved => write!(f, "proved"),
            Verdict::RefutedAt(k) => write!(f, "refuted at exponent {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProofCertificate {
    pub combination: Combination,
    pub table: OrderTable,
    pub bound: i64,
    /// Coefficients of `q^start .. q^bound` that were checked.
    pub start: i64,
    pub verified: usize,
    pub verdict: Verdict,
}

impl ProofCertificate {
    pub fn is_proved(&self) -> bool {
        self.verdict == Verdict::Proved
    }

    /// Line-oriented text form, stable for diffing.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("level {}\n", self.table.level));
        out.push_str(&format!("constant {}\n", self.combination.constant));
        for (c, q) in &self.combination.terms {
            out.push_str(&format!("term {c} {q}\n"));
        }
        for (cusp, (row, bound)) in self.table.cusps.iter().zip(self.table.orders.iter().zip(&self.table.bounds)) {
            let cells: Vec<String> = row.iter().map(|o| o.to_string()).collect();
            out.push_str(&format!("cusp {cusp} orders {} bound {bound}\n", cells.join(" ")));
        }
        out.push_str(&format!("B {}\n", self.bound));
        out.push_str(&format!("verified {} from q^{}\n", self.verified, self.start));
        out.push_str(&format!("verdict {}\n", self.verdict));
        out
    }
}

impl fmt::Display for ProofCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Prove `comb == 0` on `Gamma_0(level)`.
pub fn prove(comb: &Combination) -> Result<ProofCertificate, ProverError> {
    let table = order_table(comb)?;
    let bound = table.valence_bound();
    let (start, coeffs) = comb.expand_range(bound + 1)?;
    let verdict = match coeffs.iter().position(|c| !c.is_zero()) {
        Some(k) => Verdict::RefutedAt(start + k as i64),
        None => Verdict::Proved,
    };
    Ok(ProofCertificate {
        combination: comb.clone(),
        table,
        bound,
        start,
        verified: coeffs.len(),
        verdict,
    })
}

/// Denominators cleared: the least positive integer `L` with `L * c`
/// integral for every coefficient of the combination.
pub fn common_denominator(comb: &Combination) -> BigInt {
    comb.terms
        .iter()
        .map(|(c, _)| c.denom().clone())
        .chain(std::iter::once(comb.constant.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;

    fn eta(level: u64, e: &[(u64, i64)]) -> EtaQuotient {
        EtaQuotient::new(level, e.iter().copied()).unwrap()
    }

    fn g(level: u64) -> [EtaQuotient; 4] {
        [
            eta(level, &[(14, 10), (4, 4), (1, 4), (28, -4), (7, -4), (2, -10)]),
            eta(level, &[(14, 7), (4, 6), (1, 5), (28, -2), (7, -3), (2, -13)]),
            eta(level, &[(42, 5), (28, 2), (6, 2), (4, 4), (1, 5), (84, -2), (21, -2), (14, -1), (3, -1), (2, -12)]),
            eta(level, &[(84, 1), (28, 1), (21, 1), (14, 1), (4, 4), (3, 2), (1, 4), (42, -1), (7, -1), (6, -1), (2, -11)]),
        ]
    }

    fn table1_combination() -> Combination {
        let [g1, g2, g3, g4] = g(84);
        Combination::new(84).term(1, g1).term(4, g2).term(8, g3).term(8, g4).constant(-1)
    }

    fn table2_combination() -> Combination {
        let terms: [(i64, &[(u64, i64)]); 11] = [
            (1, &[(30, 10), (4, 4), (1, 4), (60, -4), (15, -4), (2, -10)]),
            (4, &[(30, 2), (20, 2), (6, 5), (4, 4), (1, 5), (15, -1), (12, -2), (10, -1), (3, -2), (2, -12)]),
            (4, &[(60, 2), (10, 5), (6, 2), (4, 4), (1, 5), (30, -1), (20, -2), (5, -2), (3, -1), (2, -12)]),
            (8, &[(60, 2), (12, 2), (10, 2), (4, 4), (1, 5), (30, -1), (6, -1), (5, -1), (2, -12)]),
            (4, &[(90, 10), (18, 2), (4, 4), (1, 5), (180, -4), (45, -4), (9, -1), (2, -12)]),
            (
                8,
                &[(180, 2), (45, 2), (30, 4), (18, 2), (4, 4), (1, 5), (90, -2), (60, -2), (15, -2), (9, -1), (2, -12)],
            ),
            (
                8,
                &[
                    (90, 4), (30, 2), (9, 2), (6, 1), (4, 4), (1, 5),
                    (180, -1), (60, -1), (45, -1), (18, -1), (15, -1), (3, -1), (2, -12),
                ],
            ),
            (
                4,
                &[
                    (180, 2), (45, 2), (30, 4), (9, 2), (6, 1), (4, 4), (1, 5),
                    (90, -2), (60, -2), (18, -1), (15, -2), (3, -1), (2, -12),
                ],
            ),
            (4, &[(30, 7), (4, 6), (1, 5), (60, -2), (15, -3), (2, -13)]),
            (4, &[(120, 2), (12, 5), (10, 2), (4, 4), (1, 5), (60, -1), (24, -2), (6, -2), (5, -1), (2, -12)]),
            (4, &[(60, 5), (24, 2), (10, 2), (4, 4), (1, 5), (120, -2), (30, -2), (12, -1), (5, -1), (2, -12)]),
        ];
        terms
            .iter()
            .fold(Combination::new(360).constant(-1), |comb, (c, e)| comb.term(*c, eta(360, e)))
    }

    /// Cusp equivalence on `Gamma_0(N)`: `a1/c1 ~ a2/c2` iff
    /// `s1 c2 ≡ s2 c1 mod gcd(c1 c2, N)` with `a_j s_j ≡ 1 mod c_j`.
    fn cusps_equivalent(x: &Cusp, y: &Cusp, n: i64) -> bool {
        let inv = |a: i64, m: i64| -> i64 {
            if m == 1 {
                return 0;
            }
            (1..m).find(|&s| (a * s).rem_euclid(m) == 1).unwrap()
        };
        let (s1, s2) = (inv(x.b, x.c), inv(y.b, y.c));
        let m = gcd(x.c * y.c, n);
        (s1 * y.c - s2 * x.c).rem_euclid(m) == 0
    }

    #[test]
    fn newman_examples() {
        let [g1, ..] = g(84);
        let r = newman_check(&g1);
        assert!(r.passes(), "{r}");
        assert!(newman_check(&EtaQuotient::trivial(84)).passes());
        let single = eta(1, &[(1, 1)]);
        let r = newman_check(&single);
        assert_eq!(r.sum_r, 1);
        assert!(!r.passes());
        for q in g(84) {
            assert!(newman_check(&q).passes(), "{q}");
        }
    }

    #[test]
    fn cusp_counts() {
        assert_eq!(cusp_reps(84).len(), 12);
        assert_eq!(cusp_reps(360).len(), 32);
        assert_eq!(cusp_reps(1), vec![Cusp::new(1, 1)]);
        for n in 1..=400i64 {
            let expected: i64 = divisors(n).iter().map(|&d| euler_phi(gcd(d, n / d))).sum();
            assert_eq!(cusp_reps(n as u64).len() as i64, expected, "N={n}");
        }
    }

    #[test]
    fn cusps_pairwise_inequivalent() {
        for n in (1..=120).chain([168, 180, 240, 360]) {
            let cs = cusp_reps(n as u64);
            for (i, x) in cs.iter().enumerate() {
                for y in &cs[i + 1..] {
                    assert!(!cusps_equivalent(x, y, n), "{x} ~ {y} on level {n}");
                }
            }
        }
    }

    #[test]
    fn level_360_cusp_list() {
        let names: Vec<String> = cusp_reps(360).iter().map(|c| c.to_string()).collect();
        let expected = [
            "1", "1/2", "1/3", "2/3", "1/4", "1/5", "1/6", "5/6", "1/8", "1/9", "1/10", "1/12", "5/12", "1/15",
            "2/15", "1/18", "1/20", "1/24", "5/24", "1/30", "11/30", "1/36", "1/40", "1/45", "1/60", "11/60",
            "1/72", "1/90", "1/120", "11/120", "1/180", "1/360",
        ];
        assert_eq!(names, expected);
    }

    #[test]
    fn unit_fraction_cusps_for_4n() {
        for n in (1..=30i64).filter(|&n| crate::arith::is_squarefree(n)) {
            let level = 4 * n;
            let unit: Vec<Cusp> = divisors(level).into_iter().map(|s| Cusp::new(1, s)).collect();
            let reps = cusp_reps(level as u64);
            for (i, x) in unit.iter().enumerate() {
                for y in &unit[i + 1..] {
                    assert!(!cusps_equivalent(x, y, level));
                }
            }
            assert_eq!(unit.len(), reps.len(), "4*{n}");
        }
    }

    #[test]
    fn ligozat_examples() {
        let [g1, _, g3, _] = g(84);
        assert_eq!(ligozat_order(&g1, &Cusp::new(1, 2)), Rational::from(-9));
        assert_eq!(ligozat_order(&g3, &Cusp::new(1, 14)), Rational::from(0));
        for q in g(84) {
            assert_eq!(ligozat_order(&q, &Cusp::new(1, 84)), Rational::new(q.weighted_sum(), 24));
        }
    }

    #[test]
    fn table_1() {
        let expected: [(&str, [i64; 5]); 11] = [
            ("1", [0, 0, 0, 0, 0]),
            ("1/2", [-9, -12, -12, -12, -12]),
            ("1/6", [-3, -4, -1, -4, -4]),
            ("1/4", [0, 3, -1, -1, -1]),
            ("1/12", [0, 1, 2, 0, 0]),
            ("1/7", [0, 0, 0, 0, 0]),
            ("1/42", [3, 2, 5, 0, 0]),
            ("1/21", [0, 0, 0, 3, 0]),
            ("1/3", [0, 0, 0, 5, 0]),
            ("1/14", [9, 6, 0, 0, 0]),
            ("1/28", [0, 3, 5, 5, 0]),
        ];
        let t = order_table(&table1_combination()).unwrap();
        assert_eq!(t.cusps.len(), 11);
        for (name, row) in expected {
            let k = t.cusps.iter().position(|c| c.to_string() == name).unwrap();
            let got: Vec<Rational> = t.orders[k].iter().copied().chain([t.bounds[k]]).collect();
            let want: Vec<Rational> = row.iter().map(|&x| Rational::from(x)).collect();
            assert_eq!(got, want, "cusp {name}");
        }
        assert_eq!(t.valence_bound(), 17);
    }

    #[test]
    fn prove_table_1() {
        let cert = prove(&table1_combination()).unwrap();
        assert_eq!(cert.bound, 17);
        assert_eq!(cert.verified, 18);
        assert!(cert.is_proved(), "{cert}");
        let text = cert.to_text();
        assert!(text.contains("cusp 1/2 orders -9 -12 -12 -12 bound -12\n"));
        assert!(text.ends_with("B 17\nverified 18 from q^0\nverdict proved\n"));
    }

    #[test]
    fn table_2() {
        let expected: [(&str, i64); 31] = [
            ("1", 0), ("1/2", -54), ("1/3", 0), ("2/3", 0), ("1/4", -5), ("1/5", 0), ("1/6", -6),
            ("5/6", -6), ("1/8", -5), ("1/9", 0), ("1/10", -6), ("1/12", 0), ("5/12", 0), ("1/15", 0),
            ("2/15", 0), ("1/18", -6), ("1/20", -1), ("1/24", 0), ("5/24", 0), ("1/30", 0), ("11/30", 0),
            ("1/36", 0), ("1/40", -1), ("1/45", 0), ("1/60", 0), ("11/60", 0), ("1/72", 0), ("1/90", 0),
            ("1/120", 0), ("11/120", 0), ("1/180", 0),
        ];
        let t = order_table(&table2_combination()).unwrap();
        let got: Vec<(String, Rational)> = t.cusps.iter().map(|c| c.to_string()).zip(t.bounds.iter().copied()).collect();
        let want: Vec<(String, Rational)> = expected.iter().map(|&(c, b)| (c.to_string(), Rational::from(b))).collect();
        assert_eq!(got, want);
        assert_eq!(t.valence_bound(), 90);
    }

    #[test]
    fn prove_table_2() {
        let cert = prove(&table2_combination()).unwrap();
        assert_eq!(cert.bound, 90);
        assert_eq!(cert.verified, 91);
        assert!(cert.is_proved(), "{cert}");
        // soundness spot check well past the bound
        let (start, coeffs) = table2_combination().expand_range(500).unwrap();
        assert_eq!(start, 0);
        assert!(coeffs.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn corrupted_combination_is_refuted() {
        let [g1, g2, g3, g4] = g(84);
        let bad = Combination::new(84).term(1, g1).term(4, g2).term(8, g3).term(7, g4).constant(-1);
        let cert = prove(&bad).unwrap();
        assert!(matches!(cert.verdict, Verdict::RefutedAt(k) if k <= 17));
    }

    #[test]
    fn trivial_combinations() {
        let [g1, ..] = g(84);
        let cert = prove(&Combination::new(84).term(1, g1.clone()).term(-1, g1.clone())).unwrap();
        assert!(cert.is_proved());
        let single = Combination::new(84).term(1, g1.clone());
        let t = order_table(&single).unwrap();
        for (k, cusp) in t.cusps.iter().enumerate() {
            assert_eq!(t.bounds[k], ligozat_order(&g1, cusp));
        }
        let err = prove(&Combination::new(1).term(1, eta(1, &[(1, 1)]))).unwrap_err();
        assert!(matches!(err, ProverError::NotModular { index: 0, .. }));
    }

    #[test]
    fn ligozat_depends_only_on_gcd_profile() {
        let [g1, g2, g3, g4] = g(84);
        for q in [g1, g2, g3, g4] {
            for c in 1..=168i64 {
                let reduced = Cusp::new(1, gcd(c, 84));
                let c2 = c * c;
                if gcd(84, c2) == gcd(84, reduced.c * reduced.c) {
                    assert_eq!(ligozat_order(&q, &Cusp::new(1, c)), ligozat_order(&q, &reduced));
                }
            }
        }
    }

    #[test]
    fn rational_coefficients() {
        let [g1, g2, g3, g4] = g(84);
        let half = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(2));
        let comb = Combination::new(84)
            .rational_term(half(1), g1)
            .rational_term(half(4), g2)
            .rational_term(half(8), g3)
            .rational_term(half(8), g4)
            .rational_term(half(-1), EtaQuotient::trivial(84));
        assert_eq!(common_denominator(&comb), BigInt::from(2));
        assert!(prove(&comb).unwrap().is_proved());
        let third = Combination::new(1).rational_term(BigRational::new(1.into(), 3.into()), EtaQuotient::trivial(1));
        assert_eq!(common_denominator(&third), BigInt::from(3));
    }
}
