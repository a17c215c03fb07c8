//! Exact numbers: dyadic rationals, arbitrary rationals, finitely generated
//! multiplicative slope groups and lexicographic preorders on ℤ^k.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number; text form `p/q` (or `p` when `q = 1`).
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("cannot parse number `{0}`")]
    Parse(String),
    #[error("{0} is not a dyadic rational")]
    NotDyadic(String),
    #[error("{0} is not a product of the slope generators")]
    NotInGroup(String),
    #[error("slope generators are multiplicatively dependent")]
    IndependenceViolation,
    #[error("slope group needs at least one generator, all positive")]
    BadGenerators,
    #[error("expected vector of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate slope p = q")]
    DegenerateSlope,
    #[error("invalid index input: need p > q >= 1 and gcd(p, q) = 1")]
    InvalidIndexInput,
}

/// Three-valued sign of a left-invariant preorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Residue,
    Positive,
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Residue => Sign::Residue,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Sign {
    pub fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Residue,
            Ordering::Greater => Sign::Positive,
        }
    }
    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Residue => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sign::Negative => "Negative",
            Sign::Residue => "Residue",
            Sign::Positive => "Positive",
        };
        f.write_str(s)
    }
}

pub fn rat(p: i64, q: i64) -> ExactRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Parses `p/q`, `p`, or a finite decimal such as `0.375`.
pub fn parse_rational(s: &str) -> Result<ExactRational, NumError> {
    let t = s.trim();
    let err = || NumError::Parse(s.to_string());
    if let Some((a, b)) = t.split_once('/') {
        let p = BigInt::from_str(a.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(b.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((a, b)) = t.split_once('.') {
        if b.is_empty() || !b.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let neg = a.starts_with('-');
        let ip = if a.is_empty() || a == "-" || a == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(a).map_err(|_| err())?.abs()
        };
        let scale = BigInt::from(10u32).pow(b.len() as u32);
        let fp = BigInt::from_str(b).map_err(|_| err())?;
        let v = BigRational::new(ip * &scale + fp, scale);
        return Ok(if neg { -v } else { v });
    }
    BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| err())
}

pub fn fmt_rational(r: &ExactRational) -> String {
    r.to_string()
}

/// Largest power of two dividing a nonzero integer.
fn two_adic(n: &BigInt) -> u64 {
    n.trailing_zeros().unwrap_or(0)
}

/// Dyadic rational `num / 2^exp`, kept canonical (`exp = 0` or `num` odd).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Dyadic {
        if num.is_zero() {
            return Dyadic { num, exp: 0 };
        }
        let tz = two_adic(&num).min(exp as u64) as u32;
        Dyadic { num: num >> tz, exp: exp - tz }
    }
    pub fn from_int(n: i64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }
    pub fn num(&self) -> &BigInt {
        &self.num
    }
    pub fn exp(&self) -> u32 {
        self.exp
    }
    pub fn to_rational(&self) -> ExactRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }
    pub fn from_rational(r: &ExactRational) -> Result<Dyadic, NumError> {
        let d = r.denom();
        if d.is_zero() || !(d & (d - BigInt::one())).is_zero() {
            return Err(NumError::NotDyadic(r.to_string()));
        }
        let exp = two_adic(d) as u32;
        Ok(Dyadic::new(r.numer().clone(), exp))
    }
    fn align(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (
            &self.num << (e - self.exp),
            &other.num << (e - other.exp),
            e,
        )
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl FromStr for Dyadic {
    type Err = NumError;
    /// Accepts `num/2^exp`, an integer, or any rational text whose value is dyadic.
    fn from_str(s: &str) -> Result<Dyadic, NumError> {
        let t = s.trim();
        if let Some((a, b)) = t.split_once("/2^") {
            let num = BigInt::from_str(a.trim()).map_err(|_| NumError::Parse(s.into()))?;
            let exp = u32::from_str(b.trim()).map_err(|_| NumError::Parse(s.into()))?;
            return Ok(Dyadic::new(num, exp));
        }
        Dyadic::from_rational(&parse_rational(t)?)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.align(other);
        a.cmp(&b)
    }
}
impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, o: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(o);
        Dyadic::new(a + b, e)
    }
}
impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, o: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(o);
        Dyadic::new(a - b, e)
    }
}
impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &o.num, self.exp + o.exp)
    }
}
impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

/// Prime factorization of a positive integer by trial division.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(r: &ExactRational, p: &BigInt) -> i64 {
    fn v(n: &BigInt, p: &BigInt) -> i64 {
        let mut n = n.abs();
        let mut e = 0;
        while !n.is_zero() && (&n % p).is_zero() {
            n /= p;
            e += 1;
        }
        e
    }
    v(r.numer(), p) - v(r.denom(), p)
}

/// Finitely generated, free abelian subgroup Λ of ℚ_{>0}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeGroup {
    generators: Vec<ExactRational>,
    primes: Vec<BigInt>,
    /// `matrix[i][j]`: exponent of `primes[i]` in `generators[j]`.
    matrix: Vec<Vec<i64>>,
}

impl SlopeGroup {
    pub fn new(generators: Vec<ExactRational>) -> Result<SlopeGroup, NumError> {
        if generators.is_empty() || generators.iter().any(|g| !g.is_positive()) {
            return Err(NumError::BadGenerators);
        }
        let mut primes: Vec<BigInt> = Vec::new();
        for g in &generators {
            for (p, _) in factor(g.numer()).into_iter().chain(factor(g.denom())) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        primes.sort();
        let matrix: Vec<Vec<i64>> = primes
            .iter()
            .map(|p| generators.iter().map(|g| valuation(g, p)).collect())
            .collect();
        let sg = SlopeGroup { generators, primes, matrix };
        if sg.rank() != sg.generators.len() {
            return Err(NumError::IndependenceViolation);
        }
        Ok(sg)
    }

    /// Λ = ⟨2⟩.
    pub fn dyadic() -> SlopeGroup {
        SlopeGroup::new(vec![int(2)]).expect("2 generates a free group")
    }

    pub fn generators(&self) -> &[ExactRational] {
        &self.generators
    }
    pub fn rank_k(&self) -> usize {
        self.generators.len()
    }
    pub fn primes(&self) -> &[BigInt] {
        &self.primes
    }

    fn rank(&self) -> usize {
        let rows: Vec<Vec<ExactRational>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        let (_, pivots) = rref(rows, self.generators.len());
        pivots.len()
    }

    /// Exponent vector `v` with `∏ generators[i]^v[i] = r`.
    pub fn decompose(&self, r: &ExactRational) -> Result<Vec<i64>, NumError> {
        let not_in = || NumError::NotInGroup(r.to_string());
        if !r.is_positive() {
            return Err(not_in());
        }
        // Strip the known primes; anything left over is outside Λ.
        let mut rest = r.clone();
        let mut target = Vec::with_capacity(self.primes.len());
        for p in &self.primes {
            let e = valuation(&rest, p);
            target.push(e);
            rest = rest / pow_rat(&BigRational::from_integer(p.clone()), e);
        }
        if !rest.is_one() {
            return Err(not_in());
        }
        let k = self.generators.len();
        // Augmented system matrix · v = target over ℚ.
        let rows: Vec<Vec<ExactRational>> = self
            .matrix
            .iter()
            .zip(&target)
            .map(|(row, &t)| row.iter().map(|&x| int(x)).chain([int(t)]).collect())
            .collect();
        let (red, pivots) = rref(rows, k + 1);
        if pivots.contains(&k) {
            return Err(not_in());
        }
        let mut v = vec![0i64; k];
        for (row, &c) in pivots.iter().enumerate() {
            let x = &red[row][k];
            if !x.is_integer() {
                return Err(not_in());
            }
            v[c] = x.to_integer().to_i64().ok_or_else(not_in)?;
        }
        if &self.compose(&v) != r {
            return Err(not_in());
        }
        Ok(v)
    }

    /// `∏ generators[i]^v[i]`.
    pub fn compose(&self, v: &[i64]) -> ExactRational {
        self.generators
            .iter()
            .zip(v)
            .fold(ExactRational::one(), |acc, (g, &e)| acc * pow_rat(g, e))
    }
}

pub fn pow_rat(r: &ExactRational, e: i64) -> ExactRational {
    let mut out = ExactRational::one();
    let base = if e < 0 { r.recip() } else { r.clone() };
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

/// Reduced row echelon form; returns the matrix and pivot columns among the first `cols`.
fn rref(mut m: Vec<Vec<ExactRational>>, cols: usize) -> (Vec<Vec<ExactRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    (m, pivots)
}

/// Lexicographic stack of integer functionals on ℤ^k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePreorder {
    dim: usize,
    rows: Vec<Vec<i64>>,
}

impl LatticePreorder {
    pub fn new(dim: usize, rows: Vec<Vec<i64>>) -> Result<LatticePreorder, NumError> {
        for r in &rows {
            if r.len() != dim {
                return Err(NumError::DimensionMismatch { expected: dim, got: r.len() });
            }
        }
        Ok(LatticePreorder { dim, rows })
    }
    /// Standard lexicographic order on ℤ^k (identity rows).
    pub fn lex(dim: usize) -> LatticePreorder {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        LatticePreorder { dim, rows }
    }
    /// The opposite preorder.
    pub fn opposite(&self) -> LatticePreorder {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        LatticePreorder { dim: self.dim, rows }
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn sign(&self, v: &[i64]) -> Result<Sign, NumError> {
        if v.len() != self.dim {
            return Err(NumError::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        for r in &self.rows {
            let s: i128 = r.iter().zip(v).map(|(a, b)| *a as i128 * *b as i128).sum();
            if s != 0 {
                return Ok(if s > 0 { Sign::Positive } else { Sign::Negative });
            }
        }
        Ok(Sign::Residue)
    }

    /// Compares `a` and `b` as `sign(b - a)` would order them.
    pub fn compare(&self, a: &[i64], b: &[i64]) -> Result<Ordering, NumError> {
        let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        if a.len() != b.len() {
            return Err(NumError::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        Ok(self.sign(&d)?.to_ordering())
    }

    /// True when the residue is trivial, i.e. the preorder is a total order.
    pub fn is_total(&self) -> bool {
        let rows: Vec<Vec<ExactRational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        rref(rows, self.dim).1.len() == self.dim
    }
}

pub fn lattice_sign(v: &[i64], order: &LatticePreorder) -> Result<Sign, NumError> {
    order.sign(v)
}

pub fn slope_decompose(r: &ExactRational, lambda: &SlopeGroup) -> Result<Vec<i64>, NumError> {
    lambda.decompose(r)
}

/// Whether `x` lies in ℤ[1/n], i.e. its denominator only has primes dividing `n`.
fn in_localization(x: &ExactRational, n: &BigInt) -> bool {
    let mut d = x.denom().clone();
    loop {
        let g = d.gcd(n);
        if g.is_one() {
            return d.is_one();
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
}

/// `|A / (λ-1)A|` for `λ = p/q`, `A = ℤ[λ, λ⁻¹]`, by brute-force residue enumeration.
pub fn module_index(p: i64, q: i64) -> Result<u64, NumError> {
    if p == q {
        return Err(NumError::DegenerateSlope);
    }
    if p < q || q < 1 || p.gcd(&q) != 1 {
        return Err(NumError::InvalidIndexInput);
    }
    let pq = BigInt::from(p * q);
    let lambda_minus_one = rat(p - q, q);
    let mut bound: i64 = 4;
    let mut depth: u32 = 1;
    let mut last: Option<usize> = None;
    loop {
        let mut reps: Vec<ExactRational> = Vec::new();
        for m in 0..=depth {
            let den = pq.pow(m);
            for a in -bound..=bound {
                let x = BigRational::new(BigInt::from(a), den.clone());
                let known = reps
                    .iter()
                    .any(|r| in_localization(&((&x - r) / &lambda_minus_one), &pq));
                if !known {
                    reps.push(x);
                }
            }
        }
        if last == Some(reps.len()) {
            return Ok(reps.len() as u64);
        }
        last = Some(reps.len());
        bound *= 2;
        depth += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_canonical_and_text() {
        let d = Dyadic::new(BigInt::from(12), 4);
        assert_eq!(d.num(), &BigInt::from(3));
        assert_eq!(d.exp(), 2);
        assert_eq!(d.to_string(), "3/2^2");
        assert_eq!("3/2^2".parse::<Dyadic>().unwrap(), d);
        assert_eq!("6/8".parse::<Dyadic>().unwrap(), d);
        assert!("1/3".parse::<Dyadic>().is_err());
        assert_eq!(Dyadic::new(BigInt::from(8), 3).to_string(), "1");
    }

    #[test]
    fn rational_parse() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
    }

    #[test]
    fn decompose_examples() {
        let two = SlopeGroup::dyadic();
        assert_eq!(two.decompose(&int(8)).unwrap(), vec![3]);
        let l = SlopeGroup::new(vec![int(2), int(3)]).unwrap();
        assert_eq!(l.decompose(&int(1)).unwrap(), vec![0, 0]);
        assert_eq!(l.decompose(&int(6)).unwrap(), vec![1, 1]);
        assert!(matches!(l.decompose(&int(5)), Err(NumError::NotInGroup(_))));
        let odd = SlopeGroup::new(vec![int(4)]).unwrap();
        assert!(matches!(odd.decompose(&int(2)), Err(NumError::NotInGroup(_))));
        assert_eq!(
            SlopeGroup::new(vec![int(2), int(4)]),
            Err(NumError::IndependenceViolation)
        );
        let mixed = SlopeGroup::new(vec![rat(3, 2), int(6)]).unwrap();
        assert_eq!(mixed.decompose(&int(4)).unwrap(), vec![-1, 1]);
    }

    #[test]
    fn decompose_matches_exhaustive_search() {
        let l = SlopeGroup::new(vec![int(2), int(3)]).unwrap();
        let target = int(6);
        let mut found = Vec::new();
        for a in -8..=8 {
            for b in -8..=8 {
                if l.compose(&[a, b]) == target {
                    found.push(vec![a, b]);
                }
            }
        }
        assert_eq!(found, vec![l.decompose(&target).unwrap()]);
    }

    #[test]
    fn lattice_sign_examples() {
        let lex = LatticePreorder::lex(2);
        assert_eq!(lex.sign(&[0, 0]).unwrap(), Sign::Residue);
        assert_eq!(lex.sign(&[0, 2]).unwrap(), Sign::Positive);
        let first = LatticePreorder::new(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(first.sign(&[-1, 5]).unwrap(), Sign::Negative);
        assert_eq!(first.sign(&[0, 5]).unwrap(), Sign::Residue);
        assert!(!first.is_total());
        assert!(lex.is_total());
        assert!(matches!(lex.sign(&[1]), Err(NumError::DimensionMismatch { .. })));
    }

    #[test]
    fn index_examples() {
        assert_eq!(module_index(2, 1).unwrap(), 1);
        assert_eq!(module_index(3, 2).unwrap(), 1);
        assert_eq!(module_index(5, 2).unwrap(), 3);
        assert_eq!(module_index(2, 2), Err(NumError::DegenerateSlope));
        assert_eq!(module_index(4, 2), Err(NumError::InvalidIndexInput));
    }
}
