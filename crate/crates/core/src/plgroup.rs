//! Exact piecewise-linear homeomorphisms of `[0,1]` or `ℝ`, their germs,
//! jump cocycles and fixed sets, word evaluation, and a few interval
//! combinatorics predicates (relators, 2-chains, linked pairs, cross-freeness).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{fmt_rational, int, parse_rational, rat, ExactRational, NumError, SlopeGroup};

type Q = ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("maps live on different models")]
    ModelMismatch,
    #[error("point {0} is outside the domain")]
    OutOfDomain(String),
    #[error("invalid piecewise-linear map: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("2-chain hypothesis ({0}) fails")]
    HypothesisFailed(u8),
    #[error("no 2-chain witness exponent found")]
    NoWitness,
    #[error("2-chain exponent {0} does not satisfy the relators")]
    WitnessRejected(i64),
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    UnitInterval,
    Line,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Endpoint of the model: `Low` is 0 or −∞, `High` is 1 or +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    Low,
    High,
}

/// A point of the extended line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    NegInf,
    Finite(Q),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Bound::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Finite(x) => write!(f, "{x}"),
            Bound::PosInf => f.write_str("+inf"),
        }
    }
}

/// `x ↦ slope·x + offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: Q,
    pub offset: Q,
}

impl Affine {
    pub fn new(slope: Q, offset: Q) -> Affine {
        Affine { slope, offset }
    }
    pub fn identity() -> Affine {
        Affine::new(Q::one(), Q::zero())
    }
    pub fn apply(&self, x: &Q) -> Q {
        &self.slope * x + &self.offset
    }
    pub fn inverse(&self) -> Affine {
        let s = self.slope.recip();
        let o = -(&self.offset * &s);
        Affine::new(s, o)
    }
    /// `self ∘ inner`.
    pub fn after(&self, inner: &Affine) -> Affine {
        Affine::new(&self.slope * &inner.slope, &self.slope * &inner.offset + &self.offset)
    }
    pub fn is_identity(&self) -> bool {
        self.slope.is_one() && self.offset.is_zero()
    }
}

/// Finitary PL orientation-preserving homeomorphism in canonical form.
///
/// `pieces[i]` acts between `breakpoints[i-1]` and `breakpoints[i]`; on the
/// line model the first and last pieces are the end germs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLMap {
    model: Model,
    breakpoints: Vec<Q>,
    pieces: Vec<Affine>,
}

impl PLMap {
    pub fn identity(model: Model) -> PLMap {
        PLMap { model, breakpoints: vec![], pieces: vec![Affine::identity()] }
    }

    /// Validating constructor; the input must already be canonical.
    pub fn new(model: Model, breakpoints: Vec<Q>, pieces: Vec<Affine>) -> Result<PLMap, PlError> {
        let m = PLMap { model, breakpoints, pieces };
        m.validate()?;
        Ok(m)
    }

    /// Like [`PLMap::new`] but merges redundant breakpoints first.
    pub fn from_pieces(model: Model, breakpoints: Vec<Q>, pieces: Vec<Affine>) -> Result<PLMap, PlError> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(PlError::Invalid("need one more piece than breakpoints".into()));
        }
        let mut m = PLMap { model, breakpoints, pieces };
        m.canonicalize();
        m.validate()?;
        Ok(m)
    }

    /// Interval map through the given nodes; must start at (0,0) and end at (1,1).
    pub fn interval_from_points(points: &[(Q, Q)]) -> Result<PLMap, PlError> {
        if points.len() < 2
            || points[0] != (Q::zero(), Q::zero())
            || points[points.len() - 1] != (Q::one(), Q::one())
        {
            return Err(PlError::Invalid("nodes must run from (0,0) to (1,1)".into()));
        }
        let mut pieces = Vec::new();
        for w in points.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            if x1 <= x0 {
                return Err(PlError::Invalid("nodes must be increasing".into()));
            }
            let s = (y1 - y0) / (x1 - x0);
            let o = y0 - &s * x0;
            pieces.push(Affine::new(s, o));
        }
        let bps = points[1..points.len() - 1].iter().map(|p| p.0.clone()).collect();
        PLMap::from_pieces(Model::UnitInterval, bps, pieces)
    }

    fn validate(&self) -> Result<(), PlError> {
        let bad = |s: &str| Err(PlError::Invalid(s.to_string()));
        if self.pieces.len() != self.breakpoints.len() + 1 {
            return bad("need one more piece than breakpoints");
        }
        if self.breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return bad("breakpoints must increase strictly");
        }
        if self.pieces.iter().any(|p| !p.slope.is_positive()) {
            return bad("slopes must be positive");
        }
        for (i, b) in self.breakpoints.iter().enumerate() {
            if self.pieces[i].apply(b) != self.pieces[i + 1].apply(b) {
                return bad("discontinuous at a breakpoint");
            }
            if self.pieces[i] == self.pieces[i + 1] {
                return bad("redundant breakpoint");
            }
        }
        if self.model == Model::UnitInterval {
            if self.breakpoints.iter().any(|b| !b.is_positive() || *b >= Q::one()) {
                return bad("breakpoints must lie in (0,1)");
            }
            if !self.pieces[0].offset.is_zero() || !self.pieces.last().unwrap().apply(&Q::one()).is_one() {
                return bad("interval maps must fix 0 and 1");
            }
        }
        Ok(())
    }

    fn canonicalize(&mut self) {
        let mut bps = Vec::with_capacity(self.breakpoints.len());
        let mut pieces = vec![self.pieces[0].clone()];
        for (b, p) in self.breakpoints.iter().zip(&self.pieces[1..]) {
            if pieces.last() != Some(p) {
                bps.push(b.clone());
                pieces.push(p.clone());
            }
        }
        self.breakpoints = bps;
        self.pieces = pieces;
    }

    pub fn model(&self) -> Model {
        self.model
    }
    pub fn breakpoints(&self) -> &[Q] {
        &self.breakpoints
    }
    pub fn pieces(&self) -> &[Affine] {
        &self.pieces
    }
    pub fn is_identity(&self) -> bool {
        self.breakpoints.is_empty() && self.pieces[0].is_identity()
    }

    fn check_domain(&self, x: &Q) -> Result<(), PlError> {
        if self.model == Model::UnitInterval && (x.is_negative() || *x > Q::one()) {
            return Err(PlError::OutOfDomain(x.to_string()));
        }
        Ok(())
    }

    /// Index of the piece used to evaluate at `x` (the right piece at a breakpoint).
    pub fn piece_index(&self, x: &Q) -> usize {
        self.breakpoints.partition_point(|b| b <= x)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.pieces[self.piece_index(x)].apply(x)
    }

    pub fn evaluate(&self, x: &Q) -> Result<Q, PlError> {
        self.check_domain(x)?;
        Ok(self.eval(x))
    }

    /// `f⁻¹(y)` without building the inverse map.
    pub fn preimage(&self, y: &Q) -> Q {
        let j = self.breakpoints.partition_point(|b| self.eval(b) <= *y);
        self.pieces[j].inverse().apply(y)
    }

    /// One-sided derivative `D^∓f(x)`.
    pub fn derivative(&self, x: &Q, side: Side) -> Result<Q, PlError> {
        self.check_domain(x)?;
        if self.model == Model::UnitInterval
            && ((side == Side::Left && x.is_zero()) || (side == Side::Right && x.is_one()))
        {
            return Err(PlError::OutOfDomain(x.to_string()));
        }
        Ok(self.slope_at(x, side).clone())
    }

    pub(crate) fn slope_at(&self, x: &Q, side: Side) -> &Q {
        let i = match side {
            Side::Left => self.breakpoints.partition_point(|b| b < x),
            Side::Right => self.breakpoints.partition_point(|b| b <= x),
        };
        &self.pieces[i].slope
    }

    pub fn invert(&self) -> PLMap {
        PLMap {
            model: self.model,
            breakpoints: self.breakpoints.iter().map(|b| self.eval(b)).collect(),
            pieces: self.pieces.iter().map(Affine::inverse).collect(),
        }
    }

    /// `self ∘ g` (apply `g` first).
    pub fn after(&self, g: &PLMap) -> PLMap {
        assert_eq!(self.model, g.model, "composition across models");
        let mut pts: Vec<Q> = g.breakpoints.clone();
        pts.extend(self.breakpoints.iter().map(|b| g.preimage(b)));
        pts.sort();
        pts.dedup();
        let n = pts.len();
        let mut pieces = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let sample = match (i.checked_sub(1).map(|j| &pts[j]), pts.get(i)) {
                (Some(a), Some(b)) => (a + b) / int(2),
                (None, Some(b)) => match self.model {
                    Model::Line => b - Q::one(),
                    Model::UnitInterval => b / int(2),
                },
                (Some(a), None) => match self.model {
                    Model::Line => a + Q::one(),
                    Model::UnitInterval => (a + Q::one()) / int(2),
                },
                (None, None) => rat(1, 2),
            };
            let gp = &g.pieces[g.piece_index(&sample)];
            let fp = &self.pieces[self.piece_index(&gp.apply(&sample))];
            pieces.push(fp.after(gp));
        }
        let mut m = PLMap { model: self.model, breakpoints: pts, pieces };
        m.canonicalize();
        m
    }

    pub fn pow(&self, n: i64) -> PLMap {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = PLMap::identity(self.model);
        for _ in 0..n.unsigned_abs() {
            out = out.after(&base);
        }
        out
    }

    /// Affine germ at an end of the model (for the interval, slope only, offset 0).
    pub fn end_germ(&self, end: End) -> Affine {
        let p = match end {
            End::Low => &self.pieces[0],
            End::High => self.pieces.last().unwrap(),
        };
        match self.model {
            Model::Line => p.clone(),
            Model::UnitInterval => Affine::new(p.slope.clone(), Q::zero()),
        }
    }

    /// Germ at an end as (slope exponent vector over `lambda`, translation part).
    pub fn germ(&self, end: End, lambda: &SlopeGroup) -> Result<(Vec<i64>, Q), PlError> {
        let g = self.end_germ(end);
        Ok((lambda.decompose(&g.slope)?, g.offset))
    }

    /// `−log₂` of the end slope (τ₀ at `Low`, τ₁ at `High`).
    pub fn tau(&self, end: End) -> Result<i64, PlError> {
        let v = SlopeGroup::dyadic().decompose(&self.end_germ(end).slope)?;
        Ok(-v[0])
    }

    pub fn has_trivial_germ(&self, end: End) -> bool {
        let p = match end {
            End::Low => &self.pieces[0],
            End::High => self.pieces.last().unwrap(),
        };
        p.is_identity()
    }

    fn domain(&self) -> (Bound, Bound) {
        match self.model {
            Model::UnitInterval => (Bound::Finite(Q::zero()), Bound::Finite(Q::one())),
            Model::Line => (Bound::NegInf, Bound::PosInf),
        }
    }

    /// Closed extent of piece `i`.
    fn piece_extent(&self, i: usize) -> (Bound, Bound) {
        let (lo, hi) = self.domain();
        let l = if i == 0 { lo } else { Bound::Finite(self.breakpoints[i - 1].clone()) };
        let r = if i == self.breakpoints.len() { hi } else { Bound::Finite(self.breakpoints[i].clone()) };
        (l, r)
    }

    /// Jump cocycle `j^+(f,x) = ∏_{y≥x} D⁻f(y)/D⁺f(y)` or `j^-(f,x) = ∏_{y≤x} D⁺f(y)/D⁻f(y)`.
    pub fn jump_cocycle(&self, x: &Q, side: Side) -> Q {
        let mut out = Q::one();
        for (i, b) in self.breakpoints.iter().enumerate() {
            let ratio = &self.pieces[i].slope / &self.pieces[i + 1].slope;
            match side {
                Side::Right if b >= x => out *= ratio,
                Side::Left if b <= x => out /= ratio,
                _ => {}
            }
        }
        out
    }

    pub fn fixed_structure(&self) -> FixedStructure {
        let mut fixed: Vec<(Bound, Bound)> = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let (l, r) = self.piece_extent(i);
            if p.is_identity() {
                fixed.push((l, r));
            } else if !p.slope.is_one() {
                let x = Bound::Finite(&p.offset / (Q::one() - &p.slope));
                if l <= x && x <= r {
                    fixed.push((x.clone(), x));
                }
            }
        }
        let mut merged: Vec<(Bound, Bound)> = Vec::new();
        for (l, r) in fixed {
            match merged.last_mut() {
                Some(last) if l <= last.1 => {
                    if r > last.1 {
                        last.1 = r;
                    }
                }
                _ => merged.push((l, r)),
            }
        }
        let (lo, hi) = self.domain();
        let mut support = Vec::new();
        match (merged.first(), merged.last()) {
            (Some(first), Some(last)) => {
                if first.0 > lo {
                    support.push((lo, first.0.clone()));
                }
                for w in merged.windows(2) {
                    support.push((w[0].1.clone(), w[1].0.clone()));
                }
                if last.1 < hi {
                    support.push((last.1.clone(), hi));
                }
            }
            _ => support.push((lo, hi)),
        }
        FixedStructure { fixed: merged, support }
    }

    /// Smallest / largest point of the closure of the support.
    pub fn support_hull(&self) -> Option<(Bound, Bound)> {
        let fs = self.fixed_structure();
        let first = fs.support.first()?;
        let last = fs.support.last()?;
        Some((first.0.clone(), last.1.clone()))
    }

    /// Text form `x : slope, offset; ...`, the first `x` being `-inf` or `0`.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let x = if i == 0 {
                match self.model {
                    Model::Line => "-inf".to_string(),
                    Model::UnitInterval => "0".to_string(),
                }
            } else {
                fmt_rational(&self.breakpoints[i - 1])
            };
            parts.push(format!("{x} : {}, {}", fmt_rational(&p.slope), fmt_rational(&p.offset)));
        }
        parts.join("; ")
    }

    pub fn parse(text: &str) -> Result<PLMap, PlError> {
        let mut model = None;
        let mut bps = Vec::new();
        let mut pieces = Vec::new();
        for (i, line) in text.split([';', '\n']).map(str::trim).filter(|l| !l.is_empty()).enumerate() {
            let (x, rest) = line
                .split_once(':')
                .ok_or_else(|| PlError::Parse(format!("missing `:` in `{line}`")))?;
            let (s, o) = rest
                .split_once(',')
                .ok_or_else(|| PlError::Parse(format!("missing `,` in `{line}`")))?;
            let x = x.trim();
            if i == 0 {
                model = Some(match x {
                    "-inf" => Model::Line,
                    "0" => Model::UnitInterval,
                    _ => return Err(PlError::Parse("first piece must start at -inf or 0".into())),
                });
            } else {
                bps.push(parse_rational(x)?);
            }
            pieces.push(Affine::new(parse_rational(s)?, parse_rational(o)?));
        }
        let model = model.ok_or_else(|| PlError::Parse("empty map".into()))?;
        PLMap::new(model, bps, pieces)
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn compose(f: &PLMap, g: &PLMap) -> Result<PLMap, PlError> {
    if f.model != g.model {
        return Err(PlError::ModelMismatch);
    }
    Ok(f.after(g))
}

pub fn invert(f: &PLMap) -> PLMap {
    f.invert()
}

pub fn evaluate(f: &PLMap, x: &Q) -> Result<Q, PlError> {
    f.evaluate(x)
}

pub fn derivative(f: &PLMap, x: &Q, side: Side) -> Result<Q, PlError> {
    f.derivative(x, side)
}

pub fn jump_cocycle(f: &PLMap, x: &Q, side: Side) -> Q {
    f.jump_cocycle(x, side)
}

pub fn fixed_structure(f: &PLMap) -> FixedStructure {
    f.fixed_structure()
}

/// Maximal fixed intervals (closed, possibly single points) and open support components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedStructure {
    pub fixed: Vec<(Bound, Bound)>,
    pub support: Vec<(Bound, Bound)>,
}

impl FixedStructure {
    /// The open support component containing `x`, if any.
    pub fn component_of(&self, x: &Q) -> Option<&(Bound, Bound)> {
        let b = Bound::Finite(x.clone());
        self.support.iter().find(|(l, r)| *l < b && b < *r)
    }
}

/// Minimal group interface shared by PL maps and wreath elements.
pub trait GroupElement: Clone + Eq + Hash + fmt::Debug {
    fn identity_of(&self) -> Self;
    /// Group product `self · other`.
    fn product(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn power(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = self.identity_of();
        for _ in 0..n.unsigned_abs() {
            out = out.product(&base);
        }
        out
    }
}

impl GroupElement for PLMap {
    fn identity_of(&self) -> PLMap {
        PLMap::identity(self.model)
    }
    fn product(&self, other: &PLMap) -> PLMap {
        self.after(other)
    }
    fn inverse(&self) -> PLMap {
        self.invert()
    }
    fn power(&self, n: i64) -> PLMap {
        self.pow(n)
    }
}

/// An element of a Cayley ball together with a shortest word reaching it.
#[derive(Debug, Clone)]
pub struct BallElement<E> {
    pub word: String,
    pub length: usize,
    pub elem: E,
}

/// Breadth-first enumeration of the ball of radius `radius`, deduplicated.
pub fn ball<E: GroupElement>(generators: &[(String, E)], radius: usize) -> Vec<BallElement<E>> {
    let identity = match generators.first() {
        Some((_, g)) => g.identity_of(),
        None => return vec![],
    };
    let mut letters: Vec<(String, E)> = Vec::new();
    for (n, g) in generators {
        letters.push((n.clone(), g.clone()));
        letters.push((format!("{n}^-1"), g.inverse()));
    }
    let mut seen: HashSet<E> = HashSet::new();
    seen.insert(identity.clone());
    let mut out = vec![BallElement { word: String::new(), length: 0, elem: identity }];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        if out[i].length == radius {
            continue;
        }
        for (name, l) in &letters {
            let e = out[i].elem.product(l);
            if seen.insert(e.clone()) {
                let word = if out[i].word.is_empty() { name.clone() } else { format!("{} {name}", out[i].word) };
                out.push(BallElement { word, length: out[i].length + 1, elem: e });
                queue.push_back(out.len() - 1);
            }
        }
    }
    out
}

/// One letter of a group word: a name, optional parameters and a power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Letter {
    pub name: String,
    pub params: Vec<Q>,
    pub power: i64,
}

/// Parses words such as `a b^-1 g+(0,2) t(1/2)^3`.
pub fn parse_word(s: &str) -> Result<Vec<Letter>, PlError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let err = |m: &str| PlError::Parse(format!("{m} in word `{s}`"));
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '·' {
            i += 1;
            continue;
        }
        if !(c.is_ascii_alphanumeric() || c == '_') {
            return Err(err("unexpected character"));
        }
        let start = i;
        while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
            i += 1;
        }
        if i + 1 < chars.len() && (chars[i] == '+' || chars[i] == '-') && chars[i + 1] == '(' {
            i += 1;
        }
        let name: String = chars[start..i].iter().collect();
        let mut params = Vec::new();
        if i < chars.len() && chars[i] == '(' {
            let close = chars[i..].iter().position(|&c| c == ')').ok_or_else(|| err("unclosed `(`"))? + i;
            let inner: String = chars[i + 1..close].iter().collect();
            for p in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                params.push(parse_rational(p)?);
            }
            i = close + 1;
        }
        let mut power = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let st = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = chars[st..i].iter().collect();
            power = txt.parse().map_err(|_| err("bad exponent"))?;
        }
        out.push(Letter { name, params, power });
    }
    Ok(out)
}

/// Evaluates a word as the product of its letters, left to right.
pub fn evaluate_word<E: GroupElement>(
    letters: &[Letter],
    identity: E,
    mut resolve: impl FnMut(&str, &[Q]) -> Result<E, PlError>,
) -> Result<E, PlError> {
    let mut acc = identity;
    for l in letters {
        let g = resolve(&l.name, &l.params)?;
        acc = acc.product(&g.power(l.power));
    }
    Ok(acc)
}

/// The big generator of F: `2x` on `[0,1/4]`, `x+1/4` on `[1/4,1/2]`, `x/2+1/2` on `[1/2,1]`.
pub fn f0() -> PLMap {
    PLMap::new(
        Model::UnitInterval,
        vec![rat(1, 4), rat(1, 2)],
        vec![
            Affine::new(int(2), Q::zero()),
            Affine::new(Q::one(), rat(1, 4)),
            Affine::new(rat(1, 2), rat(1, 2)),
        ],
    )
    .expect("f0 is a valid map")
}

/// Conjugates an interval map into `[a,b] ⊂ [0,1]`, acting as the identity elsewhere.
pub fn rescale_into(f: &PLMap, a: &Q, b: &Q) -> Result<PLMap, PlError> {
    if f.model != Model::UnitInterval || a >= b || a.is_negative() || *b > Q::one() {
        return Err(PlError::Invalid("rescale needs an interval map and 0 <= a < b <= 1".into()));
    }
    let len = b - a;
    // φ(x) = a + len·x maps [0,1] onto [a,b]; the conjugate is φ f φ⁻¹.
    let phi = Affine::new(len.clone(), a.clone());
    let phi_inv = phi.inverse();
    let mut bps = Vec::new();
    let mut pieces = Vec::new();
    if a.is_positive() {
        bps.push(a.clone());
        pieces.push(Affine::identity());
    }
    for (i, p) in f.pieces.iter().enumerate() {
        if i > 0 {
            bps.push(phi.apply(&f.breakpoints[i - 1]));
        }
        pieces.push(phi.after(p).after(&phi_inv));
    }
    if *b < Q::one() {
        bps.push(b.clone());
        pieces.push(Affine::identity());
    }
    PLMap::from_pieces(Model::UnitInterval, bps, pieces)
}

/// `x0 = f₀` and `x1 = f₀` squeezed into `[1/2, 1]`.
pub fn thompson_x0_x1() -> (PLMap, PLMap) {
    let x0 = f0();
    let x1 = rescale_into(&x0, &rat(1, 2), &Q::one()).expect("valid rescale");
    (x0, x1)
}

/// Translation `x ↦ x + a` on the line.
pub fn translation(a: Q) -> PLMap {
    let p = Affine::new(Q::one(), a);
    PLMap::from_pieces(Model::Line, vec![], vec![p]).expect("translation")
}

/// `g(a,λ): x ↦ λx + (1−λ)a`.
pub fn homothety(a: &Q, lambda: &Q) -> Result<PLMap, PlError> {
    let p = Affine::new(lambda.clone(), (Q::one() - lambda) * a);
    PLMap::from_pieces(Model::Line, vec![], vec![p])
}

/// `g₊(a,λ)`: identity left of `a`, `g(a,λ)` right of `a`.
pub fn g_plus(a: &Q, lambda: &Q) -> Result<PLMap, PlError> {
    let h = Affine::new(lambda.clone(), (Q::one() - lambda) * a);
    PLMap::from_pieces(Model::Line, vec![a.clone()], vec![Affine::identity(), h])
}

/// `g₋(a,λ)`: `g(a,λ)` left of `a`, identity right of `a`.
pub fn g_minus(a: &Q, lambda: &Q) -> Result<PLMap, PlError> {
    let h = Affine::new(lambda.clone(), (Q::one() - lambda) * a);
    PLMap::from_pieces(Model::Line, vec![a.clone()], vec![h, Affine::identity()])
}

/// Which family of PL groups a context describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    ThompsonF,
    /// `G(ℝ; A, Λ)` with `A = ℤ[1/P]`, `P` the product of primes occurring in Λ.
    BieriStrebel(SlopeGroup),
}

#[derive(Debug, Clone)]
pub struct GroupPresentationContext {
    pub family: Family,
    pub generators: Vec<(String, PLMap)>,
}

impl GroupPresentationContext {
    pub fn new(family: Family) -> GroupPresentationContext {
        let generators = standard_generators(&family);
        GroupPresentationContext { family, generators }
    }

    pub fn model(&self) -> Model {
        match self.family {
            Family::ThompsonF => Model::UnitInterval,
            Family::BieriStrebel(_) => Model::Line,
        }
    }

    /// Resolves a named or parametric generator.
    pub fn resolve(&self, name: &str, params: &[Q]) -> Result<PLMap, PlError> {
        if let Some((_, g)) = self.generators.iter().find(|(n, _)| n == name) {
            if params.is_empty() {
                return Ok(g.clone());
            }
        }
        let unknown = || PlError::UnknownGenerator(name.to_string());
        let arity = |n: usize| if params.len() == n { Ok(()) } else { Err(unknown()) };
        match (self.model(), name) {
            (m, "id" | "e") => arity(0).map(|_| PLMap::identity(m)),
            (Model::UnitInterval, "f" | "f0" | "x0") => arity(0).map(|_| f0()),
            (Model::UnitInterval, "x1") => arity(0).map(|_| thompson_x0_x1().1),
            (Model::Line, "t") => {
                arity(1)?;
                Ok(translation(params[0].clone()))
            }
            (Model::Line, "t1") => arity(0).map(|_| translation(Q::one())),
            (Model::Line, "g") => {
                arity(2)?;
                homothety(&params[0], &params[1])
            }
            (Model::Line, "g+") => {
                arity(2)?;
                g_plus(&params[0], &params[1])
            }
            (Model::Line, "g-") => {
                arity(2)?;
                g_minus(&params[0], &params[1])
            }
            _ => Err(unknown()),
        }
    }

    pub fn word(&self, s: &str) -> Result<PLMap, PlError> {
        let letters = parse_word(s)?;
        evaluate_word(&letters, PLMap::identity(self.model()), |n, p| self.resolve(n, p))
    }
}

/// Standard generating sets: the pair `(a, b)` for F; `{t₁, g(0,λ), g₊(0,λ)}` for Bieri–Strebel.
pub fn standard_generators(family: &Family) -> Vec<(String, PLMap)> {
    match family {
        Family::ThompsonF => {
            let (x0, x1) = thompson_x0_x1();
            let a = x0.after(&x1.invert());
            let b = x1;
            vec![("a".into(), a), ("b".into(), b)]
        }
        Family::BieriStrebel(lambda) => {
            let mut out = vec![("t1".to_string(), translation(Q::one()))];
            for l in lambda.generators() {
                let ls = fmt_rational(l);
                out.push((format!("g(0,{ls})"), homothety(&Q::zero(), l).expect("homothety")));
                out.push((format!("g+(0,{ls})"), g_plus(&Q::zero(), l).expect("broken homothety")));
            }
            out
        }
    }
}

/// Outcome of checking the two relators of F on a pair `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorReport {
    pub first_relator: bool,
    pub second_relator: bool,
    pub non_abelian: bool,
    /// For the first failing check: its name and a point not fixed by the failing word.
    pub witness: Option<(String, Q)>,
}

impl RelatorReport {
    pub fn holds(&self) -> bool {
        self.first_relator && self.second_relator && self.non_abelian
    }
}

fn commutator(x: &PLMap, y: &PLMap) -> PLMap {
    x.after(y).after(&x.invert()).after(&y.invert())
}

/// Some point moved by a non-identity map.
fn moved_point(f: &PLMap) -> Option<Q> {
    let fs = f.fixed_structure();
    let (l, r) = fs.support.first()?;
    Some(match (l, r) {
        (Bound::Finite(a), Bound::Finite(b)) => (a + b) / int(2),
        (Bound::Finite(a), _) => a + Q::one(),
        (_, Bound::Finite(b)) => b - Q::one(),
        _ => Q::zero(),
    })
}

/// Checks `[a,(ba)b(ba)⁻¹] = [a,(ba)²b(ba)⁻²] = 1` and that `a`, `b` do not commute.
pub fn verify_relators(a: &PLMap, b: &PLMap) -> Result<RelatorReport, PlError> {
    if a.model != b.model {
        return Err(PlError::ModelMismatch);
    }
    let ba = b.after(a);
    let ba2 = ba.after(&ba);
    let r1 = commutator(a, &ba.after(b).after(&ba.invert()));
    let r2 = commutator(a, &ba2.after(b).after(&ba2.invert()));
    let comm = commutator(a, b);
    let mut witness = None;
    for (name, w) in [("first relator", &r1), ("second relator", &r2), ("commutator [a,b]", &comm)] {
        let failing = if name.starts_with("commutator") { w.is_identity() } else { !w.is_identity() };
        if failing && witness.is_none() {
            let x = moved_point(w).or_else(|| moved_point(a)).or_else(|| moved_point(b));
            witness = Some((name.to_string(), x.unwrap_or_else(|| rat(1, 2))));
        }
    }
    Ok(RelatorReport {
        first_relator: r1.is_identity(),
        second_relator: r2.is_identity(),
        non_abelian: !comm.is_identity(),
        witness,
    })
}

/// Smallest `|N|` with `g^N(f(c)) > d` for a 2-chain `(f, g)`, checked against the relators.
///
/// `c = inf supp(g)`, `d = sup supp(f)`. When `g` pushes points leftwards on
/// the relevant component the exponent is negative.
pub fn two_chain_witness(f: &PLMap, g: &PLMap) -> Result<i64, PlError> {
    if f.model != g.model {
        return Err(PlError::ModelMismatch);
    }
    let fs_f = f.fixed_structure();
    let fs_g = g.fixed_structure();
    let (Some(c), Some(d)) = (
        fs_g.support.first().and_then(|s| s.0.finite().cloned()),
        fs_f.support.last().and_then(|s| s.1.finite().cloned()),
    ) else {
        return Err(PlError::HypothesisFailed(1));
    };
    if c >= d {
        return Err(PlError::HypothesisFailed(1));
    }
    let fc = f.eval(&c);
    if fc == c || g.eval(&d) == d {
        return Err(PlError::HypothesisFailed(2));
    }
    let comp = fs_g.component_of(&d).ok_or(PlError::HypothesisFailed(2))?;
    if fs_g.component_of(&fc) != Some(comp) {
        return Err(PlError::HypothesisFailed(3));
    }
    let step = if g.eval(&d) > d { g.clone() } else { g.invert() };
    let sign = if g.eval(&d) > d { 1 } else { -1 };
    let mut x = fc;
    for n in 1..=100_000i64 {
        x = step.eval(&x);
        if x > d {
            let big_n = sign * n;
            if !verify_relators(f, &g.pow(big_n))?.holds() {
                return Err(PlError::WitnessRejected(big_n));
            }
            return Ok(big_n);
        }
    }
    Err(PlError::NoWitness)
}

/// Whether some bounded support components `(a,b)` of `f` and `(c,d)` of `g` are linked.
pub fn linked_pair(f: &PLMap, g: &PLMap) -> bool {
    let bounded = |fs: FixedStructure| -> Vec<(Q, Q)> {
        fs.support
            .into_iter()
            .filter_map(|(l, r)| Some((l.finite()?.clone(), r.finite()?.clone())))
            .collect()
    };
    let cf = bounded(f.fixed_structure());
    let cg = bounded(g.fixed_structure());
    let inside = |x: &Q, (l, r): &(Q, Q)| l < x && x < r;
    cf.iter().any(|i| {
        cg.iter().any(|j| {
            let a = usize::from(inside(&i.0, j)) + usize::from(inside(&i.1, j));
            let b = usize::from(inside(&j.0, i)) + usize::from(inside(&j.1, i));
            a == 1 || b == 1
        })
    })
}

/// A crossing pair of open intervals, if any (`None` means the family is cross-free).
pub fn crossing_pair<T: Ord>(intervals: &[(T, T)]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&i, &j| intervals[i].0.cmp(&intervals[j].0).then(intervals[j].1.cmp(&intervals[i].1)));
    let mut stack: Vec<usize> = Vec::new();
    for i in order {
        let (a, b) = &intervals[i];
        while let Some(&top) = stack.last() {
            if intervals[top].1 <= *a {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = stack.last() {
            if intervals[top].1 < *b {
                return Some((top, i));
            }
        }
        stack.push(i);
    }
    None
}

/// True iff every two intervals are nested or disjoint.
pub fn cross_free<T: Ord>(intervals: &[(T, T)]) -> bool {
    crossing_pair(intervals).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Q {
        parse_rational(s).unwrap()
    }

    #[test]
    fn f0_values() {
        let f = f0();
        assert_eq!(f.evaluate(&q("1/4")).unwrap(), q("1/2"));
        assert_eq!(f.derivative(&Q::one(), Side::Left).unwrap(), q("1/2"));
        assert_eq!(f.tau(End::High).unwrap(), 1);
        assert_eq!(f.tau(End::Low).unwrap(), -1);
        assert!(f.derivative(&Q::one(), Side::Right).is_err());
        let fs = f.fixed_structure();
        assert_eq!(fs.support, vec![(Bound::Finite(Q::zero()), Bound::Finite(Q::one()))]);
        assert_eq!(fs.fixed.len(), 2);
    }

    #[test]
    fn compose_with_inverse() {
        let f = f0();
        assert!(f.after(&f.invert()).is_identity());
        assert!(compose(&f, &translation(Q::one())).is_err());
    }

    #[test]
    fn text_round_trip() {
        let f = f0();
        assert_eq!(PLMap::parse(&f.to_text()).unwrap(), f);
        let g = g_plus(&Q::zero(), &int(2)).unwrap();
        assert_eq!(g.to_text(), "-inf : 1, 0; 0 : 2, 0");
        assert_eq!(PLMap::parse(&g.to_text()).unwrap(), g);
        assert!(PLMap::parse("0 : 2, 0").is_err());
    }

    #[test]
    fn bieri_strebel_pieces() {
        let gp = g_plus(&Q::zero(), &int(2)).unwrap();
        let fs = gp.fixed_structure();
        assert_eq!(fs.fixed, vec![(Bound::NegInf, Bound::Finite(Q::zero()))]);
        assert_eq!(fs.support, vec![(Bound::Finite(Q::zero()), Bound::PosInf)]);
        assert_eq!(gp.jump_cocycle(&Q::zero(), Side::Right), q("1/2"));
        let gm = g_minus(&Q::zero(), &int(2)).unwrap();
        assert_eq!(gm.jump_cocycle(&Q::zero(), Side::Right), int(2));
        let g = homothety(&Q::zero(), &int(2)).unwrap();
        assert_eq!(gm, g.after(&gp.invert()));
        let t = translation(Q::one());
        let (v, a) = t.germ(End::High, &SlopeGroup::dyadic()).unwrap();
        assert_eq!((v, a), (vec![0], Q::one()));
        assert!(t.fixed_structure().fixed.is_empty());
    }

    #[test]
    fn thompson_pair_relators() {
        let gens = standard_generators(&Family::ThompsonF);
        let r = verify_relators(&gens[0].1, &gens[1].1).unwrap();
        assert!(r.holds(), "{r:?}");
        let id = PLMap::identity(Model::UnitInterval);
        assert!(!verify_relators(&id, &id).unwrap().holds());
    }

    #[test]
    fn perturbed_pair_fails_with_witness() {
        let a = PLMap::interval_from_points(&[(q("0"), q("0")), (q("1/2"), q("3/4")), (q("1"), q("1"))]).unwrap();
        let b = PLMap::interval_from_points(&[(q("0"), q("0")), (q("1/3"), q("1/4")), (q("1"), q("1"))]).unwrap();
        let r = verify_relators(&a, &b).unwrap();
        assert!(!r.holds());
        let (name, x) = r.witness.unwrap();
        assert!(name.contains("relator"));
        let ba = b.after(&a);
        let w = if name.starts_with("first") {
            commutator(&a, &ba.after(&b).after(&ba.invert()))
        } else {
            let ba2 = ba.after(&ba);
            commutator(&a, &ba2.after(&b).after(&ba2.invert()))
        };
        assert_ne!(w.eval(&x), x);
    }

    #[test]
    fn word_parsing() {
        let w = parse_word("a b^-1 g+(0,2) t(1/2)^3").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w[1].power, -1);
        assert_eq!(w[2].name, "g+");
        assert_eq!(w[2].params, vec![Q::zero(), int(2)]);
        assert_eq!(w[3].power, 3);
        let ctx = GroupPresentationContext::new(Family::ThompsonF);
        assert!(ctx.word("a a^-1").unwrap().is_identity());
        let bs = GroupPresentationContext::new(Family::BieriStrebel(SlopeGroup::dyadic()));
        assert_eq!(bs.word("g-(0,2)").unwrap(), g_minus(&Q::zero(), &int(2)).unwrap());
        assert!(bs.word("zz").is_err());
    }

    #[test]
    fn two_chain_examples() {
        let base = rescale_into(&f0(), &Q::zero(), &q("9/16")).unwrap();
        let shifted = rescale_into(&f0(), &q("7/16"), &Q::one()).unwrap();
        let n = two_chain_witness(&base, &shifted).unwrap();
        assert!(n >= 1);
        let fc = base.eval(&q("7/16"));
        for k in 1..n {
            assert!(shifted.pow(k).eval(&fc) <= q("9/16"));
        }
        assert!(shifted.pow(n).eval(&fc) > q("9/16"));

        let left = rescale_into(&f0(), &Q::zero(), &q("1/4")).unwrap();
        let right = rescale_into(&f0(), &q("1/2"), &Q::one()).unwrap();
        assert_eq!(two_chain_witness(&left, &right), Err(PlError::HypothesisFailed(1)));
    }

    #[test]
    fn linked_examples() {
        let on = |a: &str, b: &str| rescale_into(&f0(), &q(a), &q(b)).unwrap();
        assert!(linked_pair(&on("0", "1/2"), &on("1/4", "3/4")));
        assert!(!linked_pair(&on("0", "3/4"), &on("1/4", "1/2")));
        let two = on("0", "1/4").after(&on("1/2", "1"));
        assert!(linked_pair(&two, &on("1/8", "3/4")));
    }

    #[test]
    fn cross_free_examples() {
        assert!(cross_free(&[(0, 1), (2, 3)]));
        assert!(!cross_free(&[(0, 2), (1, 3)]));
        assert!(cross_free(&[(0, 1), (1, 2), (0, 2), (0, 1)]));
        assert!(cross_free::<i32>(&[]));
    }

    #[test]
    fn ball_counts() {
        let ctx = GroupPresentationContext::new(Family::ThompsonF);
        let b = ball(&ctx.generators, 2);
        // F is free-ish at small radius: 1 + 4 + 12 words, all distinct.
        assert_eq!(b.len(), 17);
    }
}
