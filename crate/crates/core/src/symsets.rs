//! Self-similar subsets of ℝ coded by binary words.
//!
//! For a word pair `(w₁, w₂)`, `K̃₀` is the set of infinite concatenations of
//! the two words and `K₀ = ev(K̃₀) ⊂ [0,1]`; the reference set is
//! `K = ⋃ₙ (n + K₀)`. Thompson's group F acts on ℝ (dyadic PL maps that are
//! integer translations near ±∞) and [`TailSet`] gives an exact canonical
//! representation of every image `g(K)`.
//!
//! Canonical form: outside an integer range `[lo, hi)` the set equals `K`;
//! inside, each unit cell `[n, n+1)` is a finite disjoint union of pieces
//! `n + ev(u·v·K̃₀)` where `u` is a bit word that cannot be shortened by
//! moving a trailing block into `v`, and `v` ranges over a maximal antichain
//! of block words. With the cancellation property, distinct roots `u` give
//! disjoint pieces, so the representation is unique.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::exactnum::{ExactRational, Sign};
use crate::plgroup::{Affine, Model, PLMap, PlError};
use crate::preorders::{PreorderError, SignEngine};

type Q = ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("invalid word pair: {0}")]
    InvalidPair(String),
    #[error("map is not a dyadic PL map with integer translation germs")]
    NonDyadicMap,
    #[error("point is a limit of the set from the left; no maximum below it")]
    NotIsolated,
    #[error("no point of the set below the given bound within the window")]
    EmptyBelow,
    #[error("map lives on the wrong model")]
    ModelMismatch,
    #[error(transparent)]
    Pl(#[from] PlError),
}

/// Why a word pair fails the cancellation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CancelFailure {
    /// `z` carries a tail of `K̃₀` into `K̃₀` but is not a concatenation of the words.
    NonFactorizable,
    /// `z` factors over the words in two different ways.
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationReport {
    pub holds: bool,
    pub bound: usize,
    pub witness: Option<(Vec<u8>, CancelFailure)>,
}

pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Vec<u8>, SymError> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(SymError::InvalidPair(format!("`{s}` is not a binary word"))),
        })
        .collect()
}

/// Nondeterministic parser of concatenations of `w₁, w₂`.
///
/// State 0 sits at a block boundary; the other states are positions inside a block.
#[derive(Debug, Clone)]
struct BlockAutomaton {
    next: Vec<[Vec<usize>; 2]>,
}

impl BlockAutomaton {
    fn new(words: [&[u8]; 2]) -> BlockAutomaton {
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut count = 1;
        for (i, w) in words.iter().enumerate() {
            for j in 1..w.len() {
                ids.insert((i, j), count);
                count += 1;
            }
        }
        let mut next = vec![[Vec::new(), Vec::new()]; count];
        for (i, w) in words.iter().enumerate() {
            for j in 0..w.len() {
                let from = if j == 0 { 0 } else { ids[&(i, j)] };
                let to = if j + 1 == w.len() { 0 } else { ids[&(i, j + 1)] };
                next[from][w[j] as usize].push(to);
            }
        }
        BlockAutomaton { next }
    }

    fn states(&self) -> usize {
        self.next.len()
    }

    /// Pairs `(p, q)` from which both runs can continue forever on a common word.
    fn live_pairs(&self) -> Vec<Vec<bool>> {
        let n = self.states();
        let mut live = vec![vec![true; n]; n];
        loop {
            let mut changed = false;
            for p in 0..n {
                for q in 0..n {
                    if !live[p][q] {
                        continue;
                    }
                    let ok = (0..2).any(|b| {
                        self.next[p][b].iter().any(|&p2| self.next[q][b].iter().any(|&q2| live[p2][q2]))
                    });
                    if !ok {
                        live[p][q] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                return live;
            }
        }
    }
}

/// Exhaustive cancellation check for prefixes `z` with `|z| ≤ bound`.
///
/// Fails if some `z` sends a tail of `K̃₀` into `K̃₀` without being a
/// concatenation of the words, or if `z` has two factorizations.
pub fn cancellation_check(w1: &[u8], w2: &[u8], bound: usize) -> Result<CancellationReport, SymError> {
    if w1.is_empty() || w2.is_empty() || w1 == w2 {
        return Err(SymError::InvalidPair("words must be nonempty and distinct".into()));
    }
    if bound < w1.len().max(w2.len()) {
        return Err(SymError::InvalidPair("bound shorter than the words".into()));
    }
    let aut = BlockAutomaton::new([w1, w2]);
    let live = aut.live_pairs();
    let n = aut.states();
    let mut start = vec![0u8; n];
    start[0] = 1;
    let mut seen: HashSet<Vec<u8>> = HashSet::from([start.clone()]);
    let mut queue: VecDeque<(Vec<u8>, Vec<u8>)> = VecDeque::from([(start, vec![])]);
    while let Some((cfg, word)) = queue.pop_front() {
        if word.len() == bound {
            continue;
        }
        for b in 0..2u8 {
            let mut nc = vec![0u8; n];
            for s in 0..n {
                if cfg[s] > 0 {
                    for &t in &aut.next[s][b as usize] {
                        nc[t] = (nc[t] + cfg[s]).min(2);
                    }
                }
            }
            if nc.iter().all(|&c| c == 0) {
                continue;
            }
            let mut z = word.clone();
            z.push(b);
            if nc[0] >= 2 {
                return Ok(CancellationReport { holds: false, bound, witness: Some((z, CancelFailure::Ambiguous)) });
            }
            let carries_tail = (0..n).any(|q| nc[q] > 0 && live[q][0]);
            if carries_tail && nc[0] == 0 {
                return Ok(CancellationReport {
                    holds: false,
                    bound,
                    witness: Some((z, CancelFailure::NonFactorizable)),
                });
            }
            if seen.insert(nc.clone()) {
                queue.push_back((nc, z));
            }
        }
    }
    Ok(CancellationReport { holds: true, bound, witness: None })
}

/// A validated pair of non-constant binary words forming a prefix code with cancellation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPair {
    words: [Vec<u8>; 2],
}

impl WordPair {
    pub fn new(w1: Vec<u8>, w2: Vec<u8>) -> Result<WordPair, SymError> {
        let constant = |w: &[u8]| w.iter().all(|&b| b == w[0]);
        if w1.is_empty() || w2.is_empty() || constant(&w1) || constant(&w2) {
            return Err(SymError::InvalidPair("words must be non-constant".into()));
        }
        if w1.starts_with(&w2) || w2.starts_with(&w1) {
            return Err(SymError::InvalidPair("words must form a prefix code".into()));
        }
        let bound = 20.max(2 * (w1.len() + w2.len()));
        let rep = cancellation_check(&w1, &w2, bound)?;
        if let Some((z, why)) = rep.witness {
            return Err(SymError::InvalidPair(format!("cancellation fails at {} ({why:?})", bits_to_string(&z))));
        }
        Ok(WordPair { words: [w1, w2] })
    }
    pub fn parse(w1: &str, w2: &str) -> Result<WordPair, SymError> {
        WordPair::new(parse_bits(w1)?, parse_bits(w2)?)
    }
    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }
}

/// `n + ev(prefix · period^ω)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPoint {
    pub cell: i64,
    pub prefix: Vec<u8>,
    pub period: Vec<u8>,
}

fn bits_value(bits: &[u8]) -> BigInt {
    bits.iter().fold(BigInt::zero(), |acc, &b| acc * 2 + b)
}

/// `ev(prefix · period^ω)` as an exact rational.
pub fn eventually_periodic_value(prefix: &[u8], period: &[u8]) -> Q {
    let rep = Q::new(bits_value(period), (BigInt::one() << period.len()) - 1);
    (Q::from_integer(bits_value(prefix)) + rep) / Q::from_integer(BigInt::one() << prefix.len())
}

/// Binary expansion of `r ∈ [0,1)` as `(prefix, period)`; dyadics end in period `0`.
pub fn binary_expansion(r: &Q) -> (Vec<u8>, Vec<u8>) {
    let q = r.denom().clone();
    let mut rem = r.numer().clone();
    let mut digits = Vec::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    loop {
        if let Some(&pos) = seen.get(&rem) {
            let period = digits.split_off(pos);
            return (digits, period);
        }
        seen.insert(rem.clone(), digits.len());
        rem *= 2;
        if rem >= q {
            digits.push(1);
            rem -= &q;
        } else {
            digits.push(0);
        }
    }
}

impl SetPoint {
    pub fn value(&self) -> Q {
        Q::from_integer(BigInt::from(self.cell)) + eventually_periodic_value(&self.prefix, &self.period)
    }
    pub fn from_rational(x: &Q) -> SetPoint {
        let cell = x.floor().to_integer();
        let (prefix, period) = binary_expansion(&(x - Q::from_integer(cell.clone())));
        SetPoint { cell: cell.to_i64().expect("cell fits in i64"), prefix, period }
    }
}

impl fmt::Display for SetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + 0.{}({})", self.cell, bits_to_string(&self.prefix), bits_to_string(&self.period))
    }
}

/// Root bits → antichain of block words (symbol 0 is `w₁`, 1 is `w₂`).
pub type Cell = BTreeMap<Vec<u8>, Vec<Vec<u8>>>;

/// Canonical image `g(K)` of the reference set; see the module docs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TailSet {
    lo: i64,
    hi: i64,
    cells: BTreeMap<i64, Cell>,
}

fn reference_cell() -> Cell {
    Cell::from([(vec![], vec![vec![]])])
}

impl TailSet {
    pub fn reference() -> TailSet {
        TailSet { lo: 0, hi: 0, cells: BTreeMap::new() }
    }
    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }
    /// The structure of cell `[n, n+1)`.
    pub fn cell(&self, n: i64) -> Cell {
        if n < self.lo || n >= self.hi {
            reference_cell()
        } else {
            self.cells.get(&n).cloned().unwrap_or_default()
        }
    }
    pub fn is_reference(&self) -> bool {
        self.lo == self.hi
    }

    fn normalized(mut lo: i64, mut hi: i64, mut cells: BTreeMap<i64, Cell>) -> TailSet {
        cells.retain(|n, c| *n >= lo && *n < hi && !c.is_empty());
        let k = reference_cell();
        while lo < hi && cells.get(&lo) == Some(&k) {
            cells.remove(&lo);
            lo += 1;
        }
        while lo < hi && cells.get(&(hi - 1)) == Some(&k) {
            cells.remove(&(hi - 1));
            hi -= 1;
        }
        if lo == hi {
            return TailSet::reference();
        }
        TailSet { lo, hi, cells }
    }

    /// Human-readable dump of the cells meeting `[from, to)`.
    pub fn dump(&self, from: i64, to: i64) -> String {
        let mut out = format!("agrees with K outside [{}, {})\n", self.lo, self.hi);
        for n in from..to {
            let c = self.cell(n);
            let parts: Vec<String> = c
                .iter()
                .flat_map(|(u, vs)| {
                    vs.iter().map(move |v| {
                        let syms: String = v.iter().map(|s| if *s == 0 { 'A' } else { 'B' }).collect();
                        format!("{}·[{}]", bits_to_string(u), syms)
                    })
                })
                .collect();
            out.push_str(&format!("[{n},{}): {}\n", n + 1, if parts.is_empty() { "∅".into() } else { parts.join(" ∪ ") }));
        }
        out
    }
}

/// `α` value: `−∞` for equal sets, otherwise the top of the symmetric difference.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Alpha {
    MinusInfinity,
    Point(Q),
}

/// Word pair plus derived data used by every set operation.
#[derive(Debug, Clone)]
pub struct SymContext {
    pair: WordPair,
    /// Index of the lexicographically larger block.
    big: u8,
    live: Vec<Vec<bool>>,
    aut: BlockAutomaton,
}

/// Removes nested words and merges sibling pairs until stable.
fn canonical_antichain(mut words: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    loop {
        words.sort();
        words.dedup();
        let set: BTreeSet<Vec<u8>> = words.iter().cloned().collect();
        let before = words.len();
        words.retain(|w| !(0..w.len()).any(|k| set.contains(&w[..k])));
        let set: BTreeSet<Vec<u8>> = words.iter().cloned().collect();
        let mut merged = Vec::new();
        let mut used = BTreeSet::new();
        for w in &words {
            if used.contains(w) {
                continue;
            }
            if let Some((&last, parent)) = w.split_last() {
                let mut sib = parent.to_vec();
                sib.push(1 - last);
                if set.contains(&sib) {
                    used.insert(sib);
                    used.insert(w.clone());
                    merged.push(parent.to_vec());
                    continue;
                }
            }
            merged.push(w.clone());
        }
        if merged.len() == before {
            merged.sort();
            return merged;
        }
        words = merged;
    }
}

fn pow2(e: i64) -> Q {
    if e >= 0 {
        Q::from_integer(BigInt::one() << e as usize)
    } else {
        Q::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

fn log2_exact(r: &Q) -> Option<i64> {
    let is_pow = |n: &BigInt| n.is_positive() && (n & (n - BigInt::one())).is_zero();
    if r.numer().is_one() && is_pow(r.denom()) {
        Some(-(r.denom().bits() as i64 - 1))
    } else if r.denom().is_one() && is_pow(r.numer()) {
        Some(r.numer().bits() as i64 - 1)
    } else {
        None
    }
}

impl SymContext {
    pub fn new(pair: WordPair) -> SymContext {
        let big = if pair.words[0] > pair.words[1] { 0 } else { 1 };
        let aut = BlockAutomaton::new([&pair.words[0], &pair.words[1]]);
        let live = aut.live_pairs();
        SymContext { pair, big, live, aut }
    }

    pub fn pair(&self) -> &WordPair {
        &self.pair
    }

    fn expand(&self, syms: &[u8]) -> Vec<u8> {
        syms.iter().flat_map(|&s| self.pair.words[s as usize].iter().copied()).collect()
    }

    /// Unique factorization of a block word (prefix code).
    fn factor(&self, bits: &[u8]) -> Option<Vec<u8>> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < bits.len() {
            let s = (0..2u8).find(|&s| bits[i..].starts_with(&self.pair.words[s as usize]))?;
            out.push(s);
            i += self.pair.words[s as usize].len();
        }
        Some(out)
    }

    /// Splits `z = u·expand(v)` with `u` as short as possible.
    fn root_split(&self, z: &[u8]) -> (Vec<u8>, Vec<u8>) {
        for i in 0..=z.len() {
            if let Some(v) = self.factor(&z[i..]) {
                return (z[..i].to_vec(), v);
            }
        }
        unreachable!("the empty suffix always factors")
    }

    fn sup_of(&self, prefix: Vec<u8>) -> Q {
        eventually_periodic_value(&prefix, &self.pair.words[self.big as usize])
    }

    fn inf_of(&self, prefix: Vec<u8>) -> Q {
        eventually_periodic_value(&prefix, &self.pair.words[1 - self.big as usize])
    }

    fn cell_from_nodes(&self, nodes: &[Vec<u8>]) -> Cell {
        let mut groups: BTreeMap<Vec<u8>, Vec<Vec<u8>>> = BTreeMap::new();
        for z in nodes {
            let (u, v) = self.root_split(z);
            groups.entry(u).or_default().push(v);
        }
        groups.into_iter().map(|(u, vs)| (u, canonical_antichain(vs))).collect()
    }

    /// `g(S)` for `g` in the line model of F.
    pub fn image(&self, g: &PLMap, s: &TailSet) -> Result<TailSet, SymError> {
        if g.model() != Model::Line {
            return Err(SymError::ModelMismatch);
        }
        let mut pieces: Vec<(i64, Q)> = Vec::with_capacity(g.pieces().len());
        for p in g.pieces() {
            let a = log2_exact(&p.slope).ok_or(SymError::NonDyadicMap)?;
            if crate::exactnum::Dyadic::from_rational(&p.offset).is_err() {
                return Err(SymError::NonDyadicMap);
            }
            pieces.push((a, p.offset.clone()));
        }
        let end_shift = |p: &Affine| -> Result<i64, SymError> {
            if !p.slope.is_one() || !p.offset.is_integer() {
                return Err(SymError::NonDyadicMap);
            }
            p.offset.to_integer().to_i64().ok_or(SymError::NonDyadicMap)
        };
        let t_lo = end_shift(&g.pieces()[0])?;
        let t_hi = end_shift(g.pieces().last().expect("nonempty"))?;
        let bps = g.breakpoints();
        let (mut lo, mut hi) = (s.lo, s.hi);
        if let (Some(first), Some(last)) = (bps.first(), bps.last()) {
            let f = first.floor().to_integer().to_i64().ok_or(SymError::NonDyadicMap)?;
            let l = last.ceil().to_integer().to_i64().ok_or(SymError::NonDyadicMap)?;
            if s.is_reference() {
                lo = f;
                hi = l.max(f);
            } else {
                lo = lo.min(f);
                hi = hi.max(l);
            }
        }
        let mut out: BTreeMap<i64, Vec<Vec<u8>>> = BTreeMap::new();
        let mut work: Vec<(i64, Vec<u8>)> = Vec::new();
        for n in lo..hi {
            for (u, vs) in s.cell(n) {
                for v in vs {
                    let mut z = u.clone();
                    z.extend(self.expand(&v));
                    work.push((n, z));
                }
            }
        }
        while let Some((n, z)) = work.pop() {
            let left = Q::from_integer(BigInt::from(n)) + eventually_periodic_value(&z, &[0]);
            let width = pow2(-(z.len() as i64));
            let right = &left + &width;
            let split = bps.iter().any(|b| *b > left && *b < right);
            let idx = g.piece_index(&((&left + &right) / Q::from_integer(2.into())));
            let (a, b) = &pieces[idx];
            let e = a - z.len() as i64;
            let c = pow2(*a) * &left + b;
            let aligned = e <= 0 && (&c * pow2(-e)).is_integer();
            if split || !aligned {
                for s in 0..2u8 {
                    let mut z2 = z.clone();
                    z2.extend_from_slice(&self.pair.words[s as usize]);
                    work.push((n, z2));
                }
                continue;
            }
            let n2 = c.floor().to_integer();
            let frac = (&c - Q::from_integer(n2.clone())) * pow2(-e);
            let k = frac.to_integer();
            let len = (-e) as usize;
            let bits: Vec<u8> = (0..len).rev().map(|i| u8::from(((&k >> i) & BigInt::one()).is_one())).collect();
            let n2 = n2.to_i64().ok_or(SymError::NonDyadicMap)?;
            out.entry(n2).or_default().push(bits);
        }
        let cells = out.into_iter().map(|(n, zs)| (n, self.cell_from_nodes(&zs))).collect();
        Ok(TailSet::normalized(lo + t_lo, hi + t_hi, cells))
    }

    /// `g(K)`.
    pub fn orbit_point(&self, g: &PLMap) -> Result<TailSet, SymError> {
        self.image(g, &TailSet::reference())
    }

    /// Sup of the block-word difference below `prefix`; `true` means the first set owns it.
    fn diff_sup(&self, a: &[Vec<u8>], b: &[Vec<u8>], p: &mut Vec<u8>) -> Option<(Vec<u8>, bool)> {
        let covers = |set: &[Vec<u8>], p: &[u8]| set.iter().any(|w| p.starts_with(w));
        let below = |set: &[Vec<u8>], p: &[u8]| set.iter().any(|w| w.starts_with(p));
        let (ca, cb) = (covers(a, p), covers(b, p));
        if ca && cb {
            return None;
        }
        if ca && !below(b, p) {
            return Some((p.clone(), true));
        }
        if cb && !below(a, p) {
            return Some((p.clone(), false));
        }
        if !ca && !cb && !below(a, p) && !below(b, p) {
            return None;
        }
        for c in [self.big, 1 - self.big] {
            p.push(c);
            let r = self.diff_sup(a, b, p);
            p.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }

    /// Top of `S₁ Δ S₂` and whether it belongs to `S₁`.
    pub fn alpha_with_owner(&self, s1: &TailSet, s2: &TailSet) -> Option<(Q, bool)> {
        let lo = s1.lo.min(s2.lo);
        let hi = s1.hi.max(s2.hi);
        for n in (lo..hi).rev() {
            let (c1, c2) = (s1.cell(n), s2.cell(n));
            if c1 == c2 {
                continue;
            }
            let roots: BTreeSet<&Vec<u8>> = c1.keys().chain(c2.keys()).collect();
            let mut best: Option<(Q, bool)> = None;
            for u in roots {
                let empty = Vec::new();
                let a = c1.get(u).unwrap_or(&empty);
                let b = c2.get(u).unwrap_or(&empty);
                if let Some((p, owner)) = self.diff_sup(a, b, &mut Vec::new()) {
                    let mut bits = u.clone();
                    bits.extend(self.expand(&p));
                    let v = Q::from_integer(BigInt::from(n)) + self.sup_of(bits);
                    if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                        best = Some((v, owner));
                    }
                }
            }
            return best;
        }
        None
    }

    pub fn alpha(&self, s1: &TailSet, s2: &TailSet) -> Alpha {
        match self.alpha_with_owner(s1, s2) {
            None => Alpha::MinusInfinity,
            Some((x, _)) => Alpha::Point(x),
        }
    }

    /// Runs the block parser over an eventually periodic word from `start`.
    ///
    /// Returns true if the infinite word starting at bit `start` lies in `K̃₀`.
    fn tail_in_k(&self, prefix: &[u8], period: &[u8], start: usize) -> bool {
        let bit = |i: usize| if i < prefix.len() { prefix[i] } else { period[(i - prefix.len()) % period.len()] };
        let reduce = |i: usize| if i < prefix.len() { i } else { prefix.len() + (i - prefix.len()) % period.len() };
        let mut seen = HashSet::new();
        let mut pos = start;
        loop {
            if !seen.insert(reduce(pos)) {
                return true;
            }
            let Some(s) = (0..2).find(|&s| {
                let w = &self.pair.words[s];
                w.iter().enumerate().all(|(j, &b)| bit(pos + j) == b)
            }) else {
                return false;
            };
            pos += self.pair.words[s].len();
        }
    }

    /// Exact membership of a rational point.
    pub fn contains(&self, s: &TailSet, x: &Q) -> bool {
        let p = SetPoint::from_rational(x);
        if p.period == [0] {
            return false;
        }
        self.contains_point(s, &p)
    }

    pub fn contains_point(&self, s: &TailSet, p: &SetPoint) -> bool {
        let bit = |i: usize| {
            if i < p.prefix.len() {
                p.prefix[i]
            } else {
                p.period[(i - p.prefix.len()) % p.period.len()]
            }
        };
        for (u, vs) in s.cell(p.cell) {
            if !u.iter().enumerate().all(|(i, &b)| bit(i) == b) {
                continue;
            }
            let mut pos = u.len();
            let mut path: Vec<u8> = Vec::new();
            loop {
                if vs.contains(&path) {
                    if self.tail_in_k(&p.prefix, &p.period, pos) {
                        return true;
                    }
                    break;
                }
                if !vs.iter().any(|v| v.starts_with(&path)) {
                    break;
                }
                let Some(sym) = (0..2u8).find(|&sy| {
                    let w = &self.pair.words[sy as usize];
                    w.iter().enumerate().all(|(j, &b)| bit(pos + j) == b)
                }) else {
                    break;
                };
                pos += self.pair.words[sym as usize].len();
                path.push(sym);
            }
        }
        false
    }

    /// Largest point of the block cylinder under `bits` that is `< x` (or `≤ x`).
    fn max_in_cylinder(&self, bits: &mut Vec<u8>, x: &Q, strict: bool, depth: usize) -> Result<Option<Vec<u8>>, SymError> {
        let inf = self.inf_of(bits.clone());
        if inf > *x || (strict && inf == *x) {
            return Ok(None);
        }
        let sup = self.sup_of(bits.clone());
        if sup < *x || (!strict && sup == *x) {
            return Ok(Some(bits.clone()));
        }
        if depth > 256 {
            return Err(SymError::NotIsolated);
        }
        for c in [self.big, 1 - self.big] {
            let len = bits.len();
            bits.extend_from_slice(&self.pair.words[c as usize]);
            let r = self.max_in_cylinder(bits, x, strict, depth + 1);
            bits.truncate(len);
            if let Some(found) = r? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn max_up_to(&self, s: &TailSet, x: &Q, strict: bool, window: Option<&Q>) -> Result<SetPoint, SymError> {
        let start = x.floor().to_integer().to_i64().expect("cell fits in i64");
        let mut n = start;
        loop {
            let base = Q::from_integer(BigInt::from(n));
            if let Some(w) = window {
                if base.clone() + Q::one() <= *w {
                    return Err(SymError::EmptyBelow);
                }
            }
            let local = x - &base;
            let mut best: Option<(Q, Vec<u8>)> = None;
            for (u, vs) in s.cell(n) {
                for v in vs {
                    let mut bits = u.clone();
                    bits.extend(self.expand(&v));
                    if let Some(found) = self.max_in_cylinder(&mut bits, &local, strict, 0)? {
                        let val = self.sup_of(found.clone());
                        if best.as_ref().is_none_or(|(b, _)| val > *b) {
                            best = Some((val, found));
                        }
                    }
                }
            }
            if let Some((val, bits)) = best {
                if let Some(w) = window {
                    if base + val < *w {
                        return Err(SymError::EmptyBelow);
                    }
                }
                let period = self.pair.words[self.big as usize].clone();
                return Ok(SetPoint { cell: n, prefix: bits, period });
            }
            if n < s.lo.min(start) - 1 {
                // Below the range every cell is a reference cell and nonempty.
                return Err(SymError::EmptyBelow);
            }
            n -= 1;
        }
    }

    /// Greatest point of `S` strictly below `x`, optionally within `[window, x)`.
    pub fn max_below(&self, s: &TailSet, x: &Q, window: Option<&Q>) -> Result<SetPoint, SymError> {
        self.max_up_to(s, x, true, window)
    }

    /// Greatest point of `S` at or below `x`.
    pub fn max_at_most(&self, s: &TailSet, x: &Q) -> Result<SetPoint, SymError> {
        self.max_up_to(s, x, false, None)
    }

    /// Order on the orbit of K: compare `max{x ∈ Sᵢ : x ≤ α}`.
    pub fn compare_sets(&self, s1: &TailSet, s2: &TailSet) -> Result<Ordering, SymError> {
        let Some((alpha, _)) = self.alpha_with_owner(s1, s2) else {
            return Ok(Ordering::Equal);
        };
        let x1 = self.max_at_most(s1, &alpha)?.value();
        let x2 = self.max_at_most(s2, &alpha)?.value();
        Ok(x1.cmp(&x2))
    }

    pub fn ok_compare(&self, g1: &PLMap, g2: &PLMap) -> Result<Ordering, SymError> {
        self.compare_sets(&self.orbit_point(g1)?, &self.orbit_point(g2)?)
    }

    /// Whether `ev(bits·K̃₀)` meets `K₀`, via the product of block parsers.
    fn meets_reference(&self, bits: &[u8]) -> bool {
        let mut states: BTreeSet<usize> = BTreeSet::from([0]);
        for &b in bits {
            states = states.iter().flat_map(|&s| self.aut.next[s][b as usize].iter().copied()).collect();
            if states.is_empty() {
                return false;
            }
        }
        states.iter().any(|&q| self.live[q][0])
    }

    /// `g(S) ∩ K` is open in K: every piece of `g(S)` meeting K is a cylinder of K.
    pub fn property_o_spot(&self, g: &PLMap, s: &TailSet) -> Result<bool, SymError> {
        let img = self.image(g, s)?;
        for n in img.lo..img.hi {
            for (u, vs) in img.cell(n) {
                if u.is_empty() {
                    continue;
                }
                for v in vs {
                    let mut bits = u.clone();
                    bits.extend(self.expand(&v));
                    if self.meets_reference(&bits) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Random points of `S` with eventually periodic block tails, within cells `[from, to)`.
    pub fn sample_points<R: Rng>(&self, s: &TailSet, from: i64, to: i64, count: usize, rng: &mut R) -> Vec<SetPoint> {
        let mut nodes: Vec<(i64, Vec<u8>)> = Vec::new();
        for n in from..to {
            for (u, vs) in s.cell(n) {
                for v in vs {
                    let mut bits = u.clone();
                    bits.extend(self.expand(&v));
                    nodes.push((n, bits));
                }
            }
        }
        if nodes.is_empty() {
            return vec![];
        }
        (0..count)
            .map(|_| {
                let (n, mut prefix) = nodes[rng.gen_range(0..nodes.len())].clone();
                for _ in 0..rng.gen_range(0..4) {
                    prefix.extend_from_slice(&self.pair.words[rng.gen_range(0..2)]);
                }
                let plen = rng.gen_range(1..4);
                let period: Vec<u8> = (0..plen).flat_map(|_| self.pair.words[rng.gen_range(0..2)].clone()).collect();
                SetPoint { cell: n, prefix, period }
            })
            .collect()
    }
}

/// F acting on the orbit of K, ordered through [`SymContext::compare_sets`].
#[derive(Debug, Clone)]
pub struct OkEngine {
    pub ctx: SymContext,
}

impl SignEngine for OkEngine {
    type Elem = PLMap;
    fn sign(&self, g: &PLMap) -> Result<Sign, PreorderError> {
        let id = PLMap::identity(Model::Line);
        self.compare(g, &id).map(Sign::from_ordering)
    }
    fn compare(&self, g: &PLMap, h: &PLMap) -> Result<Ordering, PreorderError> {
        self.ctx.ok_compare(g, h).map_err(|e| PreorderError::Undefined(e.to_string()))
    }
    fn name(&self) -> String {
        format!(
            "okorder({}, {})",
            bits_to_string(self.ctx.pair.word(0)),
            bits_to_string(self.ctx.pair.word(1))
        )
    }
}

/// Line-model generators of F: `t1 = x+1` and `x1`: identity on `(−∞,0]`, `2x` on `[0,1]`, `x+1` beyond.
pub fn line_f_generators() -> Vec<(String, PLMap)> {
    let t1 = crate::plgroup::translation(Q::one());
    let x1 = PLMap::new(
        Model::Line,
        vec![Q::zero(), Q::one()],
        vec![Affine::identity(), Affine::new(Q::from_integer(2.into()), Q::zero()), Affine::new(Q::one(), Q::one())],
    )
    .expect("valid generator");
    vec![("t1".into(), t1), ("x1".into(), x1)]
}

/// Standard dyadic intervals covering `[a, b]` greedily (maximal pieces).
fn dyadic_cover(a: &Q, b: &Q) -> Vec<(Q, Q)> {
    let mut out = Vec::new();
    let mut x = a.clone();
    while x < *b {
        let mut e: i64 = 64;
        loop {
            let len = pow2(e);
            if (&x / &len).is_integer() && &x + &len <= *b {
                out.push((x.clone(), &x + &len));
                x += len;
                break;
            }
            e -= 1;
        }
    }
    out
}

/// A dyadic PL homeomorphism `[a,b] → [c,d]` between intervals with dyadic endpoints.
pub fn dyadic_bridge(a: &Q, b: &Q, c: &Q, d: &Q) -> Vec<(Q, Affine)> {
    let mut src = dyadic_cover(a, b);
    let mut dst = dyadic_cover(c, d);
    let split = |v: &mut Vec<(Q, Q)>| {
        let i = (0..v.len()).max_by(|&i, &j| (&v[i].1 - &v[i].0).cmp(&(&v[j].1 - &v[j].0))).expect("nonempty");
        let (l, r) = v[i].clone();
        let m = (&l + &r) / Q::from_integer(2.into());
        v.splice(i..=i, [(l, m.clone()), (m, r)]);
    };
    while src.len() < dst.len() {
        split(&mut src);
    }
    while dst.len() < src.len() {
        split(&mut dst);
    }
    src.into_iter()
        .zip(dst)
        .map(|((l, r), (l2, r2))| {
            let s = (&r2 - &l2) / (&r - &l);
            let o = &l2 - &s * &l;
            (l, Affine::new(s, o))
        })
        .collect()
}

/// Extends dyadic affine maps on disjoint closed intervals to one line-model element.
///
/// `maps` lists `(p, q, h)` with `h` applied on `[p, q]`, sorted and with
/// images in the same order; the map is the identity left of the first and
/// right of the last interval.
pub fn glue(maps: &[(Q, Q, Affine)]) -> Result<PLMap, SymError> {
    let mut bps: Vec<Q> = Vec::new();
    let mut pieces: Vec<Affine> = vec![Affine::identity()];
    let mut prev: Option<(Q, Q)> = None;
    for (p, q, h) in maps {
        if let Some((pq, hq)) = &prev {
            for (x, piece) in dyadic_bridge(pq, p, hq, &h.apply(p)) {
                bps.push(x);
                pieces.push(piece);
            }
        } else if h.apply(p) != *p {
            return Err(SymError::InvalidPair("first interval must start at a fixed point".into()));
        }
        bps.push(p.clone());
        pieces.push(h.clone());
        prev = Some((q.clone(), h.apply(q)));
    }
    if let Some((q, hq)) = prev {
        if q != hq {
            return Err(SymError::InvalidPair("last interval must end at a fixed point".into()));
        }
        bps.push(q);
        pieces.push(Affine::identity());
    }
    // Zero-length bridges produce repeated breakpoints; drop the pieces they would start.
    let mut cb: Vec<Q> = Vec::new();
    let mut cp: Vec<Affine> = vec![pieces[0].clone()];
    for (b, p) in bps.into_iter().zip(pieces.into_iter().skip(1)) {
        if cb.last() == Some(&b) {
            *cp.last_mut().expect("nonempty") = p;
        } else {
            cb.push(b);
            cp.push(p);
        }
    }
    Ok(PLMap::from_pieces(Model::Line, cb, cp)?)
}
