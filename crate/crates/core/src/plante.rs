//! Wreath products `ℤ^m ≀ ℤ^k`, the Plante lexicographic order on finitely
//! supported lamp configurations, its ultrametric kernel δ and the invariant
//! family of convex sets `C_{σ,g}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactnum::{LatticePreorder, Sign};
use crate::plgroup::{crossing_pair, GroupElement};
use crate::preorders::{PreorderError, SignEngine};
use crate::Dyadic;

/// Finitely supported map from `ℤ^k` to `ℤ^m`; zero entries are never stored.
pub type Config = BTreeMap<Vec<i64>, Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanteError {
    #[error("base or lamp preorder is not a total order")]
    NonTotalOrder,
    #[error("disagreement point {0:?} lies outside the embedding range")]
    EmbeddingOutOfRange(Vec<i64>),
    #[error("identity embedding needs a rank-one base")]
    BadEmbedding,
}

/// `(σ, g)` with product `(σ₁,g₁)(σ₂,g₂) = (σ₁ + g₁·σ₂, g₁+g₂)`, `(g·σ)(x) = σ(x−g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    lamp: Config,
    shift: Vec<i64>,
    lamp_dim: usize,
}

fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn add_into(cfg: &mut Config, key: Vec<i64>, val: &[i64], sgn: i64) {
    let e = cfg.entry(key).or_insert_with(|| vec![0; val.len()]);
    e.iter_mut().zip(val).for_each(|(a, b)| *a += sgn * b);
    if is_zero(e) {
        cfg.retain(|_, v| !is_zero(v));
    }
}

/// `g·σ`.
pub fn shift_config(sigma: &Config, g: &[i64]) -> Config {
    sigma
        .iter()
        .map(|(x, v)| (x.iter().zip(g).map(|(a, b)| a + b).collect(), v.clone()))
        .collect()
}

/// Pointwise `s − t`.
pub fn difference(s: &Config, t: &Config) -> Config {
    let mut out = s.clone();
    for (x, v) in t {
        add_into(&mut out, x.clone(), v, -1);
    }
    out
}

impl WreathElement {
    pub fn new(lamp: Config, shift: Vec<i64>, lamp_dim: usize) -> WreathElement {
        let lamp = lamp.into_iter().filter(|(_, v)| !is_zero(v)).collect();
        WreathElement { lamp, shift, lamp_dim }
    }
    pub fn identity(base_dim: usize, lamp_dim: usize) -> WreathElement {
        WreathElement { lamp: Config::new(), shift: vec![0; base_dim], lamp_dim }
    }
    pub fn shift_by(g: Vec<i64>, lamp_dim: usize) -> WreathElement {
        WreathElement { lamp: Config::new(), shift: g, lamp_dim }
    }
    /// Lamp `h` at base point `x`, no shift.
    pub fn lamp_at(x: Vec<i64>, h: Vec<i64>) -> WreathElement {
        let k = x.len();
        let m = h.len();
        WreathElement::new(Config::from([(x, h)]), vec![0; k], m)
    }
    pub fn lamp(&self) -> &Config {
        &self.lamp
    }
    pub fn shift(&self) -> &[i64] {
        &self.shift
    }
    /// Action on configurations: `(σ,g)·t = σ + g·t`.
    pub fn act(&self, t: &Config) -> Config {
        let mut out = self.lamp.clone();
        for (x, v) in shift_config(t, &self.shift) {
            add_into(&mut out, x, &v, 1);
        }
        out
    }
}

impl GroupElement for WreathElement {
    fn identity_of(&self) -> WreathElement {
        WreathElement::identity(self.shift.len(), self.lamp_dim)
    }
    fn product(&self, other: &WreathElement) -> WreathElement {
        let lamp = self.act(&other.lamp);
        let shift = self.shift.iter().zip(&other.shift).map(|(a, b)| a + b).collect();
        WreathElement { lamp, shift, lamp_dim: self.lamp_dim }
    }
    fn inverse(&self) -> WreathElement {
        let neg: Vec<i64> = self.shift.iter().map(|a| -a).collect();
        let lamp = shift_config(&self.lamp, &neg)
            .into_iter()
            .map(|(x, v)| (x, v.into_iter().map(|a| -a).collect()))
            .collect();
        WreathElement { lamp, shift: neg, lamp_dim: self.lamp_dim }
    }
}

/// Named generators: shifts `g` (or `g1..gk`) and lamps at the origin `h` (or `h1..hm`).
pub fn wreath_generators(base_dim: usize, lamp_dim: usize) -> Vec<(String, WreathElement)> {
    let unit = |n: usize, i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>();
    let label = |s: &str, n: usize, i: usize| if n == 1 { s.to_string() } else { format!("{s}{}", i + 1) };
    let mut out = Vec::new();
    for i in 0..base_dim {
        out.push((label("g", base_dim, i), WreathElement::shift_by(unit(base_dim, i), lamp_dim)));
    }
    for i in 0..lamp_dim {
        out.push((label("h", lamp_dim, i), WreathElement::lamp_at(vec![0; base_dim], unit(lamp_dim, i))));
    }
    out
}

/// Plante order data: total orders on the base and lamp lattices.
#[derive(Debug, Clone)]
pub struct PlanteOrder {
    base: LatticePreorder,
    lamp: LatticePreorder,
}

impl PlanteOrder {
    pub fn new(base: LatticePreorder, lamp: LatticePreorder) -> Result<PlanteOrder, PlanteError> {
        if !base.is_total() || !lamp.is_total() {
            return Err(PlanteError::NonTotalOrder);
        }
        Ok(PlanteOrder { base, lamp })
    }
    /// Standard lexicographic orders on `ℤ^k` and `ℤ^m`.
    pub fn standard(base_dim: usize, lamp_dim: usize) -> PlanteOrder {
        PlanteOrder { base: LatticePreorder::lex(base_dim), lamp: LatticePreorder::lex(lamp_dim) }
    }
    pub fn base_cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        self.base.compare(a, b).expect("dimensions agree")
    }
    /// Largest support point of σ in the base order.
    pub fn top(&self, sigma: &Config) -> Option<Vec<i64>> {
        sigma.keys().max_by(|a, b| self.base_cmp(a, b)).cloned()
    }
    pub fn sign(&self, sigma: &Config) -> Sign {
        match self.top(sigma) {
            None => Sign::Residue,
            Some(x) => self.lamp.sign(&sigma[&x]).expect("dimensions agree"),
        }
    }
    /// Plante comparison of two configurations.
    pub fn compare(&self, s: &Config, t: &Config) -> Ordering {
        self.sign(&difference(s, t)).to_ordering()
    }
    /// Largest base point where `s` and `t` differ.
    pub fn max_disagreement(&self, s: &Config, t: &Config) -> Option<Vec<i64>> {
        self.top(&difference(s, t))
    }
}

/// Sign of a lamp configuration under the Plante order.
pub fn plante_sign(sigma: &Config, base: &LatticePreorder, lamp: &LatticePreorder) -> Result<Sign, PlanteError> {
    Ok(PlanteOrder::new(base.clone(), lamp.clone())?.sign(sigma))
}

#[derive(Debug, Clone)]
pub struct PlanteEngine {
    pub order: PlanteOrder,
}

impl SignEngine for PlanteEngine {
    type Elem = WreathElement;
    fn sign(&self, w: &WreathElement) -> Result<Sign, PreorderError> {
        Ok(self.order.sign(w.lamp()))
    }
    fn compare(&self, g: &WreathElement, h: &WreathElement) -> Result<Ordering, PreorderError> {
        Ok(self.order.compare(g.lamp(), h.lamp()))
    }
    fn name(&self) -> String {
        "plante".into()
    }
}

/// Value of the ultrametric kernel: `−∞` or a dyadic point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kernel {
    MinusInfinity,
    Value(Dyadic),
}

/// Order embedding of the base group into the dyadics.
#[derive(Debug, Clone)]
pub enum BaseEmbedding {
    /// `n ↦ n` on `ℤ`.
    Identity,
    /// Explicit table sorted by the base order.
    Table(Vec<(Vec<i64>, Dyadic)>),
}

impl BaseEmbedding {
    pub fn embed(&self, x: &[i64]) -> Result<Dyadic, PlanteError> {
        match self {
            BaseEmbedding::Identity if x.len() == 1 => Ok(Dyadic::new(BigInt::from(x[0]), 0)),
            BaseEmbedding::Identity => Err(PlanteError::BadEmbedding),
            BaseEmbedding::Table(t) => t
                .iter()
                .find(|(k, _)| k == x)
                .map(|(_, d)| d.clone())
                .ok_or_else(|| PlanteError::EmbeddingOutOfRange(x.to_vec())),
        }
    }

    /// Consecutive integers on the base points in `points`, sorted by the base order.
    pub fn table(order: &PlanteOrder, points: impl IntoIterator<Item = Vec<i64>>) -> BaseEmbedding {
        let mut pts: Vec<Vec<i64>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        pts.sort_by(|a, b| order.base_cmp(a, b));
        BaseEmbedding::Table(pts.into_iter().enumerate().map(|(i, p)| (p, Dyadic::from_int(i as i64))).collect())
    }
}

/// `δ(σ,τ) = ι(max{x : σ(x) ≠ τ(x)})`, or `−∞` when equal.
pub fn delta_kernel(
    sigma: &Config,
    tau: &Config,
    order: &PlanteOrder,
    iota: &BaseEmbedding,
) -> Result<Kernel, PlanteError> {
    match order.max_disagreement(sigma, tau) {
        None => Ok(Kernel::MinusInfinity),
        Some(x) => Ok(Kernel::Value(iota.embed(&x)?)),
    }
}

/// `C_{σ,g}`: configurations agreeing with σ at every base point strictly above `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CSet {
    pub sigma: Config,
    pub g: Vec<i64>,
}

impl CSet {
    pub fn new(sigma: Config, g: Vec<i64>) -> CSet {
        CSet { sigma, g }
    }
    pub fn contains(&self, t: &Config, order: &PlanteOrder) -> bool {
        match order.max_disagreement(&self.sigma, t) {
            None => true,
            Some(x) => order.base_cmp(&x, &self.g) != Ordering::Greater,
        }
    }
}

/// How two C-sets sit relative to each other, decided structurally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetRelation {
    FirstInSecond,
    SecondInFirst,
    Disjoint,
}

pub fn cset_relation(a: &CSet, b: &CSet, order: &PlanteOrder) -> SetRelation {
    let (small, big, flipped) = if order.base_cmp(&a.g, &b.g) != Ordering::Greater { (a, b, false) } else { (b, a, true) };
    // The smaller level set is inside the larger one iff the centers agree above the larger level.
    if big.contains(&small.sigma, order) {
        if flipped {
            SetRelation::SecondInFirst
        } else {
            SetRelation::FirstInSecond
        }
    } else {
        SetRelation::Disjoint
    }
}

/// Verdict of checking a C-set family against sorted frame points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSetVerdict {
    /// Every set meets the frame in a contiguous run of points.
    pub convex: bool,
    pub cross_free: bool,
    pub crossing: Option<(usize, usize)>,
}

/// Traces each set on sorted frame points and checks convexity and cross-freeness.
pub fn cset_cross_free(family: &[CSet], frame: &[Config], order: &PlanteOrder) -> CSetVerdict {
    let mut convex = true;
    let mut intervals = Vec::new();
    for c in family {
        let idx: Vec<usize> = (0..frame.len()).filter(|&i| c.contains(&frame[i], order)).collect();
        if let (Some(&lo), Some(&hi)) = (idx.first(), idx.last()) {
            if hi - lo + 1 != idx.len() {
                convex = false;
            }
            // Closed index runs as open intervals with half-integer ends (doubled).
            intervals.push((2 * lo as i64 - 1, 2 * hi as i64 + 1));
        }
    }
    let crossing = crossing_pair(&intervals);
    CSetVerdict { convex, cross_free: crossing.is_none(), crossing }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(entries: &[(i64, i64)]) -> Config {
        entries.iter().map(|&(x, v)| (vec![x], vec![v])).collect()
    }

    #[test]
    fn sign_examples() {
        let o = PlanteOrder::standard(1, 1);
        assert_eq!(o.sign(&Config::new()), Sign::Residue);
        assert_eq!(o.sign(&cfg(&[(0, 1)])), Sign::Positive);
        assert_eq!(o.compare(&cfg(&[(1, -1)]), &cfg(&[(0, 1)])), Ordering::Less);
        let bad = LatticePreorder::new(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(
            plante_sign(&Config::new(), &bad, &LatticePreorder::lex(1)),
            Err(PlanteError::NonTotalOrder)
        );
    }

    #[test]
    fn group_law() {
        let gens = wreath_generators(1, 1);
        let g = &gens[0].1;
        let h = &gens[1].1;
        let w = g.product(h).product(&g.inverse());
        assert_eq!(w, WreathElement::lamp_at(vec![1], vec![1]));
        assert_eq!(w.product(&w.inverse()), g.identity_of());
        assert_eq!(g.act(&cfg(&[(0, 1)])), cfg(&[(1, 1)]));
    }

    #[test]
    fn kernel_examples() {
        let o = PlanteOrder::standard(1, 1);
        let s = cfg(&[(0, 1)]);
        assert_eq!(delta_kernel(&s, &s, &o, &BaseEmbedding::Identity).unwrap(), Kernel::MinusInfinity);
        assert_eq!(
            delta_kernel(&s, &Config::new(), &o, &BaseEmbedding::Identity).unwrap(),
            Kernel::Value(Dyadic::from_int(0))
        );
        let t = BaseEmbedding::Table(vec![(vec![1], Dyadic::from_int(0))]);
        assert!(matches!(delta_kernel(&s, &Config::new(), &o, &t), Err(PlanteError::EmbeddingOutOfRange(_))));
    }

    #[test]
    fn csets() {
        let o = PlanteOrder::standard(1, 1);
        let s = cfg(&[(0, 1), (3, 2)]);
        let c = CSet::new(s.clone(), vec![1]);
        assert!(c.contains(&s, &o));
        assert!(c.contains(&cfg(&[(0, 5), (3, 2)]), &o));
        assert!(!c.contains(&cfg(&[(3, 2)]).into_iter().chain([(vec![2], vec![1])]).collect(), &o));
        let wider = CSet::new(s.clone(), vec![2]);
        assert_eq!(cset_relation(&c, &wider, &o), SetRelation::FirstInSecond);
        let other = CSet::new(cfg(&[(3, 1)]), vec![1]);
        assert_eq!(cset_relation(&c, &other, &o), SetRelation::Disjoint);
    }
}
