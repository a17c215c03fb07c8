//! Left-invariant preorders on PL groups, exposed through a uniform sign
//! oracle: restriction to a discrete invariant set, jump preorders, prime
//! jump preorders on `PL_ℚ`, the escaping-sequence order on F, and the order
//! induced by the standard action at a point. Includes a cone-axiom checker.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactnum::{factor, valuation, ExactRational, LatticePreorder, NumError, Sign, SlopeGroup};
use crate::plgroup::{Bound, End, GroupElement, Model, PLMap, PlError, Side};

type Q = ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreorderError {
    #[error("element is not in F+ (nontrivial germ at 1)")]
    NotInFPlus,
    #[error("slope {0} is not in the slope group")]
    SlopeNotInGroup(String),
    #[error("element has a non-rational slope")]
    NonRationalSlope,
    #[error("element lives on the wrong model")]
    ModelMismatch,
    #[error("invalid engine context: {0}")]
    InvalidContext(String),
    #[error("engine undefined on element: {0}")]
    Undefined(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Pl(#[from] PlError),
}

/// A left-invariant preorder, given by the sign of its positive cone.
pub trait SignEngine {
    type Elem: GroupElement;

    fn sign(&self, g: &Self::Elem) -> Result<Sign, PreorderError>;

    /// `g` versus `h`: `Less` iff `g ≺ h`, i.e. `sign(g⁻¹h)` is positive.
    fn compare(&self, g: &Self::Elem, h: &Self::Elem) -> Result<Ordering, PreorderError> {
        Ok(self.sign(&g.inverse().product(h))?.to_ordering().reverse())
    }

    fn name(&self) -> String;
}

impl<T: SignEngine + ?Sized> SignEngine for Box<T> {
    type Elem = T::Elem;
    fn sign(&self, g: &Self::Elem) -> Result<Sign, PreorderError> {
        (**self).sign(g)
    }
    fn compare(&self, g: &Self::Elem, h: &Self::Elem) -> Result<Ordering, PreorderError> {
        (**self).compare(g, h)
    }
    fn name(&self) -> String {
        (**self).name()
    }
}

/// Result of scanning a discrete invariant set for the largest moved point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Xg {
    /// Every point of K is fixed; compares below every point.
    FixesK,
    Point(Q),
}

/// `K = ⋃ₙ fⁿ(seeds)` for an anchor `f` with `f(x) > x` on `(0,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteInvariantSet {
    anchor: PLMap,
    anchor_inv: PLMap,
    seeds: Vec<Q>,
}

impl DiscreteInvariantSet {
    pub fn new(anchor: PLMap, mut seeds: Vec<Q>) -> Result<DiscreteInvariantSet, PreorderError> {
        if anchor.model() != Model::UnitInterval {
            return Err(PreorderError::ModelMismatch);
        }
        let fs = anchor.fixed_structure();
        let half = Q::new(1.into(), 2.into());
        if fs.support != vec![(Bound::Finite(Q::zero()), Bound::Finite(Q::one()))] || anchor.eval(&half) <= half {
            return Err(PreorderError::InvalidContext("anchor must push every point of (0,1) up".into()));
        }
        seeds.sort();
        seeds.dedup();
        let Some(x0) = seeds.first() else {
            return Err(PreorderError::InvalidContext("no seeds".into()));
        };
        let fx0 = anchor.eval(x0);
        if !x0.is_positive() || seeds.iter().any(|s| *s >= fx0) {
            return Err(PreorderError::InvalidContext("seeds must lie in one fundamental domain".into()));
        }
        let anchor_inv = anchor.invert();
        Ok(DiscreteInvariantSet { anchor, anchor_inv, seeds })
    }

    /// Orbit of a single point under `f₀`.
    pub fn orbit_of(x: Q) -> Result<DiscreteInvariantSet, PreorderError> {
        DiscreteInvariantSet::new(crate::plgroup::f0(), vec![x])
    }

    pub fn anchor(&self) -> &PLMap {
        &self.anchor
    }
    pub fn seeds(&self) -> &[Q] {
        &self.seeds
    }

    /// Points of K in `[a, b]`, for `0 < a ≤ b < 1`.
    pub fn points_between(&self, a: &Q, b: &Q) -> Vec<Q> {
        let mut pts = self.seeds.clone();
        while pts[0] > *a {
            pts = pts.iter().map(|p| self.anchor_inv.eval(p)).collect();
        }
        let mut out = Vec::new();
        while pts[0] <= *b {
            out.extend(pts.iter().filter(|p| *p >= a && *p <= b).cloned());
            pts = pts.iter().map(|p| self.anchor.eval(p)).collect();
        }
        out
    }

    pub fn contains(&self, x: &Q) -> bool {
        x.is_positive() && *x < Q::one() && self.points_between(x, x).len() == 1
    }

    /// Largest point of K moved by `g`, scanning fundamental domains downwards.
    pub fn xg(&self, g: &PLMap) -> Result<Xg, PreorderError> {
        check_f_plus(g)?;
        let Some((lo, hi)) = g.support_hull() else {
            return Ok(Xg::FixesK);
        };
        let top = hi.finite().cloned().unwrap_or_else(Q::one);
        let bottom = lo.finite().cloned().unwrap_or_else(Q::zero);
        // Bring the seed domain just above `top`, then walk down.
        let mut pts = self.seeds.clone();
        while pts[0] <= top {
            pts = pts.iter().map(|p| self.anchor.eval(p)).collect();
        }
        loop {
            pts = pts.iter().map(|p| self.anchor_inv.eval(p)).collect();
            for p in pts.iter().rev() {
                if g.eval(p) != *p {
                    return Ok(Xg::Point(p.clone()));
                }
            }
            let upper = self.anchor.eval(&pts[0]);
            if bottom.is_positive() && upper <= bottom {
                return Ok(Xg::FixesK);
            }
        }
    }
}

fn check_f_plus(g: &PLMap) -> Result<(), PreorderError> {
    if g.model() != Model::UnitInterval {
        return Err(PreorderError::ModelMismatch);
    }
    if !g.end_germ(End::High).slope.is_one() {
        return Err(PreorderError::NotInFPlus);
    }
    Ok(())
}

pub fn xg(g: &PLMap, k: &DiscreteInvariantSet) -> Result<Xg, PreorderError> {
    k.xg(g)
}

/// Sign of the restriction preorder `≼^K` on F₊.
pub fn restriction_sign(g: &PLMap, k: &DiscreteInvariantSet) -> Result<Sign, PreorderError> {
    match k.xg(g)? {
        Xg::FixesK => Ok(Sign::Residue),
        Xg::Point(x) => {
            let y = g.eval(&x);
            Ok(match y.cmp(&x) {
                Ordering::Greater => Sign::Positive,
                Ordering::Less => Sign::Negative,
                Ordering::Equal if *g.slope_at(&x, Side::Left) > Q::one() => Sign::Positive,
                Ordering::Equal => Sign::Negative,
            })
        }
    }
}

#[derive(Debug, Clone)]
pub struct RestrictionEngine {
    pub k: DiscreteInvariantSet,
}

impl SignEngine for RestrictionEngine {
    type Elem = PLMap;
    fn sign(&self, g: &PLMap) -> Result<Sign, PreorderError> {
        restriction_sign(g, &self.k)
    }
    fn name(&self) -> String {
        let seeds: Vec<String> = self.k.seeds.iter().map(|s| s.to_string()).collect();
        format!("restriction(seeds={})", seeds.join(","))
    }
}

/// Sign of the right or left jump preorder defined by `order` on Λ.
pub fn jump_sign(g: &PLMap, side: Side, lambda: &SlopeGroup, order: &LatticePreorder) -> Result<Sign, PreorderError> {
    let n = g.breakpoints().len();
    let pieces = g.pieces();
    let decompose = |r: &Q| {
        lambda
            .decompose(r)
            .map_err(|_| PreorderError::SlopeNotInGroup(r.to_string()))
    };
    // Jump at breakpoint i as an exponent vector: D⁻/D⁺ for the right cocycle.
    let jumps: Vec<Vec<i64>> = (0..n)
        .map(|i| decompose(&(&pieces[i].slope / &pieces[i + 1].slope)))
        .collect::<Result<_, _>>()?;
    let k = lambda.rank_k();
    let mut acc = vec![0i64; k];
    // Outermost breakpoint (in the direction of the side) whose accumulated
    // cocycle leaves the residue Λ₀ decides the sign.
    let (sgn, ordered): (i64, Box<dyn Iterator<Item = &Vec<i64>>>) = match side {
        Side::Right => (1, Box::new(jumps.iter().rev())),
        Side::Left => (-1, Box::new(jumps.iter())),
    };
    for j in ordered {
        acc.iter_mut().zip(j).for_each(|(a, b)| *a += sgn * b);
        let s = order.sign(&acc)?;
        if s != Sign::Residue {
            return Ok(s);
        }
    }
    Ok(Sign::Residue)
}

#[derive(Debug, Clone)]
pub struct JumpEngine {
    pub side: Side,
    pub lambda: SlopeGroup,
    pub order: LatticePreorder,
}

impl JumpEngine {
    pub fn new(side: Side, lambda: SlopeGroup, order: LatticePreorder) -> Result<JumpEngine, PreorderError> {
        if order.dim() != lambda.rank_k() {
            return Err(PreorderError::InvalidContext("order dimension differs from rank of Λ".into()));
        }
        Ok(JumpEngine { side, lambda, order })
    }
    /// Standard order on `⟨2⟩`.
    pub fn dyadic(side: Side) -> JumpEngine {
        JumpEngine { side, lambda: SlopeGroup::dyadic(), order: LatticePreorder::lex(1) }
    }
}

impl SignEngine for JumpEngine {
    type Elem = PLMap;
    fn sign(&self, g: &PLMap) -> Result<Sign, PreorderError> {
        jump_sign(g, self.side, &self.lambda, &self.order)
    }
    fn name(&self) -> String {
        let side = if self.side == Side::Right { "right" } else { "left" };
        format!("jump(side={side}, order={:?})", self.order.rows())
    }
}

fn check_rational_interval(g: &PLMap) -> Result<(), PreorderError> {
    if g.model() != Model::UnitInterval {
        return Err(PreorderError::ModelMismatch);
    }
    Ok(())
}

/// Sign of the `q`-jump preorder on `PL_ℚ((0,1))`.
pub fn prime_jump_sign(g: &PLMap, q: &BigInt) -> Result<Sign, PreorderError> {
    check_rational_interval(g)?;
    // D⁻g is constant on each half-open piece (b_{i-1}, b_i]; the last piece reaches 1.
    for p in g.pieces().iter().rev() {
        let v = valuation(&p.slope, q);
        if v != 0 {
            return Ok(if v > 0 { Sign::Positive } else { Sign::Negative });
        }
    }
    Ok(Sign::Residue)
}

/// Largest prime dividing a numerator or denominator of some slope of `g`.
pub fn largest_slope_prime(g: &PLMap) -> Option<BigInt> {
    g.pieces()
        .iter()
        .flat_map(|p| factor(p.slope.numer()).into_iter().chain(factor(p.slope.denom())))
        .map(|(p, _)| p)
        .max()
}

/// Sign under the combined order: the prime engine for the largest slope prime.
pub fn combined_prime_sign(g: &PLMap) -> Result<Sign, PreorderError> {
    check_rational_interval(g)?;
    match largest_slope_prime(g) {
        None => Ok(Sign::Residue),
        Some(p) => prime_jump_sign(g, &p),
    }
}

#[derive(Debug, Clone)]
pub struct PrimeEngine {
    pub q: BigInt,
}

impl SignEngine for PrimeEngine {
    type Elem = PLMap;
    fn sign(&self, g: &PLMap) -> Result<Sign, PreorderError> {
        prime_jump_sign(g, &self.q)
    }
    fn name(&self) -> String {
        format!("prime(q={})", self.q)
    }
}

#[derive(Debug, Clone, Default)]
pub struct CombinedPrimeEngine;

impl SignEngine for CombinedPrimeEngine {
    type Elem = PLMap;
    fn sign(&self, g: &PLMap) -> Result<Sign, PreorderError> {
        combined_prime_sign(g)
    }
    fn name(&self) -> String {
        "prime(combined)".into()
    }
}

/// Data for the escaping-sequence order on F: `sₙ = f₀ⁿ(s₀)`.
#[derive(Debug, Clone)]
pub struct EscapingContext {
    f0: PLMap,
    f0_inv: PLMap,
    s0: Q,
}

impl EscapingContext {
    pub fn new(f0: PLMap, s0: Q) -> Result<EscapingContext, PreorderError> {
        if f0.model() != Model::UnitInterval {
            return Err(PreorderError::ModelMismatch);
        }
        if f0.tau(End::High)? != 1 {
            return Err(PreorderError::InvalidContext("base element needs τ₁ = 1".into()));
        }
        if !s0.is_positive() || s0 >= Q::one() || f0.eval(&s0) <= s0 {
            return Err(PreorderError::InvalidContext("seed must be in (0,1) and pushed up".into()));
        }
        let f0_inv = f0.invert();
        Ok(EscapingContext { f0, f0_inv, s0 })
    }

    pub fn standard() -> EscapingContext {
        EscapingContext::new(crate::plgroup::f0(), Q::new(1.into(), 2.into())).expect("standard context")
    }

    pub fn base(&self) -> &PLMap {
        &self.f0
    }
    pub fn seed(&self) -> &Q {
        &self.s0
    }

    /// `sₙ`.
    pub fn s(&self, n: i64) -> Q {
        let step = if n < 0 { &self.f0_inv } else { &self.f0 };
        let mut x = self.s0.clone();
        for _ in 0..n.unsigned_abs() {
            x = step.eval(&x);
        }
        x
    }

    /// `(g·s)ₙ = g(s_{n−τ(g)})`.
    pub fn entry(&self, g: &PLMap, n: i64) -> Result<Q, PreorderError> {
        let t = g.tau(End::High)?;
        Ok(g.eval(&self.s(n - t)))
    }

    /// `g ∘ f₀^{−τ(g)}`, an element of F₊ with the same sequence entries.
    fn untwist(&self, g: &PLMap) -> Result<PLMap, PreorderError> {
        let t = g.tau(End::High)?;
        Ok(g.after(&self.f0.pow(-t)))
    }
}

/// Compares the sequences `g·s` and `h·s` at their last disagreement.
pub fn escaping_compare(g: &PLMap, h: &PLMap, ctx: &EscapingContext) -> Result<Ordering, PreorderError> {
    if g.model() != Model::UnitInterval || h.model() != Model::UnitInterval {
        return Err(PreorderError::ModelMismatch);
    }
    let u = ctx.untwist(g)?;
    let v = ctx.untwist(h)?;
    let top = [&u, &v]
        .iter()
        .filter_map(|m| m.support_hull().and_then(|(_, hi)| hi.finite().cloned()))
        .max();
    let Some(top) = top else {
        return Ok(Ordering::Equal);
    };
    let first_bp = |m: &PLMap| m.breakpoints().first().cloned().unwrap_or_else(Q::one);
    let linear_below = first_bp(&u).min(first_bp(&v));
    let same_germ = u.end_germ(End::Low) == v.end_germ(End::Low);
    let mut x = ctx.s0.clone();
    while x <= top {
        x = ctx.f0.eval(&x);
    }
    loop {
        let (a, b) = (u.eval(&x), v.eval(&x));
        if a != b {
            return Ok(a.cmp(&b));
        }
        if same_germ && x < linear_below {
            return Ok(Ordering::Equal);
        }
        x = ctx.f0_inv.eval(&x);
    }
}

#[derive(Debug, Clone)]
pub struct EscapingEngine {
    pub ctx: EscapingContext,
}

impl SignEngine for EscapingEngine {
    type Elem = PLMap;
    fn sign(&self, g: &PLMap) -> Result<Sign, PreorderError> {
        let id = PLMap::identity(Model::UnitInterval);
        Ok(Sign::from_ordering(escaping_compare(g, &id, &self.ctx)?))
    }
    fn compare(&self, g: &PLMap, h: &PLMap) -> Result<Ordering, PreorderError> {
        escaping_compare(g, h, &self.ctx)
    }
    fn name(&self) -> String {
        format!("escaping(seed={})", self.ctx.s0)
    }
}

/// Preorder induced by the standard action at a point: `g ≻ 1` iff `g(x₀) > x₀`.
#[derive(Debug, Clone)]
pub struct PointEngine {
    pub model: Model,
    pub x0: Q,
}

impl SignEngine for PointEngine {
    type Elem = PLMap;
    fn sign(&self, g: &PLMap) -> Result<Sign, PreorderError> {
        if g.model() != self.model {
            return Err(PreorderError::ModelMismatch);
        }
        Ok(Sign::from_ordering(g.eval(&self.x0).cmp(&self.x0)))
    }
    fn compare(&self, g: &PLMap, h: &PLMap) -> Result<Ordering, PreorderError> {
        Ok(g.eval(&self.x0).cmp(&h.eval(&self.x0)))
    }
    fn name(&self) -> String {
        format!("point(x={})", self.x0)
    }
}

/// The four cone axioms checked by [`axioms_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    SemigroupCone,
    InverseSymmetry,
    ResidueSubgroup,
    ResidueSandwich,
    EngineFailure,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::SemigroupCone => "P·P ⊆ P",
            Axiom::InverseSymmetry => "sign(g⁻¹) = −sign(g)",
            Axiom::ResidueSubgroup => "residue is a subgroup",
            Axiom::ResidueSandwich => "R·P·R ⊆ P",
            Axiom::EngineFailure => "engine error",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct AxiomViolation<E> {
    pub axiom: Axiom,
    pub witness: Vec<E>,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct AxiomReport<E> {
    pub elements_checked: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violation: Option<AxiomViolation<E>>,
}

impl<E> AxiomReport<E> {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Sampling budget for [`axioms_report`]; pairs and triples are exhaustive when they fit.
#[derive(Debug, Clone, Copy)]
pub struct AxiomBudget {
    pub max_pairs: usize,
    pub max_triples: usize,
    pub seed: u64,
}

impl Default for AxiomBudget {
    fn default() -> Self {
        AxiomBudget { max_pairs: 2000, max_triples: 1000, seed: 0x5eed }
    }
}

fn pick<'a, E>(pool: &'a [E], n: usize, max: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<&'a E>> {
    if pool.is_empty() {
        return vec![];
    }
    let total = pool.len().checked_pow(n as u32).unwrap_or(usize::MAX);
    if total <= max {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t: Vec<&E>| pool.iter().map(move |e| [t.clone(), vec![e]].concat()))
                .collect();
        }
        return out;
    }
    (0..max)
        .map(|_| (0..n).map(|_| pool.choose(rng).expect("nonempty")).collect())
        .collect()
}

/// Checks the positive-cone axioms on a sample of group elements.
pub fn axioms_report<S: SignEngine>(
    engine: &S,
    samples: &[S::Elem],
    budget: AxiomBudget,
) -> AxiomReport<S::Elem> {
    let mut report = AxiomReport { elements_checked: 0, pairs_checked: 0, triples_checked: 0, violation: None };
    let fail = |axiom: Axiom, w: Vec<&S::Elem>, detail: String| {
        Some(AxiomViolation { axiom, witness: w.into_iter().cloned().collect(), detail })
    };
    let mut signs = Vec::with_capacity(samples.len());
    for g in samples {
        let (s, si) = match (engine.sign(g), engine.sign(&g.inverse())) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                report.violation = fail(Axiom::EngineFailure, vec![g], e.to_string());
                return report;
            }
        };
        report.elements_checked += 1;
        if si != -s {
            report.violation = fail(Axiom::InverseSymmetry, vec![g], format!("sign {s}, inverse {si}"));
            return report;
        }
        signs.push(s);
    }
    let positives: Vec<S::Elem> =
        samples.iter().zip(&signs).filter(|(_, s)| **s == Sign::Positive).map(|(g, _)| g.clone()).collect();
    let residue: Vec<S::Elem> =
        samples.iter().zip(&signs).filter(|(_, s)| **s == Sign::Residue).map(|(g, _)| g.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let sign_of = |g: &S::Elem| engine.sign(g).map_err(|e| e.to_string());

    for pair in pick(&positives, 2, budget.max_pairs / 2, &mut rng) {
        report.pairs_checked += 1;
        match sign_of(&pair[0].product(pair[1])) {
            Ok(Sign::Positive) => {}
            Ok(s) => {
                report.violation = fail(Axiom::SemigroupCone, pair, format!("product has sign {s}"));
                return report;
            }
            Err(e) => {
                report.violation = fail(Axiom::EngineFailure, pair, e);
                return report;
            }
        }
    }
    for pair in pick(&residue, 2, budget.max_pairs / 2, &mut rng) {
        report.pairs_checked += 1;
        let prod = pair[0].product(pair[1]);
        let ok = sign_of(&prod) == Ok(Sign::Residue) && sign_of(&pair[0].inverse()) == Ok(Sign::Residue);
        if !ok {
            report.violation = fail(Axiom::ResidueSubgroup, pair, "product or inverse leaves the residue".into());
            return report;
        }
    }
    if !residue.is_empty() && !positives.is_empty() {
        for _ in 0..budget.max_triples {
            let r1 = residue.choose(&mut rng).expect("nonempty");
            let p = positives.choose(&mut rng).expect("nonempty");
            let r2 = residue.choose(&mut rng).expect("nonempty");
            report.triples_checked += 1;
            match sign_of(&r1.product(p).product(r2)) {
                Ok(Sign::Positive) => {}
                Ok(s) => {
                    report.violation = fail(Axiom::ResidueSandwich, vec![r1, p, r2], format!("sandwich has sign {s}"));
                    return report;
                }
                Err(e) => {
                    report.violation = fail(Axiom::EngineFailure, vec![r1, p, r2], e);
                    return report;
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, parse_rational, rat};
    use crate::plgroup::{f0, g_minus, g_plus, rescale_into, thompson_x0_x1, translation, Affine};

    fn q(s: &str) -> Q {
        parse_rational(s).unwrap()
    }

    fn k_half() -> DiscreteInvariantSet {
        DiscreteInvariantSet::orbit_of(rat(1, 2)).unwrap()
    }

    /// Moves 3/4 to 13/16 and is the identity on [7/8, 1].
    fn bump_at_three_quarters() -> PLMap {
        PLMap::interval_from_points(&[
            (q("0"), q("0")),
            (q("5/8"), q("5/8")),
            (q("3/4"), q("13/16")),
            (q("7/8"), q("7/8")),
            (q("1"), q("1")),
        ])
        .unwrap()
    }

    #[test]
    fn k_points() {
        let k = k_half();
        let pts = k.points_between(&q("1/8"), &q("15/16"));
        assert_eq!(pts, vec![q("1/8"), q("1/4"), q("1/2"), q("3/4"), q("7/8"), q("15/16")]);
        assert!(k.contains(&q("3/4")));
        assert!(!k.contains(&q("5/8")));
    }

    #[test]
    fn xg_examples() {
        let k = k_half();
        let id = PLMap::identity(Model::UnitInterval);
        assert_eq!(k.xg(&id).unwrap(), Xg::FixesK);
        let gap = rescale_into(&f0(), &q("17/32"), &q("5/8")).unwrap();
        assert_eq!(k.xg(&gap).unwrap(), Xg::FixesK);
        let g = bump_at_three_quarters();
        assert_eq!(k.xg(&g).unwrap(), Xg::Point(q("3/4")));
        assert_eq!(restriction_sign(&g, &k).unwrap(), Sign::Positive);
        assert_eq!(restriction_sign(&g.invert(), &k).unwrap(), Sign::Negative);
        assert_eq!(restriction_sign(&f0(), &k), Err(PreorderError::NotInFPlus));
        let (x0, x1) = thompson_x0_x1();
        let y = x0.after(&x1.invert());
        assert!(matches!(k.xg(&y).unwrap(), Xg::Point(_)));
    }

    #[test]
    fn jump_examples() {
        let right = JumpEngine::dyadic(Side::Right);
        assert_eq!(right.sign(&translation(Q::one())).unwrap(), Sign::Residue);
        let gm = g_minus(&Q::zero(), &int(2)).unwrap();
        let gp = g_plus(&Q::zero(), &int(2)).unwrap();
        assert_eq!(right.sign(&gm).unwrap(), Sign::Positive);
        assert_eq!(right.sign(&gp).unwrap(), Sign::Negative);
        let three = g_plus(&Q::zero(), &int(3)).unwrap();
        assert!(matches!(right.sign(&three), Err(PreorderError::SlopeNotInGroup(_))));
        let left = JumpEngine::dyadic(Side::Left);
        assert_eq!(left.sign(&gm).unwrap(), Sign::Negative);
        assert_eq!(left.sign(&gp).unwrap(), Sign::Positive);
    }

    #[test]
    fn prime_examples() {
        let g = PLMap::new(
            Model::UnitInterval,
            vec![q("1/3")],
            vec![Affine::new(q("9/5"), q("0")), Affine::new(q("3/5"), q("2/5"))],
        )
        .unwrap();
        assert_eq!(prime_jump_sign(&g, &BigInt::from(3)).unwrap(), Sign::Positive);
        assert_eq!(prime_jump_sign(&g, &BigInt::from(2)).unwrap(), Sign::Residue);
        assert_eq!(prime_jump_sign(&g, &BigInt::from(5)).unwrap(), Sign::Negative);
        assert_eq!(combined_prime_sign(&g).unwrap(), Sign::Negative);
        let id = PLMap::identity(Model::UnitInterval);
        assert_eq!(combined_prime_sign(&id).unwrap(), Sign::Residue);
        // Slopes {2, 1/2}: decided by q = 2.
        assert_eq!(combined_prime_sign(&f0()).unwrap(), prime_jump_sign(&f0(), &BigInt::from(2)).unwrap());
    }

    #[test]
    fn escaping_examples() {
        let ctx = EscapingContext::standard();
        let g = bump_at_three_quarters();
        assert_eq!(escaping_compare(&g, &g, &ctx).unwrap(), Ordering::Equal);
        for n in -3..=3 {
            let id = PLMap::identity(Model::UnitInterval);
            assert_eq!(escaping_compare(&f0().pow(n), &id, &ctx).unwrap(), Ordering::Equal);
        }
        let up = rescale_into(&f0(), &q("1/4"), &q("5/8")).unwrap();
        assert!(up.eval(&q("1/2")) > q("1/2"));
        let id = PLMap::identity(Model::UnitInterval);
        assert_eq!(escaping_compare(&up, &id, &ctx).unwrap(), Ordering::Greater);
        assert_eq!(ctx.s(1), q("3/4"));
        assert_eq!(ctx.s(-1), q("1/4"));
    }

    struct Flipped<'a> {
        inner: &'a JumpEngine,
        target: PLMap,
    }

    impl SignEngine for Flipped<'_> {
        type Elem = PLMap;
        fn sign(&self, g: &PLMap) -> Result<Sign, PreorderError> {
            let s = self.inner.sign(g)?;
            Ok(if *g == self.target { -s } else { s })
        }
        fn name(&self) -> String {
            "flipped".into()
        }
    }

    #[test]
    fn corrupted_engine_is_caught() {
        let right = JumpEngine::dyadic(Side::Right);
        let gm = g_minus(&Q::zero(), &int(2)).unwrap();
        let samples = vec![gm.clone(), gm.invert(), translation(Q::one())];
        assert!(axioms_report(&right, &samples, AxiomBudget::default()).passed());
        let bad = Flipped { inner: &right, target: gm };
        let r = axioms_report(&bad, &samples, AxiomBudget::default());
        assert_eq!(r.violation.unwrap().axiom, Axiom::InverseSymmetry);
    }
}
