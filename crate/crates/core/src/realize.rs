//! Finite-scale dynamical realizations.
//!
//! A left preorder on a group orders the cosets of its residue. An
//! [`OrbitFrame`] sorts the cosets met by a word ball and places them on
//! consecutive integers; the group then acts on the frame by partial
//! monotone maps. All predicates here are ordinal: they only ask the engine
//! to compare elements, never measure distances.

use std::cmp::Ordering;

use thiserror::Error;

use crate::exactnum::Dyadic;
use crate::plgroup::{ball, crossing_pair, End, GroupElement, Model, PLMap};
use crate::preorders::SignEngine;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("engine undefined on `{word}`: {reason}")]
    EngineUndefined { word: String, reason: String },
    #[error("the designated point is not fixed")]
    NoFixedPoint,
    #[error("at least one generator is required")]
    NoGenerators,
}

/// One coset of the residue met by the ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramePoint<E> {
    /// Shortest word reaching the coset.
    pub word: String,
    pub length: usize,
    pub elem: E,
    /// Ball elements in the coset.
    pub members: usize,
}

#[derive(Debug, Clone)]
pub struct OrbitFrame<E> {
    pub generators: Vec<(String, E)>,
    pub radius: usize,
    pub engine: String,
    pub points: Vec<FramePoint<E>>,
    pub coords: Vec<Dyadic>,
    /// Index of the identity coset.
    pub base: usize,
}

/// Where an element's coset falls relative to the frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    At(usize),
    /// Strictly between points `i` and `i + 1`.
    Between(usize),
    Below,
    Above,
}

fn undefined<E>(word: &str) -> impl FnOnce(E) -> RealizeError + '_
where
    E: ToString,
{
    move |e| RealizeError::EngineUndefined { word: word.to_string(), reason: e.to_string() }
}

/// Stable bottom-up merge sort with a fallible comparator.
fn try_sort<T: Clone, Er>(v: Vec<T>, cmp: &mut impl FnMut(&T, &T) -> Result<Ordering, Er>) -> Result<Vec<T>, Er> {
    let mut runs: Vec<Vec<T>> = v.into_iter().map(|x| vec![x]).collect();
    while runs.len() > 1 {
        let mut next = Vec::with_capacity(runs.len().div_ceil(2));
        let mut it = runs.into_iter();
        while let Some(a) = it.next() {
            let Some(b) = it.next() else {
                next.push(a);
                break;
            };
            let mut out = Vec::with_capacity(a.len() + b.len());
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                if cmp(&b[j], &a[i])? == Ordering::Less {
                    out.push(b[j].clone());
                    j += 1;
                } else {
                    out.push(a[i].clone());
                    i += 1;
                }
            }
            out.extend_from_slice(&a[i..]);
            out.extend_from_slice(&b[j..]);
            next.push(out);
        }
        runs = next;
    }
    Ok(runs.pop().unwrap_or_default())
}

/// Sorts the radius-`radius` ball by the engine and merges residue-equivalent elements.
pub fn build_frame<S: SignEngine>(
    engine: &S,
    generators: &[(String, S::Elem)],
    radius: usize,
) -> Result<OrbitFrame<S::Elem>, RealizeError> {
    if generators.is_empty() {
        return Err(RealizeError::NoGenerators);
    }
    let elems = ball(generators, radius);
    for e in &elems {
        engine.sign(&e.elem).map_err(undefined(&e.word))?;
    }
    let mut err_word = String::new();
    let sorted = try_sort(elems, &mut |a, b| {
        engine.compare(&a.elem, &b.elem).inspect_err(|_| err_word = format!("({})^-1 {}", a.word, b.word))
    })
    .map_err(|e| RealizeError::EngineUndefined { word: err_word.clone(), reason: e.to_string() })?;

    let mut points: Vec<FramePoint<S::Elem>> = Vec::new();
    let mut base = 0;
    for e in sorted {
        let n = points.len();
        if let Some(last) = points.last_mut() {
            let same = engine.compare(&last.elem, &e.elem).map_err(undefined(&e.word))? == Ordering::Equal;
            if same {
                last.members += 1;
                if e.length == 0 {
                    base = n - 1;
                }
                if e.length < last.length {
                    last.word = e.word;
                    last.length = e.length;
                    last.elem = e.elem;
                }
                continue;
            }
        }
        if e.length == 0 {
            base = points.len();
        }
        points.push(FramePoint { word: e.word, length: e.length, elem: e.elem, members: 1 });
    }
    let coords = (0..points.len()).map(|i| Dyadic::from_int(i as i64 - base as i64)).collect();
    Ok(OrbitFrame {
        generators: generators.to_vec(),
        radius,
        engine: engine.name(),
        points,
        coords,
        base,
    })
}

impl<E: GroupElement> OrbitFrame<E> {
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Binary search for the coset of `x`.
    pub fn locate<S: SignEngine<Elem = E>>(&self, engine: &S, x: &E) -> Result<Location, RealizeError> {
        let (mut lo, mut hi) = (0usize, self.points.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match engine.compare(x, &self.points[mid].elem).map_err(undefined(&self.points[mid].word))? {
                Ordering::Equal => return Ok(Location::At(mid)),
                Ordering::Less => hi = mid,
                Ordering::Greater => lo = mid + 1,
            }
        }
        Ok(match lo {
            0 => Location::Below,
            n if n == self.points.len() => Location::Above,
            n => Location::Between(n - 1),
        })
    }

    /// Indices of points built from words of length at most `r`.
    pub fn points_within(&self, r: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.points[i].length <= r).collect()
    }
}

/// The action of `g` on frame points; `None` where the image leaves the frame.
pub fn induced_map<S: SignEngine>(
    frame: &OrbitFrame<S::Elem>,
    engine: &S,
    g: &S::Elem,
) -> Result<Vec<Option<usize>>, RealizeError> {
    frame
        .points
        .iter()
        .map(|p| match frame.locate(engine, &g.product(&p.elem))? {
            Location::At(j) => Ok(Some(j)),
            _ => Ok(None),
        })
        .collect()
}

/// Strictly increasing where defined.
pub fn is_monotone(map: &[Option<usize>]) -> bool {
    let defined: Vec<usize> = map.iter().flatten().copied().collect();
    defined.windows(2).all(|w| w[0] < w[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Expanding,
    Contracting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynType {
    TotallyBounded,
    ExpandingPseudohomothety,
    ContractingPseudohomothety,
    Homothety(Direction),
    Inconclusive,
}

impl DynType {
    pub fn direction(&self) -> Option<Direction> {
        match self {
            DynType::ExpandingPseudohomothety | DynType::Homothety(Direction::Expanding) => Some(Direction::Expanding),
            DynType::ContractingPseudohomothety | DynType::Homothety(Direction::Contracting) => {
                Some(Direction::Contracting)
            }
            _ => None,
        }
    }

    /// Whether two verdicts can describe the same element; `Inconclusive` fits anything.
    pub fn compatible(&self, other: &DynType) -> bool {
        match (self, other) {
            (DynType::Inconclusive, _) | (_, DynType::Inconclusive) => true,
            (DynType::TotallyBounded, b) | (b, DynType::TotallyBounded) => *b == DynType::TotallyBounded,
            (a, b) => a.direction() == b.direction(),
        }
    }
}

impl std::fmt::Display for DynType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DynType::TotallyBounded => write!(f, "totally-bounded"),
            DynType::ExpandingPseudohomothety => write!(f, "expanding-pseudohomothety"),
            DynType::ContractingPseudohomothety => write!(f, "contracting-pseudohomothety"),
            DynType::Homothety(Direction::Expanding) => write!(f, "expanding-homothety"),
            DynType::Homothety(Direction::Contracting) => write!(f, "contracting-homothety"),
            DynType::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

pub const DEFAULT_POWER_BOUND: u32 = 8;

/// Ordinal classification of `g` on the frame.
///
/// Reads how `g` moves the two extreme frame points: leftmost down and
/// rightmost up is expanding, the reverse is contracting. Both fixed, or
/// both moved the same way, means the extremes sit inside the hull of the
/// fixed set, which is evidence of bounded orbits. An escaping element is
/// upgraded to a homothety when exactly one inner point (word length at most
/// half the radius) is fixed and powers up to `power_bound` push every other
/// inner point past all of them.
pub fn classify_empirical<S: SignEngine>(
    frame: &OrbitFrame<S::Elem>,
    engine: &S,
    g: &S::Elem,
    power_bound: u32,
) -> Result<DynType, RealizeError> {
    let err = |e: crate::preorders::PreorderError| RealizeError::EngineUndefined {
        word: "classified element".into(),
        reason: e.to_string(),
    };
    let moved = |p: &S::Elem| engine.compare(&g.product(p), p).map_err(err);
    let lo = moved(&frame.points[0].elem)?;
    let hi = moved(&frame.points[frame.len() - 1].elem)?;
    let dir = match (lo, hi) {
        (Ordering::Less, Ordering::Greater) => Direction::Expanding,
        (Ordering::Greater, Ordering::Less) => Direction::Contracting,
        (a, b) if a == b => return Ok(DynType::TotallyBounded),
        _ => return Ok(DynType::Inconclusive),
    };
    let inner: Vec<&S::Elem> =
        frame.points_within(frame.radius.div_ceil(2)).into_iter().map(|i| &frame.points[i].elem).collect();
    let (below, above) = match dir {
        Direction::Expanding => (Ordering::Less, Ordering::Greater),
        Direction::Contracting => (Ordering::Greater, Ordering::Less),
    };
    // A homothety shows the pattern below* fixed above* on the inner points;
    // bisect for the fixed point before paying for a full scan.
    let n = inner.len();
    let mut candidate = None;
    let (first, last) = (moved(inner[0])?, moved(inner[n - 1])?);
    if first == Ordering::Equal {
        candidate = Some(0);
    } else if last == Ordering::Equal {
        candidate = Some(n - 1);
    } else if first == below && last == above {
        let (mut l, mut r) = (0, n - 1);
        while r - l > 1 {
            let m = (l + r) / 2;
            match moved(inner[m])? {
                Ordering::Equal => {
                    candidate = Some(m);
                    break;
                }
                s if s == below => l = m,
                _ => r = m,
            }
        }
    }
    let mut homothety = false;
    if let Some(c) = candidate {
        let mut pattern = true;
        for (i, p) in inner.iter().enumerate() {
            let want = match i.cmp(&c) {
                Ordering::Less => below,
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => above,
            };
            if moved(p)? != want {
                pattern = false;
                break;
            }
        }
        if pattern {
            let step = match dir {
                Direction::Expanding => g.clone(),
                Direction::Contracting => g.inverse(),
            };
            let tests: Vec<S::Elem> = inner.iter().map(|p| (*p).clone()).collect();
            homothety = homothety_witness(engine, &step, inner[c], &tests, power_bound)?;
        }
    }
    Ok(match (homothety, dir) {
        (true, d) => DynType::Homothety(d),
        (false, Direction::Expanding) => DynType::ExpandingPseudohomothety,
        (false, Direction::Contracting) => DynType::ContractingPseudohomothety,
    })
}

/// Which end of the standard action the realization is horograded towards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Horograding {
    /// Towards the upper end (`1` or `+∞`).
    Increasing,
    /// Towards the lower end (`0` or `−∞`).
    Decreasing,
}

/// Classification read from germ data of the standard action.
pub fn classify_predicted(g: &PLMap, horograding: Horograding) -> DynType {
    let end = match horograding {
        Horograding::Increasing => End::High,
        Horograding::Decreasing => End::Low,
    };
    if g.has_trivial_germ(end) {
        return DynType::TotallyBounded;
    }
    let germ = g.end_germ(end);
    let one = num_rational::BigRational::from_integer(1.into());
    // Expanding when points near the end move towards it.
    let toward = match (g.model(), end) {
        (Model::Line, End::High) => germ.slope > one || (germ.slope == one && germ.offset > num_traits::Zero::zero()),
        (Model::Line, End::Low) => germ.slope > one || (germ.slope == one && germ.offset < num_traits::Zero::zero()),
        (Model::UnitInterval, End::High) => germ.slope < one,
        (Model::UnitInterval, End::Low) => germ.slope < one,
    };
    let dir = if toward { Direction::Expanding } else { Direction::Contracting };
    let interior_fixed = g.fixed_structure().fixed.iter().any(|(l, r)| {
        l != r || match g.model() {
            Model::Line => true,
            Model::UnitInterval => {
                let x = l.finite().expect("finite fixed point");
                *x != num_traits::Zero::zero() && *x != one
            }
        }
    });
    match (interior_fixed, dir) {
        (false, d) => DynType::Homothety(d),
        (true, Direction::Expanding) => DynType::ExpandingPseudohomothety,
        (true, Direction::Contracting) => DynType::ContractingPseudohomothety,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfVerdict {
    pub cross_free: bool,
    /// Every frame index lies in some interval.
    pub covering: bool,
    pub crossing: Option<(usize, usize)>,
}

/// Cross-freeness and coverage of closed index intervals on a frame of `len` points.
pub fn cf_cover_check(len: usize, intervals: &[(usize, usize)]) -> CfVerdict {
    let doubled: Vec<(i64, i64)> = intervals.iter().map(|&(a, b)| (2 * a as i64 - 1, 2 * b as i64 + 1)).collect();
    let crossing = crossing_pair(&doubled);
    let mut covered = vec![false; len];
    for &(a, b) in intervals {
        for c in covered.iter_mut().take(b.min(len.saturating_sub(1)) + 1).skip(a) {
            *c = true;
        }
    }
    CfVerdict { cross_free: crossing.is_none(), covering: covered.iter().all(|c| *c), crossing }
}

/// Images of the frame interval `[i, j]` under each element whose image stays in the frame.
pub fn interval_orbit<S: SignEngine>(
    frame: &OrbitFrame<S::Elem>,
    engine: &S,
    interval: (usize, usize),
    elems: &[S::Elem],
) -> Result<Vec<(usize, usize)>, RealizeError> {
    let mut out = Vec::new();
    for g in elems {
        let a = frame.locate(engine, &g.product(&frame.points[interval.0].elem))?;
        let b = frame.locate(engine, &g.product(&frame.points[interval.1].elem))?;
        if let (Location::At(a), Location::At(b)) = (a, b) {
            out.push((a, b));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether powers of `g` push every test point away from the fixed point past all others.
pub fn homothety_witness<S: SignEngine>(
    engine: &S,
    g: &S::Elem,
    fixed: &S::Elem,
    test_points: &[S::Elem],
    max_power: u32,
) -> Result<bool, RealizeError> {
    let err = |e: crate::preorders::PreorderError| RealizeError::EngineUndefined {
        word: "test point".into(),
        reason: e.to_string(),
    };
    if engine.compare(&g.product(fixed), fixed).map_err(err)? != Ordering::Equal {
        return Err(RealizeError::NoFixedPoint);
    }
    let mut escaped_any = false;
    for p in test_points {
        let side = engine.compare(p, fixed).map_err(err)?;
        if side == Ordering::Equal {
            continue;
        }
        let mut x = p.clone();
        let mut escaped = false;
        for _ in 0..max_power {
            x = g.product(&x);
            let mut beyond = true;
            for q in test_points {
                if engine.compare(&x, q).map_err(err)? != side {
                    beyond = false;
                    break;
                }
            }
            if beyond {
                escaped = true;
                break;
            }
        }
        if !escaped {
            return Ok(false);
        }
        escaped_any = true;
    }
    Ok(escaped_any)
}

/// Every point of `small` sits in `big`, in the same order.
pub fn refinement_check<S: SignEngine>(
    small: &OrbitFrame<S::Elem>,
    big: &OrbitFrame<S::Elem>,
    engine: &S,
) -> Result<bool, RealizeError> {
    let mut prev: Option<usize> = None;
    for p in &small.points {
        match big.locate(engine, &p.elem)? {
            Location::At(j) if prev.is_none_or(|i| i < j) => prev = Some(j),
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_rational, Sign};
    use crate::plante::{wreath_generators, PlanteEngine, PlanteOrder, WreathElement};
    use crate::plgroup::{f0, translation};

    fn plante() -> (PlanteEngine, Vec<(String, WreathElement)>) {
        (PlanteEngine { order: PlanteOrder::standard(1, 1) }, wreath_generators(1, 1))
    }

    #[test]
    fn trivial_group_frame() {
        let (e, gens) = plante();
        let id = gens[0].1.identity_of();
        let f = build_frame(&e, &[("e".into(), id)], 3).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.base, 0);
    }

    #[test]
    fn plante_frame_matches_direct_signs() {
        let (e, gens) = plante();
        let f = build_frame(&e, &gens, 3).unwrap();
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                let d = f.points[i].elem.inverse().product(&f.points[j].elem);
                assert_eq!(e.order.sign(d.lamp()), Sign::Positive);
            }
        }
        let map = induced_map(&f, &e, &gens[0].1).unwrap();
        assert_eq!(map[f.base], Some(f.base));
        assert!(is_monotone(&map));
    }

    #[test]
    fn plante_shift_and_lamp() {
        let (e, gens) = plante();
        let f = build_frame(&e, &gens, 4).unwrap();
        assert_eq!(classify_empirical(&f, &e, &gens[0].1, 8).unwrap(), DynType::Homothety(Direction::Expanding));
        assert_eq!(classify_empirical(&f, &e, &gens[1].1, 8).unwrap(), DynType::TotallyBounded);
        let id = gens[0].1.identity_of();
        assert_eq!(classify_empirical(&f, &e, &id, 8).unwrap(), DynType::TotallyBounded);
        let pts: Vec<WreathElement> = f.points.iter().map(|p| p.elem.clone()).collect();
        assert_eq!(homothety_witness(&e, &gens[0].1, &id, &pts, 8), Ok(true));
        assert_eq!(homothety_witness(&e, &id, &id, &pts, 8), Ok(false));
        assert_eq!(homothety_witness(&e, &gens[1].1, &id, &pts, 8), Err(RealizeError::NoFixedPoint));
    }

    #[test]
    fn predicted_examples() {
        let f = f0();
        assert_eq!(classify_predicted(&f, Horograding::Increasing), DynType::Homothety(Direction::Expanding));
        assert_eq!(classify_predicted(&f.invert(), Horograding::Increasing), DynType::Homothety(Direction::Contracting));
        let bump = crate::plgroup::rescale_into(&f0(), &parse_rational("1/4").unwrap(), &parse_rational("1/2").unwrap()).unwrap();
        assert_eq!(classify_predicted(&bump, Horograding::Increasing), DynType::TotallyBounded);
        let t = translation(parse_rational("1").unwrap());
        assert_eq!(classify_predicted(&t, Horograding::Increasing), DynType::Homothety(Direction::Expanding));
        assert_eq!(classify_predicted(&t, Horograding::Decreasing), DynType::Homothety(Direction::Contracting));
    }

    #[test]
    fn cf_examples() {
        assert!(cf_cover_check(3, &[(0, 2)]).cross_free);
        assert!(cf_cover_check(3, &[(0, 2)]).covering);
        let v = cf_cover_check(5, &[(0, 2), (2, 4)]);
        assert!(!v.cross_free && v.covering);
        assert!(cf_cover_check(5, &[(0, 4), (1, 1), (2, 3)]).cross_free);
    }
}
