//! Engine and group-family descriptors.
//!
//! Engines are written `kind[:arg,arg,...]`:
//!
//! | descriptor                    | engine                                         |
//! |-------------------------------|------------------------------------------------|
//! | `restriction[:x]`             | restriction to the `f₀`-orbit of `x` (default 1/2) |
//! | `jump:right\|left[,lex\|opp][,λ...]` | jump preorder; slope generators default to 2 |
//! | `prime:q`                     | `q`-jump preorder on `PL_ℚ((0,1))`             |
//! | `combined-prime`              | prime jump at the largest slope prime          |
//! | `escaping[:s0]`               | escaping-sequence order on F (default 1/2)    |
//! | `point:interval\|line,x0`     | order induced by the action at `x0`            |
//! | `okorder:w1,w2`               | orbit order of the Cantor-type set for `(w1, w2)` |
//! | `plante`                      | Plante order on ℤ≀ℤ                            |
//!
//! Families are `f`, `fplus`, `bs[:λ,...]`, `plq`, `linef` and `plante`.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use plfocal::checks::{f_plus_generators, pl_q_generators};
use plfocal::exactnum::{int, rat};
use plfocal::plgroup::{evaluate_word, parse_word, rescale_into};
use plfocal::symsets::parse_bits;
use plfocal::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineSpec {
    Restriction { seed: ExactRational },
    Jump { side: Side, opposite: bool, lambda: Vec<ExactRational> },
    Prime { q: BigInt },
    CombinedPrime,
    Escaping { s0: ExactRational },
    Point { model: Model, x0: ExactRational },
    OkOrder { w1: String, w2: String },
    Plante,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    F,
    FPlus,
    BieriStrebel(Vec<ExactRational>),
    PlQ,
    LineF,
    Plante,
}

/// An engine ready to use, split by element type.
pub enum Engine {
    Pl(Box<dyn SignEngine<Elem = PLMap>>),
    Plante(PlanteEngine),
}

fn q(s: &str) -> Result<ExactRational> {
    parse_rational(s).map_err(|e| anyhow!("bad rational `{s}`: {e}"))
}

fn rationals(args: &[&str]) -> Result<Vec<ExactRational>> {
    args.iter().map(|a| q(a)).collect()
}

fn split(s: &str) -> (&str, Vec<&str>) {
    match s.split_once(':') {
        Some((k, rest)) => (k.trim(), rest.split(',').map(str::trim).filter(|a| !a.is_empty()).collect()),
        None => (s.trim(), Vec::new()),
    }
}

impl FromStr for EngineSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<EngineSpec> {
        let (kind, args) = split(s);
        let at_most = |n: usize| {
            if args.len() > n {
                bail!("engine `{kind}` takes at most {n} arguments");
            }
            Ok(())
        };
        Ok(match kind {
            "restriction" => {
                at_most(1)?;
                EngineSpec::Restriction { seed: args.first().map_or(Ok(rat(1, 2)), |a| q(a))? }
            }
            "jump" => {
                let side = match args.first().copied() {
                    Some("right") => Side::Right,
                    Some("left") => Side::Left,
                    _ => bail!("jump engine needs `right` or `left` first"),
                };
                let mut rest = &args[1..];
                let mut opposite = false;
                if let Some(&o) = rest.first() {
                    if o == "lex" || o == "opp" {
                        opposite = o == "opp";
                        rest = &rest[1..];
                    }
                }
                let lambda = if rest.is_empty() { vec![int(2)] } else { rationals(rest)? };
                EngineSpec::Jump { side, opposite, lambda }
            }
            "prime" => {
                at_most(1)?;
                let q: BigInt = args.first().ok_or_else(|| anyhow!("prime engine needs q"))?.parse()?;
                if plfocal::exactnum::factor(&q) != vec![(q.clone(), 1)] {
                    bail!("{q} is not prime");
                }
                EngineSpec::Prime { q }
            }
            "combined-prime" => {
                at_most(0)?;
                EngineSpec::CombinedPrime
            }
            "escaping" => {
                at_most(1)?;
                EngineSpec::Escaping { s0: args.first().map_or(Ok(rat(1, 2)), |a| q(a))? }
            }
            "point" => {
                let [m, x] = args[..] else { bail!("point engine takes `interval|line,x0`") };
                let model = match m {
                    "interval" => Model::UnitInterval,
                    "line" => Model::Line,
                    _ => bail!("unknown model `{m}`"),
                };
                EngineSpec::Point { model, x0: q(x)? }
            }
            "okorder" => {
                let [w1, w2] = args[..] else { bail!("okorder takes two binary words") };
                EngineSpec::OkOrder { w1: w1.into(), w2: w2.into() }
            }
            "plante" => {
                at_most(0)?;
                EngineSpec::Plante
            }
            _ => bail!("unknown engine `{kind}`"),
        })
    }
}

impl fmt::Display for EngineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[ExactRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            EngineSpec::Restriction { seed } => write!(f, "restriction:{seed}"),
            EngineSpec::Jump { side, opposite, lambda } => {
                let side = if *side == Side::Right { "right" } else { "left" };
                write!(f, "jump:{side},{},{}", if *opposite { "opp" } else { "lex" }, list(lambda))
            }
            EngineSpec::Prime { q } => write!(f, "prime:{q}"),
            EngineSpec::CombinedPrime => write!(f, "combined-prime"),
            EngineSpec::Escaping { s0 } => write!(f, "escaping:{s0}"),
            EngineSpec::Point { model, x0 } => {
                write!(f, "point:{},{x0}", if *model == Model::UnitInterval { "interval" } else { "line" })
            }
            EngineSpec::OkOrder { w1, w2 } => write!(f, "okorder:{w1},{w2}"),
            EngineSpec::Plante => write!(f, "plante"),
        }
    }
}

impl EngineSpec {
    /// The family an engine is naturally paired with.
    pub fn default_family(&self) -> FamilySpec {
        match self {
            EngineSpec::Restriction { .. } => FamilySpec::FPlus,
            EngineSpec::Jump { lambda, .. } => FamilySpec::BieriStrebel(lambda.clone()),
            EngineSpec::Prime { .. } | EngineSpec::CombinedPrime => FamilySpec::PlQ,
            EngineSpec::Escaping { .. } => FamilySpec::F,
            EngineSpec::Point { model: Model::UnitInterval, .. } => FamilySpec::F,
            EngineSpec::Point { model: Model::Line, .. } => FamilySpec::BieriStrebel(vec![int(2)]),
            EngineSpec::OkOrder { .. } => FamilySpec::LineF,
            EngineSpec::Plante => FamilySpec::Plante,
        }
    }

    pub fn build(&self) -> Result<Engine> {
        let pl = |e: Box<dyn SignEngine<Elem = PLMap>>| Ok(Engine::Pl(e));
        match self {
            EngineSpec::Restriction { seed } => pl(Box::new(RestrictionEngine { k: DiscreteInvariantSet::orbit_of(seed.clone())? })),
            EngineSpec::Jump { side, opposite, lambda } => {
                let lambda = SlopeGroup::new(lambda.clone())?;
                let lex = LatticePreorder::lex(lambda.rank_k());
                let order = if *opposite { lex.opposite() } else { lex };
                pl(Box::new(JumpEngine::new(*side, lambda, order)?))
            }
            EngineSpec::Prime { q } => pl(Box::new(PrimeEngine { q: q.clone() })),
            EngineSpec::CombinedPrime => pl(Box::new(CombinedPrimeEngine)),
            EngineSpec::Escaping { s0 } => pl(Box::new(EscapingEngine { ctx: EscapingContext::new(f0(), s0.clone())? })),
            EngineSpec::Point { model, x0 } => pl(Box::new(PointEngine { model: *model, x0: x0.clone() })),
            EngineSpec::OkOrder { w1, w2 } => {
                let pair = WordPair::new(parse_bits(w1)?, parse_bits(w2)?)?;
                pl(Box::new(OkEngine { ctx: SymContext::new(pair) }))
            }
            EngineSpec::Plante => Ok(Engine::Plante(PlanteEngine { order: PlanteOrder::standard(1, 1) })),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let (kind, args) = split(s);
        if kind != "bs" && !args.is_empty() {
            bail!("family `{kind}` takes no arguments");
        }
        Ok(match kind {
            "f" => FamilySpec::F,
            "fplus" => FamilySpec::FPlus,
            "bs" if args.is_empty() => FamilySpec::BieriStrebel(vec![int(2)]),
            "bs" => FamilySpec::BieriStrebel(rationals(&args)?),
            "plq" => FamilySpec::PlQ,
            "linef" => FamilySpec::LineF,
            "plante" => FamilySpec::Plante,
            _ => bail!("unknown family `{kind}`"),
        })
    }
}

impl FamilySpec {
    pub fn is_plante(&self) -> bool {
        *self == FamilySpec::Plante
    }

    fn context(&self) -> Result<GroupPresentationContext> {
        Ok(match self {
            FamilySpec::BieriStrebel(l) => GroupPresentationContext::new(Family::BieriStrebel(SlopeGroup::new(l.clone())?)),
            FamilySpec::LineF => GroupPresentationContext::new(Family::BieriStrebel(SlopeGroup::dyadic())),
            _ => GroupPresentationContext::new(Family::ThompsonF),
        })
    }

    /// Generators of a PL family; errors for the wreath product.
    pub fn generators(&self) -> Result<Vec<(String, PLMap)>> {
        Ok(match self {
            FamilySpec::F => standard_generators(&Family::ThompsonF),
            FamilySpec::FPlus => f_plus_generators(),
            FamilySpec::BieriStrebel(_) => self.context()?.generators,
            FamilySpec::PlQ => pl_q_generators(),
            FamilySpec::LineF => line_f_generators(),
            FamilySpec::Plante => bail!("the wreath product is not a PL family"),
        })
    }

    /// Evaluates a word. Besides the family's own generators, interval
    /// families know `f0`, `x0`, `x1` and `bump(a,b)` (f₀ squeezed into
    /// `[a,b]`); line families know `t(a)`, `t1`, `g(a,λ)`, `g+(a,λ)`, `g-(a,λ)`.
    pub fn word(&self, w: &str) -> Result<PLMap> {
        let gens = self.generators()?;
        let ctx = self.context()?;
        let letters = parse_word(w)?;
        let resolve = |name: &str, params: &[ExactRational]| {
            if params.is_empty() {
                if let Some((_, g)) = gens.iter().find(|(n, _)| n == name) {
                    return Ok(g.clone());
                }
            }
            if name == "bump" && params.len() == 2 && ctx.model() == Model::UnitInterval {
                return rescale_into(&f0(), &params[0], &params[1]);
            }
            ctx.resolve(name, params)
        };
        evaluate_word(&letters, PLMap::identity(ctx.model()), resolve).with_context(|| format!("evaluating `{w}`"))
    }

    pub fn plante_word(w: &str) -> Result<WreathElement> {
        let gens = wreath_generators(1, 1);
        let id = WreathElement::identity(1, 1);
        let letters = parse_word(w)?;
        let resolve = |name: &str, params: &[ExactRational]| match gens.iter().find(|(n, _)| n == name) {
            Some((_, g)) if params.is_empty() => Ok(g.clone()),
            _ => Err(PlError::UnknownGenerator(name.to_string())),
        };
        evaluate_word(&letters, id, resolve).with_context(|| format!("evaluating `{w}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for d in ["jump:right,lex,2", "jump:left,opp,2,3", "prime:3", "escaping:1/2", "point:interval,1/2", "okorder:10001,01110", "plante", "restriction:1/2"] {
            let e: EngineSpec = d.parse().unwrap();
            assert_eq!(e.to_string(), d);
            assert_eq!(e.to_string().parse::<EngineSpec>().unwrap(), e);
        }
        assert_eq!("jump:right,lex".parse::<EngineSpec>().unwrap().to_string(), "jump:right,lex,2");
    }

    #[test]
    fn bad_descriptors() {
        for d in ["jump", "jump:up", "prime:4", "prime", "point:disk,0", "nope", "plante:1", "okorder:0"] {
            assert!(d.parse::<EngineSpec>().is_err(), "{d}");
        }
        assert!("bs:x".parse::<FamilySpec>().is_err());
        assert!("f:2".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn words() {
        let bs = FamilySpec::BieriStrebel(vec![int(2)]);
        let g = bs.word("g-(0,2)").unwrap();
        assert_eq!(g.eval(&int(-1)), int(-2));
        assert_eq!(bs.word("t1 t1^-1").unwrap(), PLMap::identity(Model::Line));
        let f = FamilySpec::F;
        assert_eq!(f.word("x0").unwrap(), f0());
        assert_eq!(f.word("bump(0,1)").unwrap(), f0());
        assert!(f.word("t1").is_err());
        let h = FamilySpec::plante_word("g h g^-1").unwrap();
        assert_eq!(h.lamp().keys().next(), Some(&vec![1]));
    }
}
