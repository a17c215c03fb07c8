//! Command-line driver for `plfocal`.
//!
//! Exit codes: 0 on success, 1 when a checked property fails (a witness is
//! printed), 2 on malformed input.

pub mod config;
pub mod spec;
pub mod svg;
pub mod table;

use std::cmp::Ordering;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use plfocal::checks::{criteria, DEFAULT_SEED};
use plfocal::realize::DEFAULT_POWER_BOUND;
use plfocal::symsets::{bits_to_string, parse_bits};
use plfocal::*;
use serde::Serialize;

use config::{Emit, RunConfig};
use spec::{Engine, EngineSpec, FamilySpec};
use table::FrameTable;

#[derive(Debug, Parser)]
#[command(name = "plfocal", version, about = "Exact PL groups, preorders and finite dynamical realizations")]
pub struct Cli {
    /// TOML file with default values for the shared flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by several subcommands; each mirrors a config key.
#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Engine descriptor, e.g. `jump:right,lex` or `plante`.
    #[arg(long)]
    pub engine: Option<String>,
    /// Group family: f, fplus, bs[:λ,...], plq, linef, plante.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub power_bound: Option<u32>,
}

impl Common {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            engine: self.engine.clone(),
            family: self.family.clone(),
            radius: self.radius,
            seed: self.seed,
            power_bound: self.power_bound,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum HoroArg {
    Increasing,
    Decreasing,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sign of an element under an engine.
    Sign {
        #[command(flatten)]
        common: Common,
        /// Group word, e.g. `g-(0,2) t1^-1`.
        #[arg(long, conflicts_with = "map")]
        word: Option<String>,
        /// A map in text form, e.g. `line; -inf: 1 0; 0: 2 0`.
        #[arg(long)]
        map: Option<String>,
    },
    /// Compare two elements: prints `<`, `=` or `>`.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long)]
        other: String,
    },
    /// Predicted and empirical dynamical type of an element.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "increasing")]
        horograding: HoroArg,
    },
    /// Build an orbit frame and emit it as CSV or SVG.
    Realize {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the acceptance suite; one JSON object per line.
    Check {
        #[arg(long)]
        seed: Option<u64>,
        /// Criterion numbers to run (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        /// Include wall-clock timings (makes the report run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Minimal exponent N with ⟨f, g^N⟩ satisfying F's relations.
    Twochain {
        /// Word in F (default: bump(0,9/16)).
        #[arg(long)]
        f: Option<String>,
        /// Word in F (default: bump(7/16,1)).
        #[arg(long)]
        g: Option<String>,
    },
    /// Check F's two relators on a pair of words.
    Relators {
        #[arg(long, default_value = "a")]
        a: String,
        #[arg(long, default_value = "b")]
        b: String,
    },
    /// Cancellation property of a pair of binary words.
    Cancel {
        w1: String,
        w2: String,
        #[arg(long, default_value_t = 20)]
        bound: usize,
    },
    /// Index of the submodule generated by p and q (p > q ≥ 1).
    Index { p: i64, q: i64 },
    /// Plante order on ℤ≀ℤ: sign of a word, a comparison, or a frame summary.
    Plante {
        #[arg(long)]
        word: Option<String>,
        #[arg(long, requires = "word")]
        other: Option<String>,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Orbit order of the Cantor-type set built from two binary words.
    Okorder {
        w1: String,
        w2: String,
        #[arg(long)]
        word: Option<String>,
        #[arg(long, requires = "word")]
        other: Option<String>,
        #[arg(long)]
        radius: Option<usize>,
    },
}

/// Why a run did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// A checked property failed; the message carries the witness.
    Property(String),
    Input(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Property(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.into())
    }
}

type Run = Result<(), Failure>;

fn cmp_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

fn resolved(common: &Common, file: &RunConfig) -> anyhow::Result<RunConfig> {
    let cfg = common.to_config().or(file);
    cfg.validate()?;
    Ok(cfg)
}

fn engine_and_family(cfg: &RunConfig) -> anyhow::Result<(EngineSpec, FamilySpec)> {
    let engine = cfg.engine()?.ok_or_else(|| anyhow!("--engine is required"))?;
    let family = cfg.family(Some(&engine))?.expect("engine implies a family");
    if engine.build().is_ok_and(|e| matches!(e, Engine::Plante(_))) != family.is_plante() {
        bail!("engine `{engine}` does not act on family {family:?}");
    }
    Ok((engine, family))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Run {
    let file = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Sign { common, word, map } => {
            let cfg = resolved(&common, &file)?;
            let (engine, family) = engine_and_family(&cfg)?;
            let sign = match engine.build()? {
                Engine::Plante(e) => {
                    let w = word.ok_or_else(|| anyhow!("--word is required for the Plante engine"))?;
                    e.sign(&FamilySpec::plante_word(&w)?)?
                }
                Engine::Pl(e) => {
                    let g = match (word, map) {
                        (Some(w), None) => family.word(&w)?,
                        (None, Some(m)) => PLMap::parse(&m)?,
                        _ => return Err(anyhow!("give exactly one of --word and --map").into()),
                    };
                    e.sign(&g)?
                }
            };
            writeln!(out, "{sign}")?;
        }
        Command::Compare { common, word, other } => {
            let cfg = resolved(&common, &file)?;
            let (engine, family) = engine_and_family(&cfg)?;
            let o = match engine.build()? {
                Engine::Plante(e) => e.compare(&FamilySpec::plante_word(&word)?, &FamilySpec::plante_word(&other)?)?,
                Engine::Pl(e) => e.compare(&family.word(&word)?, &family.word(&other)?)?,
            };
            writeln!(out, "{}", cmp_symbol(o))?;
        }
        Command::Classify { common, word, horograding } => {
            let mut cfg = resolved(&common, &file)?;
            let h = match horograding {
                HoroArg::Increasing => Horograding::Increasing,
                HoroArg::Decreasing => Horograding::Decreasing,
            };
            if cfg.engine.is_none() {
                let side = if h == Horograding::Increasing { "right" } else { "left" };
                cfg.engine = Some(format!("jump:{side},lex"));
            }
            let (engine, family) = engine_and_family(&cfg)?;
            let Engine::Pl(e) = engine.build()? else { return Err(anyhow!("classify needs a PL engine").into()) };
            let g = family.word(&word)?;
            let radius = cfg.radius.unwrap_or(5);
            let bound = cfg.power_bound.unwrap_or(DEFAULT_POWER_BOUND);
            let frame = build_frame(&e, &family.generators()?, radius)?;
            let predicted = classify_predicted(&g, h);
            let empirical = classify_empirical(&frame, &e, &g, bound)?;
            writeln!(out, "predicted: {predicted}")?;
            writeln!(out, "empirical: {empirical}")?;
            if !predicted.compatible(&empirical) {
                return Err(Failure::Property(format!("`{word}`: predicted {predicted} but observed {empirical}")));
            }
        }
        Command::Realize { common, emit, output } => {
            let mut cfg = resolved(&common, &file)?;
            cfg.emit = emit.or(cfg.emit);
            cfg.output = output.or(cfg.output);
            let (engine, family) = engine_and_family(&cfg)?;
            let radius = cfg.radius.unwrap_or(3);
            let title = format!("{engine} radius {radius}");
            let table = match engine.build()? {
                Engine::Plante(e) => FrameTable::from_frame(&build_frame(&e, &wreath_generators(1, 1), radius)?, &e)?,
                Engine::Pl(e) => FrameTable::from_frame(&build_frame(&e, &family.generators()?, radius)?, &e)?,
            };
            let mut buf = Vec::new();
            match cfg.emit.unwrap_or(Emit::Csv) {
                Emit::Csv => table.write_csv(&mut buf)?,
                Emit::Svg => buf.extend(svg::render(&table, &title).into_bytes()),
            }
            match &cfg.output {
                Some(p) => std::fs::write(p, buf).with_context(|| format!("writing {}", p.display()))?,
                None => out.write_all(&buf)?,
            }
        }
        Command::Check { seed, only, timings } => {
            let seed = seed.or(file.seed).unwrap_or(DEFAULT_SEED);
            #[derive(Serialize)]
            struct Line<'a> {
                criterion: usize,
                name: &'a str,
                passed: bool,
                detail: &'a str,
                #[serde(skip_serializing_if = "Option::is_none")]
                seconds: Option<f64>,
            }
            writeln!(out, "{}", serde_json::json!({ "seed": seed }))?;
            let mut failed = Vec::new();
            for c in criteria().iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
                let r = c.run(seed);
                let line = Line {
                    criterion: r.id,
                    name: r.name,
                    passed: r.passed,
                    detail: &r.detail,
                    seconds: timings.then(|| r.elapsed.as_secs_f64()),
                };
                writeln!(out, "{}", serde_json::to_string(&line)?)?;
                if !r.passed {
                    failed.push(r.id);
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Property(format!("criteria {failed:?} failed")));
            }
        }
        Command::Twochain { f, g } => {
            let fam = FamilySpec::F;
            let f = fam.word(f.as_deref().unwrap_or("bump(0,9/16)"))?;
            let g = fam.word(g.as_deref().unwrap_or("bump(7/16,1)"))?;
            match two_chain_witness(&f, &g) {
                Ok(n) => writeln!(out, "{n}")?,
                Err(PlError::HypothesisFailed(code)) => {
                    return Err(Failure::Property(format!("2-chain hypothesis {code} fails")));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Relators { a, b } => {
            let fam = FamilySpec::F;
            let r = verify_relators(&fam.word(&a)?, &fam.word(&b)?)?;
            writeln!(out, "{}", r.holds())?;
            if !r.holds() {
                return Err(Failure::Property(format!("{r:?}")));
            }
        }
        Command::Cancel { w1, w2, bound } => {
            let r = cancellation_check(&parse_bits(&w1)?, &parse_bits(&w2)?, bound)?;
            writeln!(out, "{}", r.holds)?;
            if let Some((z, why)) = r.witness {
                return Err(Failure::Property(format!("{why:?} at {}", bits_to_string(&z))));
            }
        }
        Command::Index { p, q } => {
            writeln!(out, "{}", module_index(p, q)?)?;
        }
        Command::Plante { word, other, radius } => {
            let e = PlanteEngine { order: PlanteOrder::standard(1, 1) };
            match (word, other) {
                (Some(w), None) => writeln!(out, "{}", e.sign(&FamilySpec::plante_word(&w)?)?)?,
                (Some(w), Some(o)) => {
                    let o = e.compare(&FamilySpec::plante_word(&w)?, &FamilySpec::plante_word(&o)?)?;
                    writeln!(out, "{}", cmp_symbol(o))?
                }
                _ => plante_summary(&e, radius.or(file.radius).unwrap_or(4), out)?,
            }
        }
        Command::Okorder { w1, w2, word, other, radius } => {
            let ctx = SymContext::new(WordPair::new(parse_bits(&w1)?, parse_bits(&w2)?)?);
            let fam = FamilySpec::LineF;
            match (word, other) {
                (Some(w), o) => {
                    let g = fam.word(&w)?;
                    let h = match o {
                        Some(o) => fam.word(&o)?,
                        None => PLMap::identity(Model::Line),
                    };
                    // With one word this is the position of g·K relative to K.
                    let ord = ctx.ok_compare(&h, &g)?;
                    let a = ctx.alpha(&ctx.orbit_point(&g)?, &ctx.orbit_point(&h)?);
                    writeln!(out, "{}", cmp_symbol(ord.reverse()))?;
                    match a {
                        Alpha::MinusInfinity => writeln!(out, "alpha: -inf")?,
                        Alpha::Point(x) => writeln!(out, "alpha: {x}")?,
                    }
                }
                (None, _) => {
                    let engine = OkEngine { ctx };
                    let frame = build_frame(&engine, &line_f_generators(), radius.or(file.radius).unwrap_or(3))?;
                    for (p, c) in frame.points.iter().zip(&frame.coords) {
                        writeln!(out, "{c}\t{}", if p.word.is_empty() { "e" } else { &p.word })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn plante_summary(e: &PlanteEngine, radius: usize, out: &mut dyn Write) -> Run {
    let gens = wreath_generators(1, 1);
    let frame = build_frame(e, &gens, radius)?;
    let kinds = gens
        .iter()
        .map(|(n, g)| Ok(format!("{n}: {}", classify_empirical(&frame, e, g, DEFAULT_POWER_BOUND)?)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let configs: Vec<Config> = frame.points.iter().map(|p| p.elem.lamp().clone()).collect();
    let family: Vec<CSet> = frame
        .points
        .iter()
        .flat_map(|p| (-(radius as i64)..=radius as i64).map(move |x| CSet::new(p.elem.lamp().clone(), vec![x])))
        .collect();
    let verdict = cset_cross_free(&family, &configs, &e.order);
    writeln!(out, "frame points: {}", frame.len())?;
    for k in kinds {
        writeln!(out, "{k}")?;
    }
    writeln!(out, "C-sets: {} (cross-free: {}, convex: {})", family.len(), verdict.cross_free, verdict.convex)?;
    if !(verdict.cross_free && verdict.convex) {
        return Err(Failure::Property(format!("{verdict:?}")));
    }
    Ok(())
}
