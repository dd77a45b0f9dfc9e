use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use curvelab::complex::{ComplexKind, ComplexModel, CurvePool, GraphSnapshot};
use curvelab::curve::{surface, Curve, Multicurve};
use curvelab::enumerate::{enumerate_curves, CurveFilter, DEFAULT_CAP};
use curvelab::error::{Error, Result};
use curvelab::estimate::{subsurface_universe, Estimator, Region};
use curvelab::lab::{axis, fibers, formula, greedy_pants, oracles, projection, sep, suite, ExperimentConfig, Ratio, Report};
use curvelab::subsurface::Subsurface;
use curvelab::surface::SurfaceSig;

#[derive(Parser)]
#[command(name = "curvelab", version, about = "Curves, complexes and mapping classes on punctured surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand; they override the config file.
#[derive(Args, Clone, Default)]
struct Common {
    /// Surface as `g,n`.
    #[arg(long, value_name = "G,N")]
    surface: Option<SurfaceSig>,
    #[arg(long, value_name = "W")]
    weight_bound: Option<u32>,
    #[arg(long, value_name = "R")]
    radius: Option<usize>,
    /// Distance-formula threshold.
    #[arg(long, value_name = "M")]
    threshold: Option<usize>,
    /// Fraction of the radius removed by the divergence probe.
    #[arg(long, value_name = "P/Q")]
    epsilon: Option<Ratio>,
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Sample count for the sampling drivers.
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
    /// Enumeration and snapshot budget.
    #[arg(long, value_name = "K")]
    cap: Option<usize>,
    /// Output directory for reports and snapshots.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// TOML file with the same fields.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

impl Common {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let file = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        let flags = ExperimentConfig {
            surface: self.surface,
            weight_bound: self.weight_bound,
            radius: self.radius,
            samples: self.samples,
            seed: self.seed,
            threshold: self.threshold,
            epsilon: self.epsilon,
            cap: self.cap,
            out: self.out.clone(),
        };
        let cfg = file.overlay(&flags);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// List curves up to a weight bound.
    Enumerate {
        #[arg(long, default_value = "all")]
        filter: CurveFilter,
        #[command(flatten)]
        common: Common,
    },
    /// Build a ball in a complex and optionally store it.
    Ball {
        #[arg(long, default_value = "pants")]
        kind: ComplexKind,
        /// Basepoint curves, comma separated; defaults to a greedy choice.
        #[arg(long)]
        base: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Distance between two vertices inside a ball around the first.
    Distance {
        #[arg(long, default_value = "pants")]
        kind: ComplexKind,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Load a stored snapshot by digest from the output directory.
        #[arg(long)]
        snapshot: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Subsurface projection of a curve.
    Project {
        #[arg(long)]
        curve: String,
        /// Boundary multicurve of the subsurface, comma separated.
        #[arg(long)]
        boundary: String,
        /// Complementary piece to project into; defaults to every essential piece.
        #[arg(long)]
        piece: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Distance-formula estimate between two pants decompositions.
    Estimate {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run one verification driver.
    Verify {
        target: VerifyTarget,
        #[command(flatten)]
        common: Common,
    },
    /// Pseudo-Anosov axis drivers.
    Axis {
        action: AxisAction,
        #[command(flatten)]
        common: Common,
    },
    /// Run every driver and write the report bundle.
    Suite {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Fibers,
    Overlap,
    Behrstock,
    ProjectionDiameter,
    Bilipschitz,
    Labels,
    Farey,
    Twists,
    Formula,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisAction {
    Build,
    Diverge,
    Contract,
    Chain,
}

fn sig_of(cfg: &ExperimentConfig) -> Result<SurfaceSig> {
    cfg.surface.ok_or_else(|| Error::Parse("--surface is required".into()))
}

fn parse_curve(sig: SurfaceSig, word: &str) -> Result<Curve> {
    surface(sig)?.parse(word.trim())
}

fn parse_multicurve(sig: SurfaceSig, text: &str) -> Result<Multicurve> {
    let curves = text.split([',', ' ']).filter(|w| !w.trim().is_empty()).map(|w| parse_curve(sig, w)).collect::<Result<Vec<_>>>()?;
    Multicurve::new(sig, curves)
}

fn default_base(kind: ComplexKind, pool: &CurvePool) -> Result<Multicurve> {
    let none = || Error::Data(format!("no {kind} vertex among the pool curves"));
    match kind {
        ComplexKind::Curve => pool.curves().first().map(|c| Multicurve::single(c.clone())).ok_or_else(none),
        ComplexKind::Pants => greedy_pants(pool.sig(), pool.curves()).ok_or_else(none),
        ComplexKind::Sep | ComplexKind::SepPrime => pool.separating().into_iter().next().ok_or_else(none),
    }
}

fn emit(report: &Report, cfg: &ExperimentConfig) -> Result<bool> {
    print!("{}", report.to_text());
    if let Some(dir) = &cfg.out {
        for p in report.write(dir)? {
            eprintln!("wrote {}", p.display());
        }
    }
    Ok(report.passed())
}

fn build_ball(kind: ComplexKind, base: Option<&str>, cfg: &ExperimentConfig) -> Result<GraphSnapshot> {
    let sig = sig_of(cfg)?;
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let pool = CurvePool::new(sig, cfg.weight_bound.unwrap_or(3), cap)?;
    let base = match base {
        Some(text) => parse_multicurve(sig, text)?,
        None => default_base(kind, &pool)?,
    };
    // Basepoint curves outside the bound join the pool.
    let mut curves = pool.curves().to_vec();
    for c in base.curves() {
        if !curves.contains(c) {
            curves.push(c.clone());
        }
    }
    let pool = CurvePool::from_curves(sig, pool.bound(), curves);
    let model = ComplexModel::new(kind, &pool);
    GraphSnapshot::build(&model, base, cfg.radius.unwrap_or(2), cap)
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Enumerate { filter, common } => {
            let cfg = common.resolve()?;
            let sig = sig_of(&cfg)?;
            let curves = enumerate_curves(sig, cfg.weight_bound.unwrap_or(3), filter, cfg.cap.unwrap_or(DEFAULT_CAP))?;
            let lines: Vec<String> = curves.iter().map(|c| Multicurve::single(c.clone()).to_line()).collect();
            for (c, line) in curves.iter().zip(&lines) {
                println!("{}\t{}", c.name(), line);
            }
            eprintln!("{} curves", curves.len());
            if let Some(dir) = &cfg.out {
                write_text(dir, "curves.txt", &(lines.join("\n") + "\n"))?;
            }
            Ok(true)
        }
        Command::Ball { kind, base, common } => {
            let cfg = common.resolve()?;
            let snap = build_ball(kind, base.as_deref(), &cfg)?;
            println!("{snap:?}");
            println!("digest {}", snap.digest());
            if let Some(dir) = &cfg.out {
                eprintln!("wrote {}", snap.store(dir)?.display());
            }
            Ok(true)
        }
        Command::Distance { kind, from, to, snapshot, common } => {
            let cfg = common.resolve()?;
            let snap = match snapshot {
                Some(digest) => {
                    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
                    GraphSnapshot::load(&dir, &digest)?
                }
                None => build_ball(kind, Some(&from), &cfg)?,
            };
            let sig = snap.surface;
            let (a, b) = (parse_multicurve(sig, &from)?, parse_multicurve(sig, &to)?);
            match snap.distance_between(&a, &b) {
                Ok(d) => println!("{d}"),
                Err(Error::Unreachable) | Err(Error::UnknownVertex) => {
                    println!("unreachable within radius {} ({} vertices)", snap.radius, snap.len())
                }
                Err(e) => return Err(e),
            }
            Ok(true)
        }
        Command::Project { curve, boundary, piece, common } => {
            let cfg = common.resolve()?;
            let sig = sig_of(&cfg)?;
            let c = parse_curve(sig, &curve)?;
            let m = parse_multicurve(sig, &boundary)?;
            let pieces: Vec<Subsurface> = match piece {
                Some(k) => vec![Subsurface::new(m, vec![k])?],
                None => Subsurface::pieces_of(&m),
            };
            for y in &pieces {
                let proj = y.project(&c)?;
                let names: Vec<String> = proj.iter().map(|x| x.name()).collect();
                println!("{} (piece {:?}): {}", Region::Piece(y.clone()).label(), y.selected(), if names.is_empty() { "(empty)".into() } else { names.join(" ") });
            }
            Ok(true)
        }
        Command::Estimate { from, to, common } => {
            let cfg = common.resolve()?;
            let sig = sig_of(&cfg)?;
            let (p, q) = (parse_multicurve(sig, &from)?, parse_multicurve(sig, &to)?);
            let pool = CurvePool::new(sig, cfg.weight_bound.unwrap_or(3), cfg.cap.unwrap_or(DEFAULT_CAP))?;
            let universe = subsurface_universe(sig, pool.curves(), sig.complexity().max(1) as usize - 1)?;
            let mut est = Estimator::new(universe, pool.curves())?;
            let e = est.estimate(&p, &q, cfg.threshold.unwrap_or(formula_default_threshold()))?;
            for t in &e.terms {
                println!("{}\t{}", t.distance, t.subsurface);
            }
            println!("sum {} (threshold {})", e.sum, e.threshold);
            Ok(true)
        }
        Command::Verify { target, common } => {
            let cfg = common.resolve()?;
            let report = match target {
                VerifyTarget::Fibers => fibers::verify_fibers(&cfg)?,
                VerifyTarget::Overlap => sep::verify_overlap(&cfg)?,
                VerifyTarget::Behrstock => projection::verify_behrstock(&cfg)?,
                VerifyTarget::ProjectionDiameter => projection::verify_projection_diameter(&cfg)?,
                VerifyTarget::Bilipschitz => sep::verify_bilipschitz(&cfg)?,
                VerifyTarget::Labels => sep::verify_labels(&cfg)?,
                VerifyTarget::Farey => oracles::verify_farey(&cfg)?,
                VerifyTarget::Twists => oracles::verify_twists(&cfg)?,
                VerifyTarget::Formula => formula::verify_formula(&cfg)?,
            };
            emit(&report, &cfg)
        }
        Command::Axis { action, common } => {
            let cfg = common.resolve()?;
            let report = match action {
                AxisAction::Build => axis::verify_axis(&cfg)?,
                AxisAction::Diverge => axis::verify_divergence(&cfg)?,
                AxisAction::Contract => axis::verify_contraction(&cfg)?,
                AxisAction::Chain => axis::verify_chain(&cfg)?,
            };
            emit(&report, &cfg)
        }
        Command::Suite { common } => {
            let cfg = common.resolve()?;
            let outcome = suite::run_suite(&cfg)?;
            print!("{}", outcome.summary_text());
            if let Some(dir) = &cfg.out {
                let paths = outcome.write(dir, &cfg)?;
                eprintln!("wrote {} files to {}", paths.len(), dir.display());
            }
            Ok(outcome.passed())
        }
    }
}

fn formula_default_threshold() -> usize {
    4
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.display().to_string(), message: e.to_string() })?;
    let p = dir.join(name);
    std::fs::write(&p, text).map_err(|e| Error::Io { path: p.display().to_string(), message: e.to_string() })?;
    eprintln!("wrote {}", p.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli.command);
    eprintln!("elapsed {:.2?}", start.elapsed());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
