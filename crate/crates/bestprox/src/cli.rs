//! Command-line front end: individual solves, falsification runs, modulus
//! sweeps, distance tables, and the aggregate catalog run. Every command
//! writes machine-readable artifacts and prints a short human verdict.
//!
//! Exit codes: 0 on success or pass, 1 when a measured result misses its
//! expected value (a falsification mismatch or a residual breach), 2 on
//! usage errors such as unknown names or unwritable paths.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use crate::convexity::modulus_curve;
use crate::corpus::{
    corpus_pair, corpus_run, distance_rows, expected_for, property_label, run_falsifier,
    verdict_label, CorpusOptions,
};
use crate::geometry::{Norm, Point};
use crate::solver::{best_proximity_point, corpus_map, iterate, SolverError};
use crate::ucprops::{PropertyTag, VerdictOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn usage(err: impl std::fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "bestprox",
    version,
    about = "Best proximity points of cyclic contractions, convexity moduli, \
             and budgeted property falsification"
)]
pub struct Cli {
    /// Load the whole run configuration from a JSON file instead of flags.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<CliCommand>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Iterate a catalog map to its best proximity point.
    Solve(SolveArgs),
    /// Run a property falsification search on a catalog pair.
    Falsify(FalsifyArgs),
    /// Sweep a modulus-of-convexity curve and write it as CSV.
    Modulus(ModulusArgs),
    /// Run every catalog entry against its expected verdict or value.
    Corpus(CorpusArgs),
    /// Estimate set distances for the whole catalog.
    Distances(DistancesArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Catalog map name, e.g. example49.
    #[arg(long)]
    pub map: String,
    /// Starting point as `x,y`.
    #[arg(long, value_parser = parse_planar)]
    pub x0: Point,
    /// Convergence tolerance for the even subsequence and the residual.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Iteration budget.
    #[arg(long, default_value_t = 400)]
    pub nmax: usize,
    /// Output directory for artifacts.
    #[arg(long, default_value = "artifacts")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FalsifyArgs {
    /// Property to attack.
    #[arg(long, value_enum, ignore_case = true)]
    pub property: CliProperty,
    /// Catalog pair name, e.g. ex43.
    #[arg(long)]
    pub pair: String,
    /// Sequence index budget; defaults to the pair's catalog budget.
    #[arg(long)]
    pub nmax: Option<u64>,
    /// Proximity tolerance; defaults to the pair's catalog tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value = "artifacts")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ModulusArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub norm: CliNorm,
    /// Direction `zx,zy` for the directional modulus; omit for the classic one.
    #[arg(long, value_parser = parse_planar)]
    pub direction: Option<Point>,
    /// Number of epsilon samples on (0, 2].
    #[arg(long, default_value_t = 10)]
    pub grid: usize,
    /// Search budget per sample.
    #[arg(long, default_value_t = 160)]
    pub budget: usize,
    #[arg(long, default_value = "artifacts")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    /// Override the solver iteration budgets (falsify budgets stay as
    /// cataloged).
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Multiplies the distance and residual tolerances; 0.1 tightens tenfold.
    #[arg(long = "tol-scale", default_value_t = 1.0)]
    pub tol_scale: f64,
    /// Distance estimation budget.
    #[arg(long, default_value_t = 512)]
    pub budget: usize,
    #[arg(long, default_value_t = 17)]
    pub seed: u64,
    #[arg(long, default_value = "artifacts")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct DistancesArgs {
    #[arg(long, default_value_t = 512)]
    pub budget: usize,
    #[arg(long, default_value = "artifacts")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CliProperty {
    Uc,
    Buc,
    Ucstar,
}

impl CliProperty {
    pub fn tag(self) -> PropertyTag {
        match self {
            CliProperty::Uc => PropertyTag::Uc,
            CliProperty::Buc => PropertyTag::Buc,
            CliProperty::Ucstar => PropertyTag::UcStar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CliNorm {
    L1,
    L2,
    Linf,
    Lp3,
}

impl CliNorm {
    pub fn to_norm(self) -> Norm {
        match self {
            CliNorm::L1 => Norm::L1,
            CliNorm::L2 => Norm::L2,
            CliNorm::Linf => Norm::LInf,
            CliNorm::Lp3 => Norm::Lp(3),
        }
    }
    fn label(self) -> &'static str {
        match self {
            CliNorm::L1 => "l1",
            CliNorm::L2 => "l2",
            CliNorm::Linf => "linf",
            CliNorm::Lp3 => "lp3",
        }
    }
}

fn parse_planar(s: &str) -> Result<Point, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `x,y`, got {s:?}"));
    }
    let x: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|e| format!("bad x coordinate: {e}"))?;
    let y: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|e| format!("bad y coordinate: {e}"))?;
    Ok(Point::planar(x, y))
}

/// A full run description, loadable from a single JSON file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    #[serde(default)]
    pub map: Option<String>,
    #[serde(default)]
    pub pair: Option<String>,
    #[serde(default)]
    pub property: Option<String>,
    #[serde(default)]
    pub norm: Option<String>,
    #[serde(default)]
    pub direction: Option<(f64, f64)>,
    #[serde(default)]
    pub grid: Option<usize>,
    #[serde(default)]
    pub x0: Option<(f64, f64)>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub nmax: Option<u64>,
    #[serde(default)]
    pub budget: Option<usize>,
    #[serde(default)]
    pub tol_scale: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn enum_arg<T: ValueEnum>(value: &str, what: &str) -> Result<T, CliError> {
    T::from_str(value, true).map_err(|_| CliError::Usage(format!("unknown {what} {value:?}")))
}

impl RunConfig {
    fn require<T>(v: Option<T>, field: &str) -> Result<T, CliError> {
        v.ok_or_else(|| CliError::Usage(format!("config field {field:?} is required")))
    }

    pub fn into_command(self) -> Result<CliCommand, CliError> {
        let out = self.out.unwrap_or_else(|| PathBuf::from("artifacts"));
        match self.command.as_str() {
            "solve" => {
                let (x, y) = Self::require(self.x0, "x0")?;
                Ok(CliCommand::Solve(SolveArgs {
                    map: Self::require(self.map, "map")?,
                    x0: Point::planar(x, y),
                    tol: self.tol.unwrap_or(1e-8),
                    nmax: self.nmax.unwrap_or(400) as usize,
                    out,
                }))
            }
            "falsify" => Ok(CliCommand::Falsify(FalsifyArgs {
                property: enum_arg(&Self::require(self.property, "property")?, "property")?,
                pair: Self::require(self.pair, "pair")?,
                nmax: self.nmax,
                tol: self.tol,
                out,
            })),
            "modulus" => Ok(CliCommand::Modulus(ModulusArgs {
                norm: enum_arg(&Self::require(self.norm, "norm")?, "norm")?,
                direction: self.direction.map(|(x, y)| Point::planar(x, y)),
                grid: self.grid.unwrap_or(10),
                budget: self.budget.unwrap_or(160),
                out,
            })),
            "corpus" => Ok(CliCommand::Corpus(CorpusArgs {
                nmax: self.nmax.map(|n| n as usize),
                tol_scale: self.tol_scale.unwrap_or(1.0),
                budget: self.budget.unwrap_or(512),
                seed: self.seed.unwrap_or(17),
                out,
            })),
            "distances" => Ok(CliCommand::Distances(DistancesArgs {
                budget: self.budget.unwrap_or(512),
                out,
            })),
            other => Err(CliError::Usage(format!("unknown command {other:?}"))),
        }
    }
}

pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}

pub fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match (cli.config, cli.command) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--config cannot be combined with a subcommand".into(),
        )),
        (Some(path), None) => {
            let text = fs::read_to_string(&path)?;
            let config: RunConfig = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?;
            run(config.into_command()?)
        }
        (None, Some(cmd)) => run(cmd),
        (None, None) => Err(CliError::Usage(
            "a subcommand or --config is required (try --help)".into(),
        )),
    }
}

pub fn run(cmd: CliCommand) -> Result<i32, CliError> {
    match cmd {
        CliCommand::Solve(a) => run_solve(&a),
        CliCommand::Falsify(a) => run_falsify(&a),
        CliCommand::Modulus(a) => run_modulus(&a),
        CliCommand::Corpus(a) => run_corpus(&a),
        CliCommand::Distances(a) => run_distances(&a),
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    Ok(())
}

fn fmt_point(p: &Point) -> String {
    match p {
        Point::Planar(x, y) => format!("({x}, {y})"),
        other => format!("{other:?}"),
    }
}

fn run_solve(a: &SolveArgs) -> Result<i32, CliError> {
    let map = corpus_map(&a.map).map_err(usage)?;
    let trace = iterate(&map, &a.x0, a.nmax, a.tol).map_err(usage)?;
    let outcome = best_proximity_point(&map, &a.x0, a.tol, a.nmax);

    let mut lines = String::new();
    lines.push_str(&serde_json::to_string(&serde_json::json!({
        "schema": 1,
        "command": "solve",
        "map": map.name,
        "x0": a.x0,
        "tol": a.tol,
        "n_max": a.nmax,
        "dist_ab": map.dist_ab,
    }))?);
    lines.push('\n');
    for (n, p) in trace.iterates.iter().enumerate() {
        let gap = if n == 0 { None } else { trace.gaps.get(n - 1) };
        lines.push_str(&serde_json::to_string(&serde_json::json!({
            "n": n,
            "point": p,
            "gap": gap,
            "proximity": trace.proximities.get(n),
        }))?);
        lines.push('\n');
    }
    let tail = match &outcome {
        Ok(cert) => serde_json::json!({ "certificate": cert }),
        Err(err) => serde_json::json!({ "error": err.to_string(), "converged": false }),
    };
    lines.push_str(&serde_json::to_string(&tail)?);
    lines.push('\n');

    ensure_dir(&a.out)?;
    let path = a.out.join(format!("solve_{}.jsonl", map.name));
    fs::write(&path, lines)?;

    match outcome {
        Ok(cert) => {
            println!(
                "best proximity point {} with proximity {:.12} (residual {:.3e}) \
                 after {} steps; trace: {}",
                fmt_point(&cert.point),
                cert.proximity,
                cert.residual,
                cert.iterations,
                path.display()
            );
            Ok(EXIT_OK)
        }
        Err(SolverError::BudgetExhausted {
            iterations,
            last_proximity,
            dist_ab,
        }) => {
            println!(
                "no certificate: budget exhausted after {iterations} steps \
                 (last proximity {last_proximity:.6}, target {dist_ab}); trace: {}",
                path.display()
            );
            Ok(EXIT_MISMATCH)
        }
        Err(err) => Err(usage(err)),
    }
}

fn run_falsify(a: &FalsifyArgs) -> Result<i32, CliError> {
    let entry = corpus_pair(&a.pair).map_err(usage)?;
    let prop = a.property.tag();
    let n_max = a.nmax.unwrap_or(entry.falsify_n_max);
    let tol = a.tol.unwrap_or(entry.falsify_tol);
    let verdict = run_falsifier(prop, entry, n_max, tol).map_err(usage)?;

    ensure_dir(&a.out)?;
    let path = a.out.join(format!(
        "falsify_{}_{}.json",
        entry.name,
        property_label(prop)
    ));
    let mut body = serde_json::to_string_pretty(&verdict)?;
    body.push('\n');
    fs::write(&path, body)?;

    match verdict.outcome {
        VerdictOutcome::Falsified => println!(
            "{} on {}: falsified by {} via {}; verdict: {}",
            property_label(prop),
            entry.name,
            verdict.witness.as_deref().unwrap_or("?"),
            verdict.route.as_deref().unwrap_or("?"),
            path.display()
        ),
        VerdictOutcome::NoCounterexampleWithinBudget => println!(
            "{} on {}: no counterexample found within budget (n_max {}, {} families); \
             verdict: {}",
            property_label(prop),
            entry.name,
            n_max,
            verdict.diagnostics.len(),
            path.display()
        ),
    }
    let expect = expected_for(entry, prop);
    if verdict.outcome == expect {
        Ok(EXIT_OK)
    } else {
        println!("mismatch: catalog expects {}", verdict_label(expect));
        Ok(EXIT_MISMATCH)
    }
}

fn run_modulus(a: &ModulusArgs) -> Result<i32, CliError> {
    let norm = a.norm.to_norm();
    let curve = modulus_curve(norm, a.direction.as_ref(), a.grid, a.budget).map_err(usage)?;
    ensure_dir(&a.out)?;
    let suffix = if a.direction.is_some() {
        "_directional"
    } else {
        ""
    };
    let path = a
        .out
        .join(format!("modulus_{}{}.csv", a.norm.label(), suffix));
    fs::write(&path, curve.to_csv())?;
    if let Err(err) = curve.validate() {
        println!(
            "modulus curve failed validation: {err}; data: {}",
            path.display()
        );
        return Ok(EXIT_MISMATCH);
    }
    println!(
        "wrote {} ({} points, budget {})",
        path.display(),
        curve.samples.len(),
        a.budget
    );
    Ok(EXIT_OK)
}

fn run_corpus(a: &CorpusArgs) -> Result<i32, CliError> {
    let opt = CorpusOptions {
        solver_n_max: a.nmax,
        tol_scale: a.tol_scale,
        dist_budget: a.budget,
        verify_pairs: 2000,
        seed: a.seed,
    };
    let summary = corpus_run(&opt).map_err(usage)?;
    print!("{}", summary.table());
    let failed = summary.rows.iter().filter(|r| !r.pass).count();
    if summary.all_pass {
        println!("corpus: all {} rows PASS", summary.rows.len());
    } else {
        println!("corpus: {failed} of {} rows FAIL", summary.rows.len());
    }

    ensure_dir(&a.out)?;
    let path = a.out.join("corpus_summary.json");
    let mut body = serde_json::to_string_pretty(&summary)?;
    body.push('\n');
    fs::write(&path, body)?;

    Ok(if summary.all_pass {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn run_distances(a: &DistancesArgs) -> Result<i32, CliError> {
    let rows = distance_rows(a.budget).map_err(usage)?;
    println!(
        "{:<10} {:<16} {:<10} {:<14} abs error",
        "pair", "norm", "expected", "measured"
    );
    let mut ok = true;
    for r in &rows {
        match (r.measured, r.abs_error) {
            (Some(m), Some(e)) => {
                ok &= e <= 1e-5;
                println!(
                    "{:<10} {:<16} {:<10.6} {:<14.10} {:.3e}",
                    r.pair,
                    format!("{:?}", r.norm),
                    r.expected,
                    m,
                    e
                );
            }
            _ => println!(
                "{:<10} {:<16} {:<10.6} {:<14} -",
                r.pair,
                format!("{:?}", r.norm),
                r.expected,
                r.note.as_deref().unwrap_or("-")
            ),
        }
    }

    ensure_dir(&a.out)?;
    let path = a.out.join("distances.json");
    let mut body = serde_json::to_string_pretty(&serde_json::json!({
        "schema": 1,
        "budget": a.budget,
        "rows": rows,
    }))?;
    body.push('\n');
    fs::write(&path, body)?;
    println!("wrote {}", path.display());

    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}
