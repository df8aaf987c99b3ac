//! `reflexkit`: exact invariants of lattice polytopes from the command
//! line.
//!
//! Exit codes: 0 success, 1 theorem violation found by `verify`,
//! 2 parse or I/O error, 3 precondition violation (for instance a
//! non-reflexive polytope passed to `decompose`).

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use reflexkit_cli::format::{emit_polytopes, parse_polytopes, Orientation, ParseError};
use reflexkit_cli::report::{
    analyze, canonical_rows, enumerate_class_json, CanonReport, EnumerateReport, MoriReport,
    SummaryJson, WallClassJson, SCHEMA_VERSION,
};
use reflexkit_core::{
    canonical_form, curve_classes, decompose_equality, dual, enumerate_reflexive_2d,
    seven_vertex_probe, verify_bounds, verify_corpus, Error as CoreError, Polytope, VerifyOptions,
};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "reflexkit", version, about = "Exact lattice polytope invariants")]
struct Cli {
    /// Emit JSON (the default output format).
    #[arg(long, global = true)]
    json: bool,

    /// Suppress the human-readable status line on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    /// Seed for the randomized unimodular re-checks run by `verify`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads; defaults to REFLEXKIT_JOBS or the core count.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Require the strict 'v n' rows-as-vertices orientation when parsing.
    #[arg(long, global = true)]
    strict_format: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for each polytope in FILE.
    Analyze { file: PathBuf },
    /// Dual polytopes, written in the polytope file format.
    Dual { file: PathBuf },
    /// Wall-by-wall curve classes with exact degrees.
    Mori { file: PathBuf },
    /// Equality-case decomposition of each polytope.
    Decompose { file: PathBuf },
    /// Enumerate all 2d reflexive polytopes up to lattice equivalence.
    Enumerate2d {
        /// Half-width of the coordinate box to scan.
        #[arg(long = "box", default_value_t = 3)]
        box_radius: i64,
        /// Directory to write one polytope file per class into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every invariant check over the polytopes in FILE.
    Verify {
        file: PathBuf,
        /// Seeded unimodular images to re-check per polytope.
        #[arg(long, default_value_t = 2)]
        transforms: usize,
    },
    /// Canonical forms under lattice equivalence.
    Canon { file: PathBuf },
}

enum CliError {
    Parse(ParseError),
    Io(String),
    Precondition(CoreError),
    TheoremViolation(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::TheoremViolation(msg) => CliError::TheoremViolation(msg),
            other => CliError::Precondition(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.or_else(|| {
        std::env::var("REFLEXKIT_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = jobs {
            builder = builder.num_threads(j.max(1));
        }
        match builder.build() {
            Ok(pool) => pool,
            Err(e) => {
                eprintln!("{}", json!({"error": "internal", "message": e.to_string()}));
                return ExitCode::from(2);
            }
        }
    };
    let outcome = pool.install(|| run(&cli));
    match outcome {
        Ok(code) => code,
        Err(CliError::Parse(e)) => {
            eprintln!(
                "{}",
                json!({"error": "parse", "line": e.line, "message": e.message})
            );
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("{}", json!({"error": "io", "message": msg}));
            ExitCode::from(2)
        }
        Err(CliError::Precondition(e)) => {
            eprintln!(
                "{}",
                json!({"error": "precondition", "message": e.to_string()})
            );
            ExitCode::from(3)
        }
        Err(CliError::TheoremViolation(msg)) => {
            eprintln!(
                "{}",
                json!({"error": "theorem_violation", "message": msg})
            );
            ExitCode::from(1)
        }
    }
}

fn load(file: &Path, strict: bool) -> Result<Vec<Polytope>, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
    let orientation = if strict {
        Orientation::Strict
    } else {
        Orientation::Lenient
    };
    Ok(parse_polytopes(&text, orientation)?)
}

fn status(cli: &Cli, message: &str) {
    if !cli.quiet {
        eprintln!("{message}");
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Analyze { file } => {
            let polytopes = load(file, cli.strict_format)?;
            let reports = polytopes
                .par_iter()
                .map(analyze)
                .collect::<Result<Vec<_>, _>>()?;
            println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            status(cli, &format!("analyzed {} polytope(s)", reports.len()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { file } => {
            let polytopes = load(file, cli.strict_format)?;
            let duals = polytopes
                .par_iter()
                .map(dual)
                .collect::<Result<Vec<_>, _>>()?;
            print!("{}", emit_polytopes(&duals));
            status(cli, &format!("dualized {} polytope(s)", duals.len()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Mori { file } => {
            let polytopes = load(file, cli.strict_format)?;
            let reports = polytopes
                .par_iter()
                .map(|p| -> Result<MoriReport, CoreError> {
                    let walls = curve_classes(p)?
                        .iter()
                        .map(WallClassJson::from_core)
                        .collect();
                    Ok(MoriReport {
                        schema: SCHEMA_VERSION,
                        dimension: p.dim(),
                        vertex_count: p.vertex_count(),
                        vertices: p
                            .vertices()
                            .iter()
                            .map(|v| {
                                v.coords()
                                    .iter()
                                    .map(reflexkit_cli::report::int_value)
                                    .collect()
                            })
                            .collect(),
                        walls,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { file } => {
            let polytopes = load(file, cli.strict_format)?;
            let mut out = Vec::new();
            for p in &polytopes {
                let verdict = verify_bounds(p)?;
                if !verdict.equality_ii {
                    return Err(CliError::Precondition(
                        CoreError::EqualityHypothesisFails(format!(
                            "|V| = {} with n = {}, δ = {}: the δ-bound is not tight",
                            p.vertex_count(),
                            p.dim(),
                            verdict.delta
                        )),
                    ));
                }
                let d = decompose_equality(p, 0)?;
                out.push(reflexkit_cli::report::DecompositionJson::from_core(&d));
            }
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate2d { box_radius, out } => {
            let classes = enumerate_reflexive_2d(*box_radius)?;
            let probe = seven_vertex_probe(*box_radius)?;
            let polys: Vec<Polytope> =
                classes.iter().map(|c| c.representative.clone()).collect();
            let summary = verify_corpus(
                &polys,
                &VerifyOptions {
                    seed: cli.seed.unwrap_or(0),
                    transforms: 0,
                },
            );
            let mut class_json = Vec::with_capacity(classes.len());
            for (i, c) in classes.iter().enumerate() {
                class_json.push(enumerate_class_json(i, c)?);
            }
            let report = EnumerateReport {
                schema: SCHEMA_VERSION,
                box_radius: *box_radius,
                class_count: classes.len(),
                seven_vertex_probe_survivors: probe,
                classes: class_json,
                summary: SummaryJson::from_core(&summary),
            };
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
                for (i, c) in classes.iter().enumerate() {
                    let path = dir.join(format!("class_{i:02}.poly"));
                    std::fs::write(&path, emit_polytopes(std::slice::from_ref(&c.representative)))
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                }
            }
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            status(
                cli,
                &format!(
                    "{} classes in the box of radius {box_radius}; 7-vertex probe found {probe}",
                    classes.len()
                ),
            );
            if summary.ok() && probe == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Verify { file, transforms } => {
            let polytopes = load(file, cli.strict_format)?;
            let summary = verify_corpus(
                &polytopes,
                &VerifyOptions {
                    seed: cli.seed.unwrap_or(0),
                    transforms: *transforms,
                },
            );
            println!(
                "{}",
                serde_json::to_string_pretty(&SummaryJson::from_core(&summary)).unwrap()
            );
            status(
                cli,
                &format!(
                    "checked {} of {} polytope(s): {} violation(s)",
                    summary.total - summary.filtered_out.len(),
                    summary.total,
                    summary.violations.len()
                ),
            );
            if summary.ok() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Canon { file } => {
            let polytopes = load(file, cli.strict_format)?;
            let reports = polytopes
                .par_iter()
                .map(|p| -> Result<CanonReport, CoreError> {
                    let cf = canonical_form(p)?;
                    Ok(CanonReport {
                        schema: SCHEMA_VERSION,
                        dimension: p.dim(),
                        vertex_count: p.vertex_count(),
                        canonical_form: canonical_rows(&cf),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            Ok(ExitCode::SUCCESS)
        }
    }
}
