//! `g2` command line: roots, show, eval, decompose, verify.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::group::{
    evaluate_word, matrix_from_json, matrix_to_json, root_matrix, torus_matrix, weyl_matrix, GroupElement, GroupError, GroupWord, RMatrix,
};
use crate::replay::suite::{elimination_suite, involution_suite, prod2_suite, relations_suite, units_suite, verify_paper, SuiteOptions};
use crate::replay::{normalizer_report, prod2_extract, EliminationOptions, Ledger, ReplayError};
use crate::report::{Report, Status};
use crate::ring::{RingDescriptor, RingError, RingValue};
use crate::rootsys::{root_table, Root, RootError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}: invalid JSON: {1}")]
    Json(PathBuf, serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "g2", version, about = "Adjoint Chevalley group of type G2 over local rings, with a proof-replay suite")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShowKind {
    /// x_α(t)
    Gen,
    /// w_α(t)
    W,
    /// h_α(t)
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
    Relations,
    Elimination,
    Normalizer,
    Genunits,
    Prod2,
    Involution,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The twelve roots with coordinates, lengths and basis positions.
    Roots,
    /// One generator as a 14×14 matrix.
    Show {
        kind: ShowKind,
        /// Root: a1..a6 or -a1..-a6.
        root: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        param: String,
        #[arg(long, default_value = "q")]
        ring: String,
    },
    /// Evaluate a word such as "x(a1,t) w(a2,1) h(a1,-1)".
    Eval {
        word: String,
        #[arg(long, default_value = "q")]
        ring: String,
        /// Bind a parameter: --set t=5 (repeatable).
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
    },
    /// Recover λ, s, t, u from a matrix document {"ring", "entries"}.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Replace the default rings of the randomized suites.
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Truncation degree of the elimination ring.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
        trunc_degree: u32,
        /// Ledger file replacing the shipped one.
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Let the elimination scan other conditions when a pivot fails.
        #[arg(long)]
        cross_condition: bool,
        /// Include wall times (output is then not reproducible byte for byte).
        #[arg(long)]
        timing: bool,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn matrix_out(m: &RMatrix, format: Format) -> String {
    match format {
        Format::Text => m.render(),
        Format::Json => format!("{:#}\n", matrix_to_json(m)),
    }
}

fn show(kind: ShowKind, root: &str, param: &str, ring: &str, format: Format) -> Result<String, CliError> {
    let desc = RingDescriptor::parse(ring)?;
    let root: Root = root.parse()?;
    let t = RingValue::parse(desc, param)?;
    let not_unit = || CliError::Usage(format!("parameter {t} is not a unit in {desc}"));
    let m = match kind {
        ShowKind::Gen => root_matrix(root, &t),
        ShowKind::W => weyl_matrix(root, &t).ok_or_else(not_unit)?,
        ShowKind::H => torus_matrix(root, &t).ok_or_else(not_unit)?,
    };
    Ok(matrix_out(&m, format))
}

fn eval(word: &str, ring: &str, set: &[String], format: Format) -> Result<String, CliError> {
    let desc = RingDescriptor::parse(ring)?;
    let word: GroupWord = word.parse()?;
    let mut params = BTreeMap::new();
    for s in set {
        let (k, v) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("--set expects NAME=VALUE, got `{s}`")))?;
        params.insert(k.trim().to_string(), RingValue::parse(desc, v.trim())?);
    }
    let g = evaluate_word(&word, desc, &params)?;
    Ok(matrix_out(&g.matrix, format))
}

fn decompose(input: &Path, format: Format) -> Result<String, CliError> {
    let doc: Value = serde_json::from_str(&read(input)?).map_err(|e| CliError::Json(input.to_path_buf(), e))?;
    let m = matrix_from_json(&doc)?;
    let p = prod2_extract(&GroupElement::from_matrix(m)?)?;
    Ok(match format {
        Format::Text => p.to_string(),
        Format::Json => format!("{:#}\n", p.to_json()),
    })
}

fn roots(format: Format) -> String {
    let table = root_table();
    match format {
        Format::Json => format!("{:#}\n", serde_json::to_value(&table).expect("serializable")),
        Format::Text => {
            let mut out = String::from("index  name      n1  n2  euclidean     |a|^2  position\n");
            for r in table {
                let e = format!("{:?}", r.euclidean);
                let _ =
                    writeln!(out, "{:>5}  {:<8} {:>3} {:>3}  {:<13} {:>5}  {:>8}", r.index, r.name, r.n1, r.n2, e, r.length2, r.position);
            }
            out
        }
    }
}

/// Rendered reports and whether every check passed.
pub fn render_reports(reports: Vec<Report>, format: Format, timing: bool) -> (String, bool) {
    let reports: Vec<Report> = reports.into_iter().map(|r| if timing { r.with_timing() } else { r }).collect();
    let ok = reports.iter().all(Report::all_pass);
    let out = match format {
        Format::Json => format!("{:#}\n", json!({ "all_pass": ok, "reports": reports })),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&r.to_text());
                out.push('\n');
            }
            if reports.len() > 1 {
                let _ = writeln!(out, "{:<22} {:>5} {:>5} {:>5}{}", "suite", "pass", "fail", "note", if timing { "      ms" } else { "" });
                for r in &reports {
                    let ms = if timing { format!(" {:>7}", r.elapsed.as_millis()) } else { String::new() };
                    let _ = writeln!(
                        out,
                        "{:<22} {:>5} {:>5} {:>5}{ms}",
                        r.suite,
                        r.count(Status::Pass),
                        r.count(Status::Fail),
                        r.count(Status::Note)
                    );
                }
            }
            let _ = writeln!(out, "{}", if ok { "ALL PASS" } else { "FAILURES PRESENT" });
            out
        }
    };
    (out, ok)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: Suite,
    ring: Option<&str>,
    seed: u64,
    trunc_degree: u32,
    ledger: Option<&Path>,
    cross_condition: bool,
    timing: bool,
    format: Format,
) -> Result<(String, bool), CliError> {
    let ring = ring.map(RingDescriptor::parse).transpose()?;
    if ring.is_some() && matches!(suite, Suite::Elimination | Suite::Normalizer) {
        return Err(CliError::Usage("--ring does not apply to this suite".into()));
    }
    if let Some(RingDescriptor::Rationals) = ring {
        if matches!(suite, Suite::Prod2 | Suite::Involution) {
            return Err(CliError::Usage("this suite needs a local ring".into()));
        }
    }
    let ledger = match ledger {
        Some(p) => Some(Ledger::parse(&read(p)?)?),
        None => None,
    };
    let opts = SuiteOptions {
        seed,
        ring,
        elimination: EliminationOptions { degree: trunc_degree, allow_cross_condition: cross_condition, ..Default::default() },
        guard: trunc_degree == 2,
        ledger,
        ..Default::default()
    };
    let reports = match suite {
        Suite::Paper => verify_paper(&opts),
        Suite::Relations => vec![relations_suite(&opts)],
        Suite::Elimination => vec![elimination_suite(&opts)],
        Suite::Normalizer => vec![normalizer_report()],
        Suite::Genunits => vec![units_suite(&opts)],
        Suite::Prod2 => vec![prod2_suite(&opts)],
        Suite::Involution => vec![involution_suite(&opts)],
    };
    Ok(render_reports(reports, format, timing))
}

/// Runs a parsed invocation; returns output and exit code (0 pass, 1 verification failure).
pub fn dispatch(cli: &Cli) -> Result<(String, i32), CliError> {
    let f = cli.format;
    Ok(match &cli.command {
        Command::Roots => (roots(f), 0),
        Command::Show { kind, root, param, ring } => (show(*kind, root, param, ring, f)?, 0),
        Command::Eval { word, ring, set } => (eval(word, ring, set, f)?, 0),
        Command::Decompose { input } => (decompose(input, f)?, 0),
        Command::Verify { suite, ring, seed, trunc_degree, ledger, cross_condition, timing } => {
            let (out, ok) = verify(*suite, ring.as_deref(), *seed, *trunc_degree, ledger.as_deref(), *cross_condition, *timing, f)?;
            (out, if ok { 0 } else { 1 })
        }
    })
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
