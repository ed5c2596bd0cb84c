//! `koszul`: command-line front end for the exact Koszul-complex toolkit.
//!
//! Every subcommand reads one JSON document (a path, or inline text starting
//! with `{` or `[`) and writes one JSON report to stdout or `--output`.
//!
//! Exit status:
//! * `0`: success, identity PASS, division feasible, ratio bounded;
//! * `2`: a well-formed negative (FAIL, infeasible within the cap, unbounded);
//! * `1`: input or internal error, with a message on stderr.

mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use koszul_core::division::Cap;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(name = "koszul", version, about = "Exact Koszul-complex identities, division certificates and samplers")]
pub struct Cli {
    /// Write the report atomically to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check an identity on a morphism, or re-check a certificate when no
    /// identity is given.
    Verify {
        input: String,
        #[arg(long, value_enum)]
        identity: Option<Identity>,
        /// Level `k` for the rewrite identity (all levels when omitted).
        #[arg(long)]
        level: Option<usize>,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Solve `P Q = Φ` within a degree cap.
    Divide {
        input: String,
        /// Integer or `auto`; overrides the document's `cap`.
        #[arg(long, value_parser = parse_cap)]
        cap: Option<Cap>,
    },
    /// Solve `P Q = Φ` with the cap set to `deg Φ`.
    Noether { input: String },
    /// Solve `P Q = I_r`; the cap defaults to the Macaulay bound.
    Nullstellensatz {
        input: String,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Degree bounds for the column degrees of a morphism.
    Bounds { input: String },
    /// Seeded sampling of the Łojasiewicz or Briançon-Skoda quantity.
    Sample {
        input: String,
        /// Defaults to briancon-skoda when the document has `phi`.
        #[arg(long, value_enum)]
        quantity: Option<Quantity>,
        #[arg(long)]
        mu: Option<u32>,
        #[arg(long)]
        exponent: Option<u32>,
        #[arg(long, value_enum, default_value = "mixed")]
        regime: RegimeArg,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Heuristic codimension of the zero set of the maximal minors.
    Probe {
        input: String,
        #[arg(long, default_value_t = 6)]
        trials: usize,
        #[arg(long, env = "KOSZUL_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Lift `φ` through `f` from scalar divisions by the minors.
    Fuhrmann {
        input: String,
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RandomArgs {
    #[arg(long, env = "KOSZUL_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Sample, element or point count.
    #[arg(long)]
    pub count: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    CauchyBinet,
    Cramer,
    Homotopy,
    Omskriv,
    Omv,
    ComplexSquares,
    Exactness,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Lojasiewicz,
    BrianconSkoda,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegimeArg {
    Mixed,
    Local,
    Shell,
}

fn parse_cap(s: &str) -> Result<Cap, String> {
    if s == "auto" {
        return Ok(Cap::Auto);
    }
    s.parse::<u32>().map(Cap::Fixed).map_err(|_| format!("expected a non-negative integer or \"auto\", got {s:?}"))
}

/// The report body plus whether it is a mathematical negative.
pub struct Report {
    pub status: &'static str,
    pub negative: bool,
    pub body: Value,
}

struct Input {
    text: String,
    source: &'static str,
}

fn read_input(arg: &str) -> Result<Input, String> {
    if arg.trim_start().starts_with(['{', '[']) {
        Ok(Input { text: arg.to_string(), source: "inline" })
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| format!("cannot read {arg}: {e}"))?;
        Ok(Input { text, source: "file" })
    }
}

fn input_arg(c: &Command) -> &str {
    match c {
        Command::Verify { input, .. }
        | Command::Divide { input, .. }
        | Command::Noether { input }
        | Command::Nullstellensatz { input, .. }
        | Command::Bounds { input }
        | Command::Sample { input, .. }
        | Command::Probe { input, .. }
        | Command::Fuhrmann { input, .. } => input,
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<(), String> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| format!("cannot create temp file in {}: {e}", dir.display()))?;
    tmp.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    tmp.persist(path).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(())
}

fn run(cli: &Cli, argv: &[String]) -> Result<Report, String> {
    let input = read_input(input_arg(&cli.command))?;
    let doc: Value = serde_json::from_str(&input.text).map_err(|e| format!("invalid JSON: {e}"))?;
    let report = commands::dispatch(&cli.command, &doc)?;
    let envelope = json!({
        "tool": { "name": "koszul", "version": env!("CARGO_PKG_VERSION") },
        "command": argv,
        "input": { "source": input.source, "sha256": hex::encode(Sha256::digest(input.text.as_bytes())) },
        "status": report.status,
        "report": report.body,
    });
    let text = serde_json::to_string_pretty(&envelope).map_err(|e| e.to_string())? + "\n";
    match &cli.output {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    Ok(report)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli, &argv) {
        Ok(r) if r.negative => ExitCode::from(2),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
