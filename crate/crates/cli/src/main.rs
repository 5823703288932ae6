//! Batch front end: one subcommand per analysis, reports as JSON, TSV or text.
//!
//! Exit codes: 0 success or passed check, 1 failed check, 2 invalid input.

mod commands;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cyquiver_core::corpus::emit_corpus;
use cyquiver_core::quiver::parse_presentation;

pub const SCHEMA: &str = "cyquiver.report/v1";

#[derive(Parser)]
#[command(name = "cyquiver", version, about = "Preprojective algebras of quivers with relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Adds wall-clock time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Of {
    /// The algebra given by the input file.
    Input,
    /// Its preprojective algebra: classical without relations, from the
    /// superpotential otherwise.
    Preproj,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    /// Every arrow has degree 1.
    Path,
    /// Arrows of the input have degree 0, adjoined arrows degree 1.
    Tensor,
}

#[derive(Args, Debug, Serialize)]
pub struct Opts {
    /// Degree bound for completions and tables.
    #[arg(short = 'N', long = "maxdeg", default_value_t = 20)]
    pub maxdeg: u64,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// ADE type of the underlying graph.
    Classify { file: PathBuf },
    /// The double quiver.
    Double { file: PathBuf },
    /// Preprojective algebra of the quiver (relations of the input are ignored).
    PreprojClassical { file: PathBuf },
    /// Preprojective algebra of a global dimension 2 algebra from its superpotential.
    PreprojSuper {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Graded dimensions of the tensor algebra of the top Ext bimodule.
    PreprojTensor {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        #[arg(short, default_value_t = 1)]
        d: usize,
        /// Compare with the combinatorial construction (exit 1 on mismatch).
        #[arg(long)]
        compare: bool,
    },
    /// Hilbert table.
    Hilbert {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        #[arg(long, value_enum, default_value_t = Of::Preproj)]
        of: Of,
        #[arg(long, value_enum, default_value_t = Grading::Path)]
        grading: Grading,
        /// Work over the prime field of this order.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Finite-dimensionality certificate (exit 1 unless finite).
    Finite {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        #[arg(long, value_enum, default_value_t = Of::Preproj)]
        of: Of,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Selfinjectivity and the Nakayama permutation (exit 1 unless selfinjective).
    Selfinjective {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        #[arg(long, value_enum, default_value_t = Of::Preproj)]
        of: Of,
    },
    /// Global dimension.
    Gldim {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        #[arg(long, value_enum, default_value_t = Of::Input)]
        of: Of,
        /// Largest dimension certified exactly.
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Injective dimensions of the algebra on both sides (exit 1 unless equal and finite).
    Gorenstein {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        #[arg(long, value_enum, default_value_t = Of::Input)]
        of: Of,
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Whether the inverse Serre iterates of the algebra stay modules (exit 1 unless RI).
    CheckDri {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        #[arg(short, default_value_t = 1)]
        d: usize,
        /// Number of iterates [default: 6].
        #[arg(long)]
        p_max: Option<usize>,
    },
    /// Whether every projective reaches an injective under the inverse Serre functor (exit 1 unless RF).
    CheckDrf {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        #[arg(short, default_value_t = 1)]
        d: usize,
        /// Number of iterates [default: 12].
        #[arg(long)]
        p_max: Option<usize>,
    },
    /// Stable Hom duality over a generated module family.
    CyStable {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        #[arg(long, value_enum, default_value_t = Of::Preproj)]
        of: Of,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        shift: i64,
        /// Syzygy depth used to generate the family.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Stable bimodule condition for the preprojective algebra of the input.
    CyBimodule {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        /// [default: 1 without relations, 2 otherwise]
        #[arg(short)]
        d: Option<usize>,
    },
    /// Degree-0 cohomology of the inverse Serre iterates against the preprojective Hilbert table.
    H0Crosscheck {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
        /// [default: 1 without relations, 2 otherwise]
        #[arg(short)]
        d: Option<usize>,
        /// [default: 4]
        #[arg(long)]
        p_max: Option<usize>,
    },
    /// Write the bundled example presentations into a directory.
    EmitCorpus { dir: PathBuf },
}

impl Command {
    fn name(&self) -> String {
        let v = serde_json::to_value(self).expect("serializable");
        v["subcommand"].as_str().unwrap_or_default().to_string()
    }

    fn file(&self) -> &Path {
        match self {
            Command::Classify { file }
            | Command::Double { file }
            | Command::PreprojClassical { file }
            | Command::PreprojSuper { file, .. }
            | Command::PreprojTensor { file, .. }
            | Command::Hilbert { file, .. }
            | Command::Finite { file, .. }
            | Command::Selfinjective { file, .. }
            | Command::Gldim { file, .. }
            | Command::Gorenstein { file, .. }
            | Command::CheckDri { file, .. }
            | Command::CheckDrf { file, .. }
            | Command::CyStable { file, .. }
            | Command::CyBimodule { file, .. }
            | Command::H0Crosscheck { file, .. } => file,
            Command::EmitCorpus { dir } => dir,
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// `key<TAB>value` lines for every scalar leaf.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}\t{}\n", s.replace(['\n', '\t'], " "))),
        other => out.push_str(&format!("{prefix}\t{other}\n")),
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    if let Command::EmitCorpus { dir } = &cli.command {
        return match emit_corpus(dir) {
            Ok(paths) => {
                for p in paths {
                    println!("{}", p.display());
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        };
    }
    let path = cli.command.file();
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return fail(format!("{}: {e}", path.display())),
    };
    let Ok(text) = std::str::from_utf8(&bytes) else {
        return fail(format!("{}: not UTF-8", path.display()));
    };
    let presentation = match parse_presentation(text) {
        Ok(p) => p,
        Err(e) => return fail(format!("{}: {e}", path.display())),
    };
    let outcome = match commands::run(&cli.command, &presentation) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let mut options = serde_json::to_value(&cli.command).expect("serializable");
    if let Value::Object(m) = &mut options {
        m.remove("subcommand");
        m.remove("file");
    }
    let mut report = json!({
        "schema": SCHEMA,
        "command": cli.command.name(),
        "input": { "path": path.display().to_string(), "sha256": sha256_hex(&bytes) },
        "options": options,
        "result": outcome.result,
        "certificates": outcome.certificates,
        "pass": outcome.pass,
    });
    if cli.timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
        Format::Tsv => match &outcome.table {
            Some(t) => print!("{t}"),
            None => {
                let mut out = String::new();
                flatten("", &report, &mut out);
                print!("{out}");
            }
        },
        Format::Text => {
            println!("{}", outcome.text);
            if cli.timing {
                println!("time: {} ms", start.elapsed().as_millis());
            }
        }
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
