//! Command-line front end for `toricnef`.
//!
//! [`run`] does all the work and returns the text to print and the exit code,
//! so the binary is a thin wrapper and tests can drive commands in-process.

use std::io;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

mod format;
mod report;

pub use report::SCHEMA;

#[derive(Debug, Parser)]
#[command(name = "toricnef", version, about = "Nef, Mori and pseudo-effective cones of toric varieties")]
pub struct Cli {
    /// Print machine-readable JSON reports.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fan invariants; exits 1 when the fan is invalid.
    Validate { fan: String },
    /// Dimension, ray count, Picard rank, smoothness, completeness, projectivity.
    Analyze { fan: String },
    /// Extremal rays and facets of the nef cone.
    Nef { fan: String },
    /// Extremal rays and facets of the Mori cone, with a wall curve for each ray.
    Mori { fan: String },
    /// Primitive collections with their foci and primitive relations.
    Collections { fan: String },
    /// Whether every nonzero nef class is big, with per-ray verdicts.
    Bignef { fan: String },
    /// Whether at most `dim` rays admit a positive integer relation.
    General { fan: String },
    /// Star subdivision at a primitive vector; prints the new fan.
    Subdivide {
        fan: String,
        /// Comma-separated coordinates, e.g. `1,-1,-2`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Push the fan forward along a surjective lattice map.
    Project {
        fan: String,
        /// Rows separated by `;`, entries by `,`, e.g. `1,0,0;0,1,0`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Print a fan from the built-in catalog.
    Catalog {
        /// One of: p, example-8-10, xk, miyake-oda, general-ndim, blown-up-p2,
        /// hirzebruch, p1xp1, p1xp2, product.
        name: String,
        /// Parameter for parametrized families (n, k, a or dims like `1,2`).
        param: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] toricnef::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            Self::Io { .. } => "io",
            Self::Usage(_) => "usage",
            Self::Core(e) => e.kind(),
        }
    }
}

/// Runs a parsed command. `read_input` resolves a fan argument (a path, or
/// `-` for stdin) to its text.
pub fn run(cli: &Cli, read_input: &mut dyn FnMut(&str) -> io::Result<String>) -> Outcome {
    match report::execute(&cli.command, read_input) {
        Ok(r) => Outcome { stdout: if cli.json { r.json_text() } else { r.text }, stderr: String::new(), code: r.code },
        Err(e) => {
            let message = e.to_string();
            if cli.json {
                let value = json!({
                    "schema": SCHEMA,
                    "command": report::command_name(&cli.command),
                    "error": { "kind": e.kind(), "message": message },
                });
                Outcome { stdout: pretty(&value), stderr: String::new(), code: 2 }
            } else {
                Outcome { stdout: String::new(), stderr: format!("error: {message}\n"), code: 2 }
            }
        }
    }
}

/// Parses `args` (including the program name) and runs with `stdin` as the
/// contents of `-`. Files are read from disk.
pub fn run_args<I, T>(args: I, stdin: &str) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, &mut |path| if path == "-" { Ok(stdin.to_string()) } else { std::fs::read_to_string(path) }),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub(crate) fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}
