//! Batch front end: argument parsing, configuration, and the command
//! implementations behind the `jester` binary.
//!
//! Every command produces a JSON report (stdout, or `--output`) and a one-line
//! summary for stderr. Exit codes: 0 when the checked statement holds, 1 when
//! it was checked and is false, 2 when it could not be checked (bad input,
//! exhausted budget).

mod commands;
mod mazur;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use mazur::{mazur_pipeline, MazurInputs, SeedSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{stage}: {message}")]
    Input { stage: &'static str, message: String },
}

impl CliError {
    pub fn input(stage: &'static str, e: impl ToString) -> Self {
        CliError::Input { stage, message: e.to_string() }
    }

    pub fn stage(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "read_inputs",
            CliError::Input { stage, .. } => stage,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jester", version, about = "Checks link presentations, triangle-group maps, collapses and pro-isomorphisms")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Seed for randomized search phases [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Relator residual tolerance [default: 1e-9]
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Distance below which an isometry counts as the identity [default: 1e-3]
    #[arg(long, global = true)]
    pub identity_tol: Option<f64>,
    /// Search budget in states [default: 1000000]
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// JSON file with defaults for the options above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wirtinger presentation of a link diagram
    Wirtinger {
        diagram: PathBuf,
        /// Surgery or handle relators to adjoin
        #[arg(long)]
        adjoin: Option<PathBuf>,
        /// Also report the abelianization
        #[arg(long)]
        abelianize: bool,
    },
    /// Hyperbolic representations
    #[command(subcommand)]
    Rep(RepCommand),
    /// Triangulate a polygon with identified sides
    Polygon { polygon: PathBuf },
    /// Search for a collapse of a simplicial complex to a point
    Collapse { complex: PathBuf },
    /// Check that A ∪ B = K and that A, B and A ∩ B collapse
    Split {
        complex: PathBuf,
        /// Facet ids of A
        #[arg(long)]
        a: PathBuf,
        /// Facet ids of B
        #[arg(long)]
        b: PathBuf,
    },
    /// Compare two factor sequences up to pro-isomorphism
    Proiso {
        a: PathBuf,
        b: PathBuf,
        /// Levels for the bounded ladder search [default: 3]
        #[arg(long)]
        refute_depth: Option<usize>,
    },
    /// Full boundary pipeline; shipped inputs are used for omitted files
    Mazur(MazurArgs),
}

#[derive(Debug, Subcommand)]
pub enum RepCommand {
    /// Check that generator images satisfy every relator
    Verify {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct MazurArgs {
    #[arg(long)]
    pub diagram: Option<PathBuf>,
    #[arg(long)]
    pub relators: Option<PathBuf>,
    /// Presentation of the triangle group quotient
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    #[arg(long)]
    pub assignment: Option<PathBuf>,
    /// Seed images of arcs and the meridian to test
    #[arg(long)]
    pub seeds: Option<PathBuf>,
}

/// Option defaults read from `--config`; command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub identity_tol: Option<f64>,
    pub budget: Option<u64>,
    pub output: Option<PathBuf>,
    pub refute_depth: Option<usize>,
}

impl PipelineConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input("config", e))
    }
}

/// Effective settings after merging flags, config and defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub seed: u64,
    pub tol: f64,
    pub identity_tol: f64,
    pub budget: u64,
    pub output: Option<PathBuf>,
    pub refute_depth: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings::resolve(&GlobalArgs::default(), &PipelineConfig::default(), None)
    }
}

impl Settings {
    pub fn resolve(g: &GlobalArgs, cfg: &PipelineConfig, refute_depth: Option<usize>) -> Self {
        Settings {
            seed: g.seed.or(cfg.seed).unwrap_or(0),
            tol: g.tol.or(cfg.tol).unwrap_or(1e-9),
            identity_tol: g.identity_tol.or(cfg.identity_tol).unwrap_or(1e-3),
            budget: g.budget.or(cfg.budget).unwrap_or(1_000_000),
            output: g.output.clone().or(cfg.output.clone()),
            refute_depth: refute_depth.or(cfg.refute_depth).unwrap_or(3),
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "tol": self.tol,
            "identity_tol": self.identity_tol,
            "budget": self.budget,
            "refute_depth": self.refute_depth,
        })
    }
}

/// An input file (or shipped default) with its content hash.
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub text: String,
}

impl Input {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Ok(Input { name: path.display().to_string(), text })
    }

    pub fn builtin(name: &str, text: &str) -> Self {
        Input { name: format!("builtin:{name}"), text: text.to_string() }
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.text.as_bytes()))
    }

    fn to_json(&self) -> Value {
        json!({ "name": self.name, "sha256": self.sha256() })
    }
}

/// Exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Unchecked,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Unchecked => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub summary: String,
}

/// What a command hands back before the common report fields are added.
pub struct Finding {
    pub status: Status,
    pub result: Value,
    pub summary: String,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Wirtinger { .. } => "wirtinger",
        Command::Rep(_) => "rep verify",
        Command::Polygon { .. } => "polygon",
        Command::Collapse { .. } => "collapse",
        Command::Split { .. } => "split",
        Command::Proiso { .. } => "proiso",
        Command::Mazur(_) => "mazur",
    }
}

/// Runs a parsed command line. Never fails: input problems become a report
/// with status [`Status::Unchecked`].
pub fn run(cli: &Cli) -> (Outcome, Settings) {
    let refute_depth = match &cli.command {
        Command::Proiso { refute_depth, .. } => *refute_depth,
        _ => None,
    };
    let mut inputs = Vec::new();
    let cfg = match &cli.global.config {
        Some(p) => Input::read(p).and_then(|i| {
            let c = PipelineConfig::from_json(&i.text);
            inputs.push(i);
            c
        }),
        None => Ok(PipelineConfig::default()),
    };
    let settings = Settings::resolve(&cli.global, cfg.as_ref().unwrap_or(&PipelineConfig::default()), refute_depth);
    let found = cfg.and_then(|_| commands::dispatch(&cli.command, &settings, &mut inputs));
    let name = command_name(&cli.command);
    let outcome = match found {
        Ok(f) => Outcome {
            status: f.status,
            report: json!({
                "command": name,
                "inputs": inputs.iter().map(Input::to_json).collect::<Vec<_>>(),
                "settings": settings.to_json(),
                "status": f.status.code(),
                "result": f.result,
            }),
            summary: format!("{name}: {}", f.summary),
        },
        Err(e) => Outcome {
            status: Status::Unchecked,
            report: json!({
                "command": name,
                "inputs": inputs.iter().map(Input::to_json).collect::<Vec<_>>(),
                "settings": settings.to_json(),
                "status": Status::Unchecked.code(),
                "error": { "stage": e.stage(), "message": e.to_string() },
            }),
            summary: format!("{name}: error in {}: {e}", e.stage()),
        },
    };
    (outcome, settings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config() {
        let cli = Cli::parse_from(["jester", "--seed", "5", "collapse", "k.json"]);
        let cfg = PipelineConfig::from_json(r#"{"seed": 9, "budget": 12}"#).unwrap();
        let s = Settings::resolve(&cli.global, &cfg, None);
        assert_eq!((s.seed, s.budget, s.tol, s.refute_depth), (5, 12, 1e-9, 3));
        assert!(PipelineConfig::from_json(r#"{"sed": 9}"#).is_err());
    }

    #[test]
    fn hashes_are_of_content() {
        let a = Input::builtin("x", "abc");
        assert_eq!(a.sha256(), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
