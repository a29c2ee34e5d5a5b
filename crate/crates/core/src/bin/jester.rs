use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use jester::cli::{run, Cli};

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let (outcome, settings) = run(&cli);
    let text = serde_json::to_string_pretty(&outcome.report)? + "\n";
    match &settings.output {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    eprintln!("{}", outcome.summary);
    Ok(ExitCode::from(outcome.status.code()))
}
