//! The full boundary pipeline on shipped inputs, as run by `jester mazur`.

use jester::cli::{mazur_pipeline, MazurInputs, Settings};

fn main() -> anyhow::Result<()> {
    let found = mazur_pipeline(&MazurInputs::shipped(), &Settings::default())?;
    println!("{}", serde_json::to_string_pretty(&found.result)?);
    println!("{}", found.summary);
    Ok(())
}
