use std::io::Read;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use courant_tdual_cli::{run, Cli};

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let bytes = if !cli.command.needs_input() {
        Vec::new()
    } else if let Some(path) = &cli.input {
        std::fs::read(path).with_context(|| format!("reading {}", path.display()))?
    } else {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).context("reading standard input")?;
        buf
    };
    let outcome = run(&cli, &bytes);
    if let (Some(path), Some(artifact)) = (&cli.output, &outcome.artifact) {
        std::fs::write(path, serde_json::to_string_pretty(artifact)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut report = outcome.report;
    if cli.output.is_none() {
        report.artifact = outcome.artifact;
    }
    println!("{}", report.to_json());
    Ok(ExitCode::from(report.exit_status as u8))
}
