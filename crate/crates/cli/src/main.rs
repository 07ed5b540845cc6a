mod args;
mod commands;
mod output;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command};
use output::{manifest_path, resolve_output, sibling, write_atomic, RunManifest};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let Cli { mut command, mut global } = cli;
    if let Command::Replay { manifest } = &command {
        let m = RunManifest::load(manifest)?;
        if global.output.is_none() {
            global.output = m.outputs.first().cloned();
        }
        global.json = m.json;
        command = m.parameters;
    }
    let json = global.json
        || global
            .output
            .as_ref()
            .and_then(|p| p.extension())
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));

    let outcome = commands::execute(&mut command, json)?;
    for line in &outcome.report {
        println!("{line}");
    }

    let wants_file = outcome.write_by_default || global.output.is_some();
    if let (Some(body), true) = (&outcome.body, wants_file) {
        let ext = if json { "json" } else { "csv" };
        let path = resolve_output(&global, &format!("{}.{ext}", command.name()))?;
        write_atomic(&path, body)?;
        let mut outputs = vec![path.clone()];
        for (suffix, contents) in &outcome.extra {
            let p = sibling(&path, suffix);
            write_atomic(&p, contents)?;
            outputs.push(p);
        }
        if !global.no_manifest {
            write_manifest(&command, json, &outcome, outputs)?;
        }
        eprintln!("wrote {}", path.display());
    }
    Ok(if outcome.failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn write_manifest(
    command: &Command,
    json: bool,
    outcome: &output::Outcome,
    outputs: Vec<std::path::PathBuf>,
) -> Result<()> {
    let manifest = RunManifest {
        subcommand: command.name().to_string(),
        parameters: command.clone(),
        json,
        inputs: outcome
            .inputs
            .iter()
            .map(std::path::absolute)
            .collect::<std::io::Result<_>>()?,
        outputs: outputs.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339(),
        seed: outcome.seed,
    };
    let text = serde_json::to_string_pretty(&manifest).context("serializing manifest")?;
    write_atomic(&manifest_path(&outputs[0]), &(text + "\n"))
}
