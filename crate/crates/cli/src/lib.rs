//! Command-line front end for `expcomp`: CSV ingestion, fitting, model
//! comparison, simulation and density curves.

pub mod args;
pub mod artifact;
pub mod commands;
pub mod dataset;
pub mod error;
pub mod literature;

use std::ffi::OsString;

use clap::Parser;

use crate::args::{Cli, Command, OutputArgs};
use crate::artifact::RunArtifact;
use crate::commands::{compute, render_csv, render_table, write_file};
use crate::error::{CliError, CliResult};

/// Runs the CLI and returns the process exit status:
/// 0 success, 1 usage or input error, 2 fit failure.
pub fn run(argv: Vec<OsString>) -> u8 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(cli.command, echo) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn output_args(cmd: &Command) -> Option<&OutputArgs> {
    match cmd {
        Command::Fit(a) => Some(&a.output),
        Command::Compare(a) => Some(&a.output),
        Command::Simulate(a) => Some(&a.output),
        Command::Density(a) => Some(&a.output),
        Command::Replay(_) => None,
    }
}

fn execute(cmd: Command, echo: Vec<String>) -> CliResult<()> {
    if let Command::Replay(r) = &cmd {
        let artifact = RunArtifact::load(&r.artifact)?;
        return if artifact.reproduces()? {
            println!("reproduced: results match {}", r.artifact.display());
            Ok(())
        } else {
            Err(CliError::Mismatch(format!(
                "results differ from {}",
                r.artifact.display()
            )))
        };
    }
    let out = compute(&cmd)?;
    let opts = output_args(&cmd).cloned().unwrap_or_default();
    if opts.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("results serialize")
        );
    } else {
        print!("{}", render_table(&out));
    }
    if let Some(path) = &opts.out {
        write_file(path, &render_csv(&out)?)?;
    }
    if let Some(path) = &opts.artifact {
        RunArtifact::new(echo, cmd, &out)?.save(path)?;
    }
    Ok(())
}
