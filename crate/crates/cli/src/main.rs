//! `oco`: runs regret experiments described by JSON configs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use oco_core::experiment::{
    certify_config, emit_outputs, parse_config, run_experiment, ExperimentResult, ParsedConfig,
    RunStatus,
};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "oco",
    version,
    about = "Online convex optimization regret experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override the seed of every config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for CSV traces and JSON summaries.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment.
    Run { config: PathBuf },
    /// Run every `*.json` config in a directory.
    Suite { dir: PathBuf },
    /// Check the config's stated L and M against its losses by sampling.
    Certify { config: PathBuf },
}

/// Exit code for configs that cannot be read or validated.
const CONFIG_FAILURE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run { config } => match load(config, cli.seed) {
            Ok(parsed) => finish(&[run_one(&parsed, &cli.out)]),
            Err(msg) => config_failure(&msg),
        },
        Command::Suite { dir } => {
            let paths = match suite_configs(dir) {
                Ok(p) => p,
                Err(msg) => return config_failure(&msg),
            };
            let mut parsed = Vec::with_capacity(paths.len());
            for path in &paths {
                match load(path, cli.seed) {
                    Ok(p) => parsed.push(p),
                    Err(msg) => return config_failure(&msg),
                }
            }
            let verdicts: Vec<bool> = parsed.par_iter().map(|p| run_one(p, &cli.out)).collect();
            let passed = verdicts.iter().filter(|&&v| v).count();
            println!(
                "suite: {passed}/{} configs satisfied every bound",
                verdicts.len()
            );
            finish(&verdicts)
        }
        Command::Certify { config } => {
            let parsed = match load(config, cli.seed) {
                Ok(p) => p,
                Err(msg) => return config_failure(&msg),
            };
            match certify_config(&parsed.config) {
                Ok(report) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report).expect("report serializes")
                    );
                    if report.all_valid {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::FAILURE
                    }
                }
                Err(e) => config_failure(&format!("{}: {e}", config.display())),
            }
        }
    }
}

fn load(path: &Path, seed: Option<u64>) -> Result<ParsedConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut parsed = parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(seed) = seed {
        parsed.config.seed = seed;
    }
    Ok(parsed)
}

fn suite_configs(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let entries = std::fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(format!("{}: no *.json configs", dir.display()));
    }
    Ok(paths)
}

/// Runs, writes outputs and prints a verdict line; true iff every bound held.
fn run_one(parsed: &ParsedConfig, out: &Path) -> bool {
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", parsed.config.scenario);
    }
    let result = run_experiment(parsed);
    if let Err(e) = emit_outputs(&result, out) {
        eprintln!("error: {e}");
        return false;
    }
    println!("{}", verdict_line(&result));
    result.summary.all_satisfied
}

fn verdict_line(result: &ExperimentResult) -> String {
    let s = &result.summary;
    if s.status == RunStatus::Failed {
        return format!(
            "FAIL {} ({} of {} rounds): {}",
            s.scenario,
            s.rounds_completed,
            s.horizon,
            s.error.as_deref().unwrap_or("run failed")
        );
    }
    let bounds: Vec<String> = s
        .bounds
        .iter()
        .map(|b| {
            format!(
                "{} {:.6} <= {:.6}",
                b.kind.name(),
                b.realized,
                b.bound_value
            )
        })
        .collect();
    format!(
        "{} {} T={} {}",
        if s.all_satisfied { "PASS" } else { "FAIL" },
        s.scenario,
        s.horizon,
        bounds.join(", ")
    )
}

fn finish(verdicts: &[bool]) -> ExitCode {
    if verdicts.iter().all(|&v| v) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn config_failure(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(CONFIG_FAILURE)
}
