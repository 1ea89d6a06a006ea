//! maxlab: run scenarios, fit rates, check invariants.

use maxlab::check::run_check;
use maxlab::config::ScenarioConfig;
use maxlab::csvout::parse_csv;
use maxlab::error::CliError;
use maxlab::fit::fit_rate;
use maxlab::scenario::run_scenario;
use std::path::PathBuf;
use std::process::ExitCode;

const USAGE: &str = "\
maxlab — viscoelastic shear-wave laboratory

USAGE:
  maxlab run <config-file> [--output-dir DIR] [--threads N] [--seed S]
  maxlab fit <results.csv> [--seed S]
  maxlab check

run    executes the scenario described by the config file and writes
       results.csv, report.json and manifest.json into the output directory
fit    refits the log-log rate from a sweep results.csv and prints the
       report JSON to stdout
check  runs the fast invariant suite and reports PASS/FAIL per invariant
";

fn parse_overrides(
    args: &[String],
) -> Result<(Option<PathBuf>, Option<usize>, Option<u64>), CliError> {
    let mut output_dir = None;
    let mut threads = None;
    let mut seed = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--output-dir" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--output-dir needs a value".into()))?;
                output_dir = Some(PathBuf::from(v));
            }
            "--threads" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--threads needs a value".into()))?;
                threads = Some(v.parse().map_err(|_| {
                    CliError::Usage(format!("--threads: expected an integer, got '{v}'"))
                })?);
            }
            "--seed" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--seed needs a value".into()))?;
                seed = Some(v.parse().map_err(|_| {
                    CliError::Usage(format!("--seed: expected an integer, got '{v}'"))
                })?);
            }
            other => {
                return Err(CliError::Usage(format!("unknown flag '{other}'")));
            }
        }
    }
    Ok((output_dir, threads, seed))
}

fn cmd_run(args: &[String]) -> Result<(), CliError> {
    let (config_path, rest) = args
        .split_first()
        .ok_or_else(|| CliError::Usage("run: missing config file".into()))?;
    let (output_dir, threads, seed) = parse_overrides(rest)?;
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| CliError::Usage(format!("cannot read config '{config_path}': {e}")))?;
    let mut cfg = ScenarioConfig::parse(&text)?;
    if let Some(dir) = output_dir {
        cfg.output_dir = dir;
    }
    if let Some(t) = threads {
        cfg.threads = t;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    run_scenario(&cfg)?;
    println!(
        "wrote results.csv, report.json, manifest.json to {}",
        cfg.output_dir.display()
    );
    Ok(())
}

fn cmd_fit(args: &[String]) -> Result<(), CliError> {
    let (csv_path, rest) = args
        .split_first()
        .ok_or_else(|| CliError::Usage("fit: missing results.csv path".into()))?;
    let (_, _, seed) = parse_overrides(rest)?;
    let text = std::fs::read_to_string(csv_path)
        .map_err(|e| CliError::Usage(format!("cannot read '{csv_path}': {e}")))?;
    let rows = parse_csv(&text).map_err(CliError::Usage)?;

    // Columns (after the scenario tag): xi_1, xi_2, t, l2_diff, ...
    // Group the sup over t of l2_diff per xi_1; Δξ = xi_1 − xi_2.
    let mut sup: Vec<(f64, f64, f64)> = Vec::new(); // (xi_1, xi_2, sup_l2)
    for row in &rows {
        let (Some(x1), Some(x2), Some(l2)) = (row[0], row[1], row[3]) else {
            continue;
        };
        if x1 == x2 {
            continue;
        }
        match sup.iter_mut().find(|(a, b, _)| *a == x1 && *b == x2) {
            Some(entry) => entry.2 = entry.2.max(l2),
            None => sup.push((x1, x2, l2)),
        }
    }
    let pairs: Vec<(f64, f64)> = sup
        .iter()
        .filter(|(_, _, e)| *e > 0.0)
        .map(|(x1, x2, e)| (x1 - x2, *e))
        .collect();
    let fit = fit_rate(&pairs, seed.unwrap_or(0))?;
    let out = serde_json::to_string_pretty(&fit)
        .map_err(|e| CliError::Runtime(format!("encode: {e}")))?;
    println!("{out}");
    Ok(())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let result = match args.split_first() {
        Some((cmd, rest)) => match cmd.as_str() {
            "run" => cmd_run(rest),
            "fit" => cmd_fit(rest),
            "check" => run_check(),
            "--help" | "-h" | "help" => {
                print!("{USAGE}");
                return ExitCode::SUCCESS;
            }
            other => Err(CliError::Usage(format!("unknown command '{other}'"))),
        },
        None => {
            eprint!("{USAGE}");
            return ExitCode::from(2);
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}
