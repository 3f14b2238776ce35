/*
Copyright 2026 The ppa-lab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ppa_lab::batch::{report_dir, summary_table, FileOutcome};
use ppa_lab::{batch_run, BatchOptions, BatchResult, ParseOptions, Stages, EXIT_CONFIG};

#[derive(Parser, Debug)]
#[command(
    name = "ppa-lab",
    version,
    about = "Run proximal point scenarios and certify their rates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every sampler (falls back to PPA_LAB_SEED, then the scenario).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override ppaConfig.maxIterations.
    #[arg(long = "max-iter", global = true)]
    max_iter: Option<usize>,
    /// Root directory for outputs; each scenario writes to <out>/<name>.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Reject unknown keys (the default).
    #[arg(long, global = true, conflicts_with = "lenient")]
    strict: bool,
    /// Warn about unknown keys instead of rejecting them.
    #[arg(long, global = true)]
    lenient: bool,
    /// Skip the SVG charts.
    #[arg(long = "no-plots", global = true)]
    no_plots: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run scenarios and write CSV, report and charts.
    Run {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Only resolve the modulus and run modulus probes; prints JSON.
    Modulus { file: PathBuf },
    /// Only run the probes; prints one line per probe.
    Probe { file: PathBuf },
    /// Summarize the reports under a directory.
    Report { dir: PathBuf },
}

fn print_diagnostics(result: &BatchResult) {
    for f in &result.files {
        match &f.outcome {
            FileOutcome::Config(e) => eprintln!("error: {}: {e}", f.file.display()),
            FileOutcome::Ran {
                report,
                write_error,
                ..
            } => {
                for w in &report.warnings {
                    eprintln!("warning: {}: {w}", f.file.display());
                }
                if let Some(e) = write_error {
                    eprintln!("error: {}: writing outputs: {e}", f.file.display());
                }
                for msg in &report.failures {
                    eprintln!("fail: {}: {msg}", report.scenario);
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let parse = ParseOptions {
        lenient: cli.lenient && !cli.strict,
        seed: cli.seed,
        max_iterations: cli.max_iter,
    };
    let mut opts = BatchOptions {
        parse,
        out: cli.out.clone(),
        plots: !cli.no_plots,
        ..BatchOptions::default()
    };
    let code = match cli.command {
        Command::Run { files } => {
            let result = batch_run(&files, &opts);
            if result
                .files
                .iter()
                .any(|f| matches!(f.outcome, FileOutcome::Ran { .. }))
            {
                print!("{}", summary_table(&result));
            }
            print_diagnostics(&result);
            result.exit_code
        }
        Command::Modulus { file } => {
            opts.write = false;
            opts.stages = Stages {
                modulus: true,
                ppa: false,
                probes: true,
                modulus_probes_only: true,
            };
            let result = batch_run(&[file], &opts);
            for f in &result.files {
                if let FileOutcome::Ran { report, .. } = &f.outcome {
                    let v = serde_json::json!({
                        "scenario": report.scenario,
                        "modulus": report.modulus,
                        "probes": report.probes,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
                }
            }
            print_diagnostics(&result);
            result.exit_code
        }
        Command::Probe { file } => {
            opts.write = false;
            opts.stages = Stages {
                modulus: true,
                ppa: false,
                probes: true,
                modulus_probes_only: false,
            };
            let result = batch_run(&[file], &opts);
            for f in &result.files {
                if let FileOutcome::Ran { report, .. } = &f.outcome {
                    for p in &report.probes {
                        println!(
                            "{}  {}  expect {:?}  got {:?}  {}",
                            p.label,
                            p.kind,
                            p.expect,
                            p.outcome,
                            if p.matched { "ok" } else { "MISMATCH" }
                        );
                    }
                }
            }
            print_diagnostics(&result);
            result.exit_code
        }
        Command::Report { dir } => match report_dir(&dir) {
            Ok((table, code)) => {
                print!("{table}");
                code
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_CONFIG
            }
        },
    };
    ExitCode::from(code as u8)
}
