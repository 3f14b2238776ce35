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
//! Batch execution, the exit-code contract and summary tables.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::Value;

use ppa_core::ppa::CertStatus;

use crate::error::ConfigError;
use crate::output::{write_outputs, REPORT_FILE};
use crate::run::{run_scenario, RunReport, Stages};
use crate::scenario::{parse_scenario, ParseOptions, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Output root used when neither `--out` nor `outputDir` is given.
pub const DEFAULT_OUT: &str = "ppa-lab-out";

#[derive(Clone, Debug)]
pub struct BatchOptions {
    pub parse: ParseOptions,
    pub out: Option<PathBuf>,
    pub plots: bool,
    pub stages: Stages,
    /// Write output files (off for the `modulus` and `probe` commands).
    pub write: bool,
}

impl Default for BatchOptions {
    fn default() -> Self {
        Self {
            parse: ParseOptions::default(),
            out: None,
            plots: true,
            stages: Stages::ALL,
            write: true,
        }
    }
}

#[derive(Debug)]
pub enum FileOutcome {
    Config(ConfigError),
    Ran {
        report: Box<RunReport>,
        dir: Option<PathBuf>,
        files: Vec<PathBuf>,
        write_error: Option<String>,
    },
}

#[derive(Debug)]
pub struct FileResult {
    pub file: PathBuf,
    pub outcome: FileOutcome,
}

#[derive(Debug)]
pub struct BatchResult {
    pub files: Vec<FileResult>,
    pub exit_code: i32,
}

pub fn load_scenario(path: &Path, opts: &ParseOptions) -> Result<Scenario, ConfigError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ConfigError::general(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text, opts)
}

fn output_dir(s: &Scenario, opts: &BatchOptions) -> PathBuf {
    match (&opts.out, &s.output_dir) {
        (Some(root), _) => root.join(&s.name),
        (None, Some(dir)) => dir.clone(),
        (None, None) => Path::new(DEFAULT_OUT).join(&s.name),
    }
}

/// Parses every file, runs the valid ones in parallel and applies the exit
/// contract: 2 on any config error, else 1 on any failure, else 0.
pub fn batch_run(files: &[PathBuf], opts: &BatchOptions) -> BatchResult {
    let mut parsed: Vec<Result<Scenario, ConfigError>> = files
        .par_iter()
        .map(|f| load_scenario(f, &opts.parse))
        .collect();

    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, r) in parsed.iter_mut().enumerate() {
        let dup = match r {
            Ok(s) => seen.insert(s.name.clone(), i).map(|j| (s.name.clone(), j)),
            Err(_) => None,
        };
        if let Some((name, j)) = dup {
            *r = Err(ConfigError::field(
                "name",
                format!(
                    "duplicate scenario name {name:?} (also in {})",
                    files[j].display()
                ),
            ));
        }
    }

    let results: Vec<FileResult> = parsed
        .into_par_iter()
        .zip(files.par_iter())
        .map(|(r, file)| {
            let outcome = match r {
                Err(e) => FileOutcome::Config(e),
                Ok(s) => {
                    let run = run_scenario(&s, opts.stages);
                    let (dir, files, write_error) = if opts.write {
                        let dir = output_dir(&s, opts);
                        match write_outputs(&dir, &run, opts.plots) {
                            Ok(f) => (Some(dir), f, None),
                            Err(e) => (Some(dir), Vec::new(), Some(e.to_string())),
                        }
                    } else {
                        (None, Vec::new(), None)
                    };
                    FileOutcome::Ran {
                        report: Box::new(run.report),
                        dir,
                        files,
                        write_error,
                    }
                }
            };
            FileResult {
                file: file.clone(),
                outcome,
            }
        })
        .collect();

    let exit_code = exit_code(&results);
    BatchResult {
        files: results,
        exit_code,
    }
}

fn exit_code(results: &[FileResult]) -> i32 {
    let mut code = EXIT_OK;
    for r in results {
        match &r.outcome {
            FileOutcome::Config(_) => return EXIT_CONFIG,
            FileOutcome::Ran {
                report,
                write_error,
                ..
            } => {
                if !report.passed || write_error.is_some() {
                    code = EXIT_FAILURE;
                }
            }
        }
    }
    code
}

struct Row {
    name: String,
    verdict: String,
    certs: String,
    probes: String,
    time: String,
}

fn row_from_report(r: &RunReport) -> Row {
    let ran = r.rate_report.verdicts.len();
    let pass = r
        .rate_report
        .verdicts
        .iter()
        .filter(|c| c.status == CertStatus::Pass)
        .count();
    let other = r
        .rate_report
        .verdicts
        .iter()
        .filter(|c| {
            matches!(
                c.status,
                CertStatus::Inapplicable | CertStatus::Inconclusive
            )
        })
        .count();
    let matched = r.probes.iter().filter(|p| p.matched).count();
    Row {
        name: r.scenario.clone(),
        verdict: if r.passed { "PASS" } else { "FAIL" }.into(),
        certs: format!(
            "{pass}/{ran} pass, {other} n/a, {} skipped",
            r.skipped_certifications.len()
        ),
        probes: format!("{matched}/{} as expected", r.probes.len()),
        time: format!("{:.1} ms", r.timing_ms),
    }
}

fn render(rows: &[Row]) -> String {
    let header = Row {
        name: "scenario".into(),
        verdict: "verdict".into(),
        certs: "certifications".into(),
        probes: "probes".into(),
        time: "time".into(),
    };
    let all: Vec<&Row> = std::iter::once(&header).chain(rows).collect();
    let w = |f: fn(&Row) -> &str| all.iter().map(|r| f(r).chars().count()).max().unwrap_or(0);
    let (w0, w1, w2, w3) = (
        w(|r| &r.name),
        w(|r| &r.verdict),
        w(|r| &r.certs),
        w(|r| &r.probes),
    );
    let mut out = String::new();
    for r in all {
        let _ = writeln!(
            out,
            "{:w0$}  {:w1$}  {:w2$}  {:w3$}  {}",
            r.name, r.verdict, r.certs, r.probes, r.time
        );
    }
    out
}

/// One line per scenario; config errors are listed by file instead.
pub fn summary_table(result: &BatchResult) -> String {
    let rows: Vec<Row> = result
        .files
        .iter()
        .filter_map(|f| match &f.outcome {
            FileOutcome::Ran { report, .. } => Some(row_from_report(report)),
            FileOutcome::Config(_) => None,
        })
        .collect();
    render(&rows)
}

/// Summarizes the `report.json` files in `dir` and its immediate
/// subdirectories. Returns the table and the exit code.
pub fn report_dir(dir: &Path) -> Result<(String, i32), String> {
    let mut paths = Vec::new();
    let direct = dir.join(REPORT_FILE);
    if direct.is_file() {
        paths.push(direct);
    }
    let entries = fs::read_dir(dir).map_err(|e| format!("cannot read {}: {e}", dir.display()))?;
    let mut subdirs: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    subdirs.sort();
    paths.extend(
        subdirs
            .into_iter()
            .map(|d| d.join(REPORT_FILE))
            .filter(|p| p.is_file()),
    );
    if paths.is_empty() {
        return Err(format!("no {REPORT_FILE} under {}", dir.display()));
    }
    let mut rows = Vec::new();
    let mut code = EXIT_OK;
    for p in paths {
        let text = fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", p.display()))?;
        let passed = v["passed"].as_bool().unwrap_or(false);
        if !passed {
            code = EXIT_FAILURE;
        }
        let verdicts = v["rateReport"]["verdicts"]
            .as_array()
            .cloned()
            .unwrap_or_default();
        let pass = verdicts.iter().filter(|c| c["status"] == "pass").count();
        let other = verdicts
            .iter()
            .filter(|c| c["status"] == "inapplicable" || c["status"] == "inconclusive")
            .count();
        let skipped = v["skippedCertifications"].as_array().map_or(0, |a| a.len());
        let probes = v["probes"].as_array().cloned().unwrap_or_default();
        let matched = probes.iter().filter(|p| p["matched"] == true).count();
        rows.push(Row {
            name: v["scenario"].as_str().unwrap_or("?").to_string(),
            verdict: if passed { "PASS" } else { "FAIL" }.into(),
            certs: format!(
                "{pass}/{} pass, {other} n/a, {skipped} skipped",
                verdicts.len()
            ),
            probes: format!("{matched}/{} as expected", probes.len()),
            time: format!("{:.1} ms", v["timingMs"].as_f64().unwrap_or(f64::NAN)),
        });
    }
    Ok((render(&rows), code))
}
