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
//! Executes a validated scenario: modulus, PPA run, certifications, probes.
//!
//! Stage errors are recorded and later stages still run when they do not
//! depend on the failed one.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use ppa_core::operators::{
    check_coercive, check_monotone, check_pair_monotone, matrix_r_lipschitz, MatrixCertificate,
};
use ppa_core::ppa::{
    certify_distance_bound, certify_linear_rate, certify_step_decay, certify_value_gap, run_ppa,
    sequence_rate_check, CertStatus, CheckKind, RateReport,
};
use ppa_core::regularity::{
    check_calm, check_closed_graph_at_zero, check_metric_regularity, check_metric_subregularity,
    estimate_modulus, fit_modulus, hoffman_consistency, ModulusEstimate, ModulusFit,
    RegularityProbe,
};
use ppa_core::{ModulusFunction, OperatorError, Point, PpaTrajectory, SetValuedMap};

use crate::matrices::{check_matrix, random_matrices};
use crate::scenario::{
    HoffmanModulus, ModulusPlan, PreparedCheck, PreparedProbe, Scenario, SCHEMA_VERSION,
};
use crate::spec::{Built, Expect};

/// Which stages to execute.
#[derive(Clone, Copy, Debug)]
pub struct Stages {
    pub modulus: bool,
    pub ppa: bool,
    pub probes: bool,
    /// Restrict probes to modulus estimates.
    pub modulus_probes_only: bool,
}

impl Stages {
    pub const ALL: Stages = Stages {
        modulus: true,
        ppa: true,
        probes: true,
        modulus_probes_only: false,
    };
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Stage<T> {
    Ok(T),
    Skipped { reason: String },
    Error { error: String },
}

impl<T> Stage<T> {
    pub fn ok(&self) -> Option<&T> {
        match self {
            Stage::Ok(t) => Some(t),
            _ => None,
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        Stage::Skipped {
            reason: reason.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModulusSummary {
    pub source: &'static str,
    pub modulus: ModulusFunction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<ModulusEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<ModulusFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<MatrixCertificate>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrajectorySummary {
    pub gamma: f64,
    pub iterations: usize,
    pub recorded: usize,
    pub initial_value: Option<f64>,
    pub final_iterate: Point,
    pub final_value: Option<f64>,
    pub final_distance: Option<f64>,
    pub step_sq_sum: f64,
    pub n_zero: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SkippedCheck {
    pub check: CheckKind,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
    Error,
}

impl Outcome {
    fn matches(self, e: Expect) -> bool {
        matches!(
            (self, e),
            (Outcome::Holds, Expect::Holds)
                | (Outcome::Fails, Expect::Fails)
                | (Outcome::Inconclusive, Expect::Inconclusive)
        )
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeEntry {
    pub label: String,
    pub kind: &'static str,
    pub expect: Expect,
    pub outcome: Outcome,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub schema_version: u32,
    pub scenario: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub seed: u64,
    pub operator: Option<String>,
    pub modulus: Stage<ModulusSummary>,
    pub trajectory: Stage<TrajectorySummary>,
    pub rate_report: RateReport,
    pub skipped_certifications: Vec<SkippedCheck>,
    pub probes: Vec<ProbeEntry>,
    pub warnings: Vec<String>,
    pub passed: bool,
    pub failures: Vec<String>,
    pub timing_ms: f64,
}

/// A tabulated `rho_hat(r)` series for the log-log chart.
#[derive(Clone, Debug)]
pub struct ModulusSeries {
    pub label: String,
    pub table: Vec<(f64, f64)>,
}

/// Everything a run produces; `report` is what gets serialized.
#[derive(Clone, Debug)]
pub struct ScenarioRun {
    pub report: RunReport,
    pub trajectory: Option<PpaTrajectory>,
    pub modulus_series: Vec<ModulusSeries>,
}

pub fn run_scenario(s: &Scenario, stages: Stages) -> ScenarioRun {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut series = Vec::new();

    let modulus = if !stages.modulus {
        Stage::skipped("stage not requested")
    } else {
        match &s.modulus {
            None => Stage::skipped("no modulusSpec"),
            Some(plan) => match resolve_modulus(s, plan) {
                Ok(m) => {
                    if let Some(est) = &m.estimate {
                        if let Some(t) = est.modulus.table() {
                            series.push(ModulusSeries {
                                label: "modulusSpec".into(),
                                table: t.to_vec(),
                            });
                        }
                    }
                    Stage::Ok(m)
                }
                Err(e) => {
                    failures.push(format!("modulus: {e}"));
                    Stage::Error { error: e }
                }
            },
        }
    };
    let modulus_fn = modulus.ok().map(|m| m.modulus.clone());

    let (trajectory, traj) = if !stages.ppa {
        (Stage::skipped("stage not requested"), None)
    } else {
        match (&s.ppa, s.problem()) {
            (Some(cfg), Some(problem)) => {
                let radius = modulus_fn.as_ref().map(|m| m.radius);
                match run_ppa(&problem, cfg, s.solution.as_ref(), radius) {
                    Ok(t) => (Stage::Ok(summarize(&t)), Some(t)),
                    Err(e) => {
                        failures.push(format!("ppa: {e}"));
                        (
                            Stage::Error {
                                error: e.to_string(),
                            },
                            None,
                        )
                    }
                }
            }
            _ => (Stage::skipped("no ppaConfig"), None),
        }
    };

    let (rate_report, skipped_certifications) =
        certify(s, traj.as_ref(), modulus_fn.as_ref(), &trajectory);
    for c in &rate_report.verdicts {
        if c.status == CertStatus::Fail {
            failures.push(format!("{:?}: {}", c.check, c.detail));
        }
    }

    let mut probes = Vec::new();
    if stages.probes {
        for p in &s.probes {
            if stages.modulus_probes_only && p.kind != "modulus" {
                continue;
            }
            let entry = run_probe(p, modulus_fn.as_ref(), &mut series);
            if !entry.matched {
                failures.push(format!(
                    "probe {}: expected {:?}, got {:?}",
                    entry.label, entry.expect, entry.outcome
                ));
            }
            probes.push(entry);
        }
    }

    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        scenario: s.name.clone(),
        description: s.description.clone(),
        seed: s.seed,
        operator: s.operator.as_ref().map(|(tag, _)| tag.clone()),
        modulus,
        trajectory,
        rate_report,
        skipped_certifications,
        probes,
        warnings: s.warnings.clone(),
        passed: failures.is_empty(),
        failures,
        timing_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    ScenarioRun {
        report,
        trajectory: traj,
        modulus_series: series,
    }
}

fn summarize(t: &PpaTrajectory) -> TrajectorySummary {
    TrajectorySummary {
        gamma: t.gamma,
        iterations: t.iterations,
        recorded: t.records.len(),
        initial_value: t.initial_value,
        final_iterate: t.final_iterate.clone(),
        final_value: t.final_value,
        final_distance: t.final_distance,
        step_sq_sum: t.step_sq_sum,
        n_zero: t.n_zero,
    }
}

fn resolve_modulus(s: &Scenario, plan: &ModulusPlan) -> Result<ModulusSummary, String> {
    match plan {
        ModulusPlan::Explicit(m) => Ok(ModulusSummary {
            source: "explicit",
            modulus: m.clone(),
            estimate: None,
            fit: None,
            fit_error: None,
            certificate: None,
        }),
        ModulusPlan::MatrixCertificate { matrix, radius } => {
            let cert = matrix_r_lipschitz(matrix).map_err(|e| e.to_string())?;
            let modulus =
                ModulusFunction::lipschitz(cert.lipschitz_l, *radius).map_err(|e| e.to_string())?;
            Ok(ModulusSummary {
                source: "matrixCertificate",
                modulus,
                estimate: None,
                fit: None,
                fit_error: None,
                certificate: Some(cert),
            })
        }
        ModulusPlan::Estimate {
            radii,
            sample_count,
            seed,
            fit,
        } => {
            let Some((_, built)) = &s.operator else {
                return Err("no operator".into());
            };
            let inverse = SetValuedMap::inverse(built.map());
            let zero = Point::zeros(inverse.input_dim());
            let top = *radii.last().ok_or("no radii")?;
            let probe = RegularityProbe::new(zero.clone(), top, *sample_count, *seed)
                .map_err(|e| e.to_string())?;
            let est =
                estimate_modulus(&inverse, &zero, radii, &probe).map_err(|e| e.to_string())?;
            if let Some(r) = est.not_r_continuous_at {
                return Err(format!(
                    "inverse is not R-continuous at 0: infinite excess at radius {r}"
                ));
            }
            let (modulus, fit_res, fit_error) = if *fit {
                match fit_modulus(&est.modulus) {
                    Ok(f) => (f.modulus.clone(), Some(f), None),
                    Err(e) => (est.modulus.clone(), None, Some(e.to_string())),
                }
            } else {
                (est.modulus.clone(), None, None)
            };
            Ok(ModulusSummary {
                source: "estimate",
                modulus,
                estimate: Some(est),
                fit: fit_res,
                fit_error,
                certificate: None,
            })
        }
    }
}

fn certify(
    s: &Scenario,
    traj: Option<&PpaTrajectory>,
    modulus: Option<&ModulusFunction>,
    stage: &Stage<TrajectorySummary>,
) -> (RateReport, Vec<SkippedCheck>) {
    let mut report = RateReport::default();
    let mut skipped = Vec::new();
    let mut skip = |check, reason: String| skipped.push(SkippedCheck { check, reason });
    let Some(traj) = traj else {
        let reason = match stage {
            Stage::Skipped { reason } => format!("no trajectory: {reason}"),
            Stage::Error { error } => format!("no trajectory: {error}"),
            Stage::Ok(_) => "no trajectory".into(),
        };
        for c in [
            CheckKind::StepDecay,
            CheckKind::ValueGap,
            CheckKind::DistanceBound,
            CheckKind::LinearRate,
        ] {
            skip(c, reason.clone());
        }
        return (report, skipped);
    };
    let function = match &s.operator {
        Some((_, Built::Function(f))) => Some(f),
        _ => None,
    };

    match (function, traj.initial_value) {
        (Some(f), Some(f0)) => report.push(certify_step_decay(traj, f0 - f.inf_value())),
        (Some(_), None) => skip(CheckKind::StepDecay, "f(x0) unavailable".into()),
        (None, _) => skip(
            CheckKind::StepDecay,
            "operator scenario has no objective".into(),
        ),
    }

    match (function, &s.solution) {
        (Some(_), Some(sol)) => report.push(certify_value_gap(traj, sol)),
        (None, _) => skip(
            CheckKind::ValueGap,
            "operator scenario has no objective".into(),
        ),
        (Some(_), None) => skip(CheckKind::ValueGap, no_solution(s)),
    }

    match (modulus, &s.solution) {
        (Some(m), Some(_)) => report.push(certify_distance_bound(traj, m)),
        (None, _) => skip(CheckKind::DistanceBound, "no modulus".into()),
        (_, None) => skip(CheckKind::DistanceBound, no_solution(s)),
    }

    match (modulus.and_then(|m| m.is_lipschitz()), &s.solution) {
        (Some(l), Some(_)) => report.push(certify_linear_rate(traj, l)),
        (None, _) => skip(
            CheckKind::LinearRate,
            match modulus {
                Some(_) => "modulus is not Lipschitz".into(),
                None => "no modulus".into(),
            },
        ),
        (_, None) => skip(CheckKind::LinearRate, no_solution(s)),
    }
    (report, skipped)
}

fn no_solution(s: &Scenario) -> String {
    s.solution_note
        .clone()
        .unwrap_or_else(|| "no solution set".into())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or_else(|e| json!({ "serializationError": e.to_string() }))
}

fn run_probe(
    p: &PreparedProbe,
    scenario_modulus: Option<&ModulusFunction>,
    series: &mut Vec<ModulusSeries>,
) -> ProbeEntry {
    let result: Result<(Outcome, Value), String> = match &p.check {
        PreparedCheck::Calm { map, probe } => check_calm(map, probe)
            .map(|v| (holds(v.holds), to_value(&v)))
            .map_err(|e| e.to_string()),
        PreparedCheck::MetricRegularity { map, probe } => check_metric_regularity(map, probe)
            .map(|v| (holds(v.holds), to_value(&v)))
            .map_err(|e| e.to_string()),
        PreparedCheck::MetricSubregularity { map, probe } => check_metric_subregularity(map, probe)
            .map(|v| (holds(v.holds), to_value(&v)))
            .map_err(|e| e.to_string()),
        PreparedCheck::Modulus {
            map,
            base,
            radii,
            probe,
            fit,
        } => estimate_modulus(map, base, radii, probe)
            .map_err(|e| e.to_string())
            .map(|est| {
                if let Some(t) = est.modulus.table() {
                    series.push(ModulusSeries {
                        label: p.label.clone(),
                        table: t.to_vec(),
                    });
                }
                let outcome = holds(est.not_r_continuous_at.is_none());
                let fitted = fit.then(|| fit_modulus(&est.modulus));
                let mut v = json!({ "estimate": to_value(&est) });
                match fitted {
                    Some(Ok(f)) => v["fit"] = to_value(&f),
                    Some(Err(e)) => v["fitError"] = json!(e.to_string()),
                    None => {}
                }
                (outcome, v)
            }),
        PreparedCheck::Monotone { map, samples } => match check_monotone(map, samples) {
            Ok(r) => Ok((holds(r.monotone), to_value(&r))),
            Err(OperatorError::NoData) => Ok((
                Outcome::Inconclusive,
                json!({"reason": "no usable sample pairs"}),
            )),
            Err(e) => Err(e.to_string()),
        },
        PreparedCheck::PairMonotone { pair, samples } => match check_pair_monotone(pair, samples) {
            Ok(r) => Ok((holds(r.strong), to_value(&r))),
            Err(OperatorError::NoData) => Ok((
                Outcome::Inconclusive,
                json!({"reason": "no usable sample pairs"}),
            )),
            Err(e) => Err(e.to_string()),
        },
        PreparedCheck::Coercive {
            map,
            gamma,
            samples,
        } => match check_coercive(map, samples) {
            Ok(r) => Ok((holds(r.gamma_estimate >= gamma - 1e-9), to_value(&r))),
            Err(OperatorError::NoData) => Ok((
                Outcome::Inconclusive,
                json!({"reason": "no usable sample pairs"}),
            )),
            Err(e) => Err(e.to_string()),
        },
        PreparedCheck::Hoffman {
            map,
            modulus,
            sigma,
            witnesses,
        } => {
            let m = match modulus {
                HoffmanModulus::Explicit(m) => Some(m),
                HoffmanModulus::Scenario => scenario_modulus,
            };
            match m {
                None => Err("no modulus: the scenario modulus stage produced none".into()),
                Some(m) => hoffman_consistency(map, m, *sigma, witnesses)
                    .map(|r| (holds(r.holds), to_value(&r)))
                    .map_err(|e| e.to_string()),
            }
        }
        PreparedCheck::MatrixCertificate {
            matrices,
            random_count,
            max_dim,
            trials,
            seed,
        } => {
            let mut all = matrices.clone();
            all.extend(random_matrices(*random_count, *max_dim, *seed));
            let mut checks = Vec::with_capacity(all.len());
            let mut err = None;
            for (i, a) in all.iter().enumerate() {
                match check_matrix(a, *trials, seed.wrapping_add(1 + i as u64)) {
                    Ok(c) => checks.push(c),
                    Err(e) => {
                        err = Some(format!("matrix {i}: {e}"));
                        break;
                    }
                }
            }
            match err {
                Some(e) => Err(e),
                None => {
                    let ok = checks.iter().all(|c| c.holds);
                    let worst = checks
                        .iter()
                        .map(|c| c.worst_slack)
                        .fold(f64::INFINITY, f64::min);
                    Ok((
                        holds(ok),
                        json!({
                            "matrices": checks.len(),
                            "worstSlack": worst,
                            "checks": to_value(&checks),
                        }),
                    ))
                }
            }
        }
        PreparedCheck::SequenceRate { values } => {
            let v = sequence_rate_check(values);
            let outcome = match v.status {
                CertStatus::Pass => Outcome::Holds,
                CertStatus::Fail => Outcome::Fails,
                CertStatus::Inconclusive | CertStatus::Inapplicable => Outcome::Inconclusive,
            };
            Ok((outcome, to_value(&v)))
        }
        PreparedCheck::ClosedGraph {
            map,
            sequences,
            tol,
        } => check_closed_graph_at_zero(map, sequences, *tol)
            .map(|r| (holds(r.consistent), to_value(&r)))
            .map_err(|e| e.to_string()),
    };
    let (outcome, result, error) = match result {
        Ok((o, v)) => (o, v, None),
        Err(e) => (Outcome::Error, Value::Null, Some(e)),
    };
    ProbeEntry {
        label: p.label.clone(),
        kind: p.kind,
        expect: p.expect,
        matched: outcome.matches(p.expect),
        outcome,
        error,
        result,
    }
}

fn holds(b: bool) -> Outcome {
    if b {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}
