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
//! Parsing and single-scenario runs through the library API.

use std::path::PathBuf;

use ppa_core::ppa::{CertStatus, CheckKind};
use ppa_core::SetValuedMap;
use ppa_lab::run::{Outcome, Stage};
use ppa_lab::spec::Built;
use ppa_lab::{parse_scenario, run_scenario, ParseOptions, Stages};

fn bundled(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{name}.json"));
    std::fs::read_to_string(p).unwrap()
}

const MINIMAL: &str = r#"{
  "name": "minimal-quadratic",
  "operatorSpec": { "quadratic": { "q": [[1]], "b": [0] } },
  "solutionSpec": "auto",
  "modulusSpec": { "lipschitz": { "l": 1 } },
  "ppaConfig": { "gamma": 3, "start": [1], "maxIterations": 40 }
}"#;

fn strict() -> ParseOptions {
    ParseOptions::default()
}

#[test]
fn minimal_quadratic_parses() {
    let s = parse_scenario(MINIMAL, &strict()).unwrap();
    let cfg = s.ppa.as_ref().unwrap();
    assert_eq!(cfg.gamma, 3.0);
    assert_eq!(cfg.start.coords(), &[1.0]);
    assert!(matches!(s.operator, Some((_, Built::Function(_)))));
}

#[test]
fn negative_gamma_names_the_field() {
    let text = MINIMAL.replace("\"gamma\": 3", "\"gamma\": -1");
    let e = parse_scenario(&text, &strict()).unwrap_err();
    assert_eq!(e.path.as_deref(), Some("ppaConfig.gamma"));
}

#[test]
fn type_errors_carry_path_and_position() {
    let text = MINIMAL.replace("\"maxIterations\": 40", "\"maxIterations\": \"many\"");
    let e = parse_scenario(&text, &strict()).unwrap_err();
    assert_eq!(e.path.as_deref(), Some("ppaConfig.maxIterations"));
    assert_eq!(e.line, Some(6));
}

#[test]
fn unsupported_variant_is_rejected() {
    let text = MINIMAL.replace("quadratic", "cubicSpline");
    let e = parse_scenario(&text, &strict()).unwrap_err();
    assert_eq!(e.path.as_deref(), Some("operatorSpec"));
    assert!(e.message.contains("unknown variant"), "{e}");
}

#[test]
fn unknown_keys_strict_and_lenient() {
    let text = MINIMAL.replace("\"gamma\": 3", "\"gamma\": 3, \"gama\": 2");
    let e = parse_scenario(&text, &strict()).unwrap_err();
    assert_eq!(e.path.as_deref(), Some("ppaConfig.gama"));
    let lenient = ParseOptions {
        lenient: true,
        ..ParseOptions::default()
    };
    let s = parse_scenario(&text, &lenient).unwrap();
    assert_eq!(s.warnings.len(), 1);
    assert!(s.warnings[0].contains("ppaConfig.gama"));
}

#[test]
fn empty_name_is_rejected() {
    let text = MINIMAL.replace("minimal-quadratic", "");
    let e = parse_scenario(&text, &strict()).unwrap_err();
    assert_eq!(e.path.as_deref(), Some("name"));
}

#[test]
fn non_monotone_operator_cannot_be_iterated() {
    let text = MINIMAL.replace(
        r#"{ "quadratic": { "q": [[1]], "b": [0] } }"#,
        r#"{ "scaled": { "factor": -1, "of": { "identity": { "dim": 1 } } } }"#,
    );
    let e = parse_scenario(&text, &strict()).unwrap_err();
    assert!(
        e.path.as_deref().unwrap().starts_with("operatorSpec"),
        "{e}"
    );
}

#[test]
fn example_2_4_has_three_branches() {
    let s = parse_scenario(&bundled("example-2-4"), &strict()).unwrap();
    match &s.operator {
        Some((_, Built::Map(SetValuedMap::PiecewiseGraph1D(pieces)))) => {
            assert_eq!(pieces.len(), 3)
        }
        other => panic!("unexpected operator {other:?}"),
    }
}

#[test]
fn every_bundled_scenario_parses() {
    for name in [
        "example-2-4",
        "example-2-9",
        "quadratic-linear-rate",
        "abs-finite-convergence",
        "quartic-sublinear",
        "matrix-certificates",
        "remark-4-4-counterexample",
    ] {
        let s = parse_scenario(&bundled(name), &strict()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(s.name, name);
    }
}

#[test]
fn quadratic_run_certifies_linear_rate() {
    let s = parse_scenario(&bundled("quadratic-linear-rate"), &strict()).unwrap();
    let run = run_scenario(&s, Stages::ALL);
    let lr = run.report.rate_report.get(CheckKind::LinearRate).unwrap();
    assert_eq!(lr.status, CertStatus::Pass);
    assert!((lr.kappa.unwrap() - 2.0 / 3.0).abs() < 1e-15);
    assert!(run.report.passed, "{:?}", run.report.failures);
}

#[test]
fn example_2_4_metric_regularity_fails_with_witnesses() {
    let s = parse_scenario(&bundled("example-2-4"), &strict()).unwrap();
    let run = run_scenario(&s, Stages::ALL);
    let mr = run
        .report
        .probes
        .iter()
        .find(|p| p.kind == "metricRegularity")
        .unwrap();
    assert_eq!(mr.outcome, Outcome::Fails);
    assert!(mr.result["witness"].is_array());
    let ratios = mr.result["witnessRatios"].as_array().unwrap();
    assert_eq!(ratios.len(), 5);
    assert!(run.report.passed);
}

#[test]
fn zero_map_passes_vacuously() {
    let text = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/fixtures/zero-map.json"),
    )
    .unwrap();
    let s = parse_scenario(&text, &strict()).unwrap();
    let run = run_scenario(&s, Stages::ALL);
    assert!(run.report.passed);
    let t = run.trajectory.unwrap();
    assert!(t
        .records
        .iter()
        .all(|r| r.step_norm == 0.0 && r.distance == Some(0.0)));
    for c in &run.report.rate_report.verdicts {
        assert_eq!(c.status, CertStatus::Pass, "{:?}", c.check);
    }
    // Each of the four checks is either run or skipped with a reason.
    assert_eq!(
        run.report.rate_report.verdicts.len() + run.report.skipped_certifications.len(),
        4
    );
}

#[test]
fn probe_only_scenario_skips_ppa_with_reason() {
    let s = parse_scenario(&bundled("remark-4-4-counterexample"), &strict()).unwrap();
    let run = run_scenario(&s, Stages::ALL);
    assert!(matches!(run.report.trajectory, Stage::Skipped { .. }));
    assert_eq!(run.report.skipped_certifications.len(), 4);
    assert!(run
        .report
        .skipped_certifications
        .iter()
        .all(|c| !c.reason.is_empty()));
}

#[test]
fn seed_override_changes_samples_only() {
    let opts = ParseOptions {
        seed: Some(99),
        ..ParseOptions::default()
    };
    let s = parse_scenario(&bundled("example-2-9"), &opts).unwrap();
    assert_eq!(s.seed, 99);
    let run = run_scenario(&s, Stages::ALL);
    assert!(run.report.passed, "{:?}", run.report.failures);
}
