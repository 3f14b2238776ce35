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
//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so each criterion reports its own
//! measured values. The process exits nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ppa_core::operators::{
    check_monotone, check_pair_monotone, matrix_from_rows, sample_pairs, sign_inverse_graph,
    strong_pair_b, strong_pair_c, GraphPiece, OperatorPair, RayDirection,
};
use ppa_core::ppa::{
    run_ppa, sequence_rate_check, square_indexed_sequence, CertStatus, CheckKind, PpaTrajectory,
};
use ppa_core::regularity::{
    check_metric_regularity, estimate_modulus, fit_modulus, metric_regularity_ratio, Ratio,
    RegularityProbe,
};
use ppa_core::{ConvexFunctionModel, Point, PpaConfig, Problem, SetValuedMap};
use ppa_lab::matrices::{check_matrix, random_matrices, MATRIX_TOL};
use ppa_lab::{parse_scenario, run_scenario, ParseOptions, ScenarioRun, Stages};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scenarios_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn bundled_text(name: &str) -> String {
    std::fs::read_to_string(scenarios_dir().join(format!("{name}.json")))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn run_text(text: &str) -> Result<ScenarioRun, String> {
    let s = parse_scenario(text, &ParseOptions::default()).map_err(|e| e.to_string())?;
    Ok(run_scenario(&s, Stages::ALL))
}

fn catalog() -> Vec<(String, SetValuedMap)> {
    let mut out = Vec::new();
    for dim in 1..=3 {
        let mut add = |name: &str, m: SetValuedMap| out.push((format!("{name} (d={dim})"), m));
        add("zero", SetValuedMap::zero(dim).unwrap());
        add("identity", SetValuedMap::identity(dim).unwrap());
        add("sign", SetValuedMap::sign(dim).unwrap());
        add("abs", SetValuedMap::subgrad_abs_sum(dim).unwrap());
        add(
            "scaled sign",
            SetValuedMap::scaled(2.5, SetValuedMap::sign(dim).unwrap()).unwrap(),
        );
        add(
            "inverse sign",
            SetValuedMap::inverse(SetValuedMap::sign(dim).unwrap()),
        );
        add(
            "sign + identity",
            SetValuedMap::sum(vec![
                SetValuedMap::sign(dim).unwrap(),
                SetValuedMap::identity(dim).unwrap(),
            ])
            .unwrap(),
        );
        add(
            "constant",
            SetValuedMap::constant(Point::new(vec![0.5; dim]).unwrap()),
        );
        for p in [1, 3, 5, 7, 9] {
            add(
                &format!("power {p}"),
                SetValuedMap::power_gradient(p, dim).unwrap(),
            );
        }
        add(
            "inverse power 3",
            SetValuedMap::inverse(SetValuedMap::power_gradient(3, dim).unwrap()),
        );
        let mut m = DMatrix::from_fn(dim, dim, |r, c| if r == c { 1.0 + r as f64 } else { 0.0 });
        if dim >= 2 {
            m[(0, 1)] = 2.0;
            m[(1, 0)] = -2.0;
        }
        add("nonsymmetric linear", SetValuedMap::linear(m).unwrap());
        add(
            "x^4/4 gradient",
            ConvexFunctionModel::power_even(4, dim)
                .unwrap()
                .subdifferential(),
        );
    }
    out.push(("branch graph".into(), sign_inverse_graph()));
    out.push((
        "inverse branch graph".into(),
        SetValuedMap::inverse(sign_inverse_graph()),
    ));
    out.push((
        "staircase graph".into(),
        SetValuedMap::piecewise_graph(vec![
            GraphPiece::Ray {
                origin: (0.0, -1.0),
                direction: RayDirection::Left,
            },
            GraphPiece::Segment {
                start: (0.0, -1.0),
                end: (0.0, 1.0),
            },
            GraphPiece::Segment {
                start: (0.0, 1.0),
                end: (2.0, 2.0),
            },
            GraphPiece::Ray {
                origin: (2.0, 2.0),
                direction: RayDirection::Right,
            },
        ])
        .unwrap(),
    ));
    out.push((
        "power 3 + sign".into(),
        SetValuedMap::sum(vec![
            SetValuedMap::power_gradient(3, 1).unwrap(),
            SetValuedMap::sign(1).unwrap(),
        ])
        .unwrap(),
    ));
    out.push((
        "quadratic gradient".into(),
        ConvexFunctionModel::quadratic(
            matrix_from_rows(&[vec![2.0, 1.0], vec![1.0, 1.0]]).unwrap(),
            DVector::from_vec(vec![1.0, -1.0]),
        )
        .unwrap()
        .subdifferential(),
    ));
    out.push((
        "least-squares gradient".into(),
        ConvexFunctionModel::least_squares(
            matrix_from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 2.0]]).unwrap(),
            DVector::from_vec(vec![1.0, 0.0, -1.0]),
        )
        .unwrap()
        .subdifferential(),
    ));
    out
}

fn criterion_1() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let models = catalog();
    let mut worst = f64::INFINITY;
    for (name, map) in &models {
        let dim = map.input_dim();
        for _ in 0..1000 {
            let mut draw =
                || Point::new((0..dim).map(|_| rng.random_range(-5.0..=5.0)).collect()).unwrap();
            let (x, y) = (draw(), draw());
            let gamma = 10f64.powf(rng.random_range(-1.5..=1.5));
            let jx = map
                .resolvent(gamma, &x)
                .map_err(|e| format!("{name}: {e}"))?;
            let jy = map
                .resolvent(gamma, &y)
                .map_err(|e| format!("{name}: {e}"))?;
            let slack = x.distance_to(&y) - jx.distance_to(&jy);
            worst = worst.min(slack);
            ensure(slack >= -1e-9, || {
                format!(
                    "{name}: |J(x)-J(y)| exceeds |x-y| by {} at x={x}, y={y}, gamma={gamma}",
                    -slack
                )
            })?;
        }
    }
    Ok(format!(
        "{} models x 1000 triples, min |x-y| - |J(x)-J(y)| = {worst:.3e}",
        models.len()
    ))
}

fn criterion_2() -> Verdict {
    let text = bundled_text("quadratic-linear-rate");
    let run = run_text(&text)?;
    let t = run.trajectory.as_ref().ok_or("no trajectory")?;
    let c = run
        .report
        .rate_report
        .get(CheckKind::LinearRate)
        .ok_or("no linear-rate verdict")?;
    let kappa = c.kappa.ok_or("no kappa")?;
    let observed = c.observed_contraction.ok_or("no observed contraction")?;
    ensure(c.status == CertStatus::Pass, || {
        format!("status {:?}: {}", c.status, c.detail)
    })?;
    ensure((kappa - 2.0 / 3.0).abs() < 1e-12, || {
        format!("kappa = {kappa}")
    })?;
    ensure((observed - 0.25).abs() <= 1e-9, || {
        format!("observed {observed}")
    })?;
    ensure(t.records.len() >= 30, || {
        format!("{} iterations", t.records.len())
    })?;

    let small = run_text(&text.replace("\"gamma\": 3", "\"gamma\": 1.5"))?;
    let c2 = small
        .report
        .rate_report
        .get(CheckKind::LinearRate)
        .ok_or("no linear-rate verdict at gamma = 1.5")?;
    ensure(c2.status == CertStatus::Inapplicable, || {
        format!("gamma = 1.5 gave {:?}", c2.status)
    })?;
    ensure(c2.detail.contains("γ ≤ 2L: inapplicable"), || {
        format!("gamma = 1.5 detail: {}", c2.detail)
    })?;
    Ok(format!(
        "kappa = {kappa}, observed contraction = {observed} over {} iterations; gamma = 1.5: \"{}\"",
        t.records.len(),
        c2.detail
    ))
}

fn criterion_3() -> Verdict {
    let run = run_text(&bundled_text("quartic-sublinear"))?;
    let t = run.trajectory.as_ref().ok_or("no trajectory")?;
    ensure(t.iterations == 200, || {
        format!("{} iterations", t.iterations)
    })?;
    let r = &run.report.rate_report;
    let d = r.get(CheckKind::DistanceBound).ok_or("no distance bound")?;
    ensure(
        d.status == CertStatus::Pass && d.violations.is_empty(),
        || format!("{} violations: {}", d.violations.len(), d.detail),
    )?;
    // Independent recomputation of d(x_{n+1}, S) <= (a_n / gamma)^{1/3}.
    for rec in &t.records {
        let lhs = rec.next_distance.ok_or("missing distance")?;
        let rhs = (rec.step_norm / t.gamma).powf(1.0 / 3.0);
        ensure(lhs <= rhs + 1e-9 + 1e-9 * rhs, || {
            format!("n = {}: {lhs} > {rhs}", rec.n)
        })?;
    }
    let s = r.get(CheckKind::StepDecay).ok_or("no step decay")?;
    let exponent = s.step_decay_exponent.ok_or("no exponent")?;
    ensure(exponent <= -0.9, || {
        format!("step-decay exponent {exponent}")
    })?;
    Ok(format!(
        "200 iterations, 0 violations, worst slack {:.3e}, fitted exponent of a_n^2 = {exponent:.4}",
        d.worst_slack.unwrap_or(f64::NAN)
    ))
}

fn step_sum_check(
    name: &str,
    f: ConvexFunctionModel,
    gamma: f64,
    x0: f64,
    iters: usize,
) -> Result<String, String> {
    let cfg = PpaConfig::new(gamma, Point::scalar(x0), iters).map_err(|e| e.to_string())?;
    let f0 = f.value(&Point::scalar(x0)).map_err(|e| e.to_string())?;
    let gap = f0 - f.inf_value();
    let t: PpaTrajectory =
        run_ppa(&Problem::Function(f), &cfg, None, None).map_err(|e| e.to_string())?;
    let direct: f64 = t.records.iter().map(|r| r.step_norm * r.step_norm).sum();
    let bound = gamma * gap;
    ensure(
        t.step_sq_sum <= bound + 1e-9 && direct <= bound + 1e-9,
        || format!("{name}: sum a_n^2 = {} > {bound}", t.step_sq_sum),
    )?;
    Ok(format!("{name} {:.6} <= {bound:.6}", t.step_sq_sum))
}

fn criterion_4() -> Verdict {
    let parts = [
        step_sum_check(
            "quadratic",
            ConvexFunctionModel::quadratic(
                DMatrix::from_element(1, 1, 1.0),
                DVector::from_element(1, 0.0),
            )
            .unwrap(),
            3.0,
            1.0,
            40,
        )?,
        step_sum_check(
            "abs",
            ConvexFunctionModel::abs_sum(1).unwrap(),
            1.0,
            2.5,
            10,
        )?,
        step_sum_check(
            "quartic",
            ConvexFunctionModel::power_even(4, 1).unwrap(),
            1.0,
            1.0,
            200,
        )?,
    ];
    for name in [
        "quadratic-linear-rate",
        "abs-finite-convergence",
        "quartic-sublinear",
    ] {
        let run = run_text(&bundled_text(name))?;
        let c = run
            .report
            .rate_report
            .get(CheckKind::StepDecay)
            .ok_or_else(|| format!("{name}: no step-decay verdict"))?;
        ensure(c.status == CertStatus::Pass, || {
            format!("{name}: {}", c.detail)
        })?;
    }
    Ok(parts.join("; "))
}

fn criterion_5() -> Verdict {
    let a = sign_inverse_graph();
    let x = Point::scalar(1.0);
    let mut min_excess = f64::INFINITY;
    for n in 1..=10_000u32 {
        let y = Point::scalar(-1.0 / n as f64);
        let r = match metric_regularity_ratio(&a, &x, &y).map_err(|e| e.to_string())? {
            Ratio::Value(v) => v,
            Ratio::Skipped => return Err(format!("n = {n}: ratio skipped")),
        };
        // -1/n is not representable; the ratio at the stored y is exactly
        // 2/|y|, which can sit one rounding below 2n.
        let exact_at_y = 2.0 / y.coords()[0].abs();
        let target = 2.0 * n as f64;
        min_excess = min_excess.min(r - target);
        ensure(r == exact_at_y, || {
            format!("n = {n}: ratio {r} != 2/|y| = {exact_at_y}")
        })?;
        ensure(r >= target * (1.0 - 4.0 * f64::EPSILON), || {
            format!("n = {n}: ratio {r} < {target}")
        })?;
    }
    let witnesses: Vec<(Point, Point)> = [1.0, 10.0, 100.0, 1e3, 1e4]
        .iter()
        .map(|&n| (Point::scalar(1.0), Point::scalar(-1.0 / n)))
        .collect();
    let probe = RegularityProbe::new(x.clone(), 0.5, 400, 1)
        .and_then(|p| p.with_image_point(Point::scalar(0.0), 0.5))
        .map_err(|e| e.to_string())?
        .with_witnesses(witnesses);
    let v = check_metric_regularity(&a, &probe).map_err(|e| e.to_string())?;
    ensure(!v.holds && v.witness.is_some(), || {
        format!("metric regularity verdict holds = {}", v.holds)
    })?;

    let inv = SetValuedMap::inverse(sign_inverse_graph());
    let radii = [1e-3, 1e-2, 1e-1, 1.0];
    let zero = Point::scalar(0.0);
    let est = estimate_modulus(
        &inv,
        &zero,
        &radii,
        &RegularityProbe::new(zero.clone(), 1.0, 200, 3).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let table = est.modulus.table().ok_or("no table")?;
    ensure(table.iter().all(|&(_, v)| v == 0.0), || {
        format!("rho_hat not identically zero: {table:?}")
    })?;
    Ok(format!(
        "ratios = 2/|y| >= 2n(1 - 4eps) for n = 1..1e4 (min ratio - 2n = {min_excess:.3e}); verdict fails with constant {:e}, witness ratios {:?}; rho_hat = 0 on {radii:?}",
        v.constant, v.witness_ratios
    ))
}

fn criterion_6() -> Verdict {
    let samples = sample_pairs(2, 5.0, 1000, 42);
    let pair =
        OperatorPair::new(strong_pair_b(), strong_pair_c(), 6.0).map_err(|e| e.to_string())?;
    let r = check_pair_monotone(&pair, &samples).map_err(|e| e.to_string())?;
    ensure(r.pairs_used == 1000, || {
        format!("{} pairs used", r.pairs_used)
    })?;
    ensure(r.modulus_estimate >= 6.0 - 1e-6, || {
        format!("pair margin {}", r.modulus_estimate)
    })?;
    let b = check_monotone(&strong_pair_b(), &samples).map_err(|e| e.to_string())?;
    ensure(!b.monotone && b.witness.is_some(), || {
        "B reported monotone".into()
    })?;
    let (wx, wy) = b.witness.clone().unwrap();
    Ok(format!(
        "pair margin {:.6} over 1000 pairs; B non-monotone, margin {:.4} at ({wx}, {wy})",
        r.modulus_estimate, b.worst_margin
    ))
}

fn criterion_7() -> Verdict {
    let mats = random_matrices(100, 4, 31337);
    let mut deficient = 0;
    let mut worst = f64::INFINITY;
    let mut residual = 0.0_f64;
    for (i, a) in mats.iter().enumerate() {
        let c = check_matrix(a, 20, 1000 + i as u64).map_err(|e| format!("matrix {i}: {e}"))?;
        if c.certificate.rank < a.nrows().min(a.ncols()) {
            deficient += 1;
        }
        worst = worst.min(c.worst_slack);
        residual = residual.max(c.max_residual);
        ensure(c.holds, || {
            format!(
                "matrix {i} ({}x{}): slack {}, residual {}",
                c.rows, c.cols, c.worst_slack, c.max_residual
            )
        })?;
    }
    ensure(deficient > 0, || "no rank-deficient matrix drawn".into())?;
    Ok(format!(
        "100 matrices ({deficient} rank-deficient) x 20 trials: min L|Ax-y|-|x-xbar| = {worst:.3e}, max |A xbar - y| = {residual:.3e} (tol {MATRIX_TOL:e})"
    ))
}

fn criterion_8() -> Verdict {
    let a: Vec<f64> = (1..=4096).map(|n| 1.0 / (n as f64 * n as f64)).collect();
    let good = sequence_rate_check(&a);
    ensure(good.status == CertStatus::Pass, || {
        format!("1/n^2: {}", good.detail)
    })?;
    let bad = sequence_rate_check(&square_indexed_sequence(4096));
    ensure(!bad.failed_hypotheses.is_empty(), || {
        "square-indexed sequence: no failed hypothesis".into()
    })?;
    ensure(bad.tail_sup == 1.0, || format!("tail sup {}", bad.tail_sup))?;
    Ok(format!(
        "1/n^2 passes (tail sup {:.3e}); square-indexed: failed {:?}, tail sup of n a_n = {}",
        good.tail_sup, bad.failed_hypotheses, bad.tail_sup
    ))
}

fn criterion_9() -> Verdict {
    let zero = Point::scalar(0.0);
    let probe = RegularityProbe::new(zero.clone(), 1.0, 200, 5).map_err(|e| e.to_string())?;
    let radii = [1e-4, 1e-3, 1e-2, 1e-1, 1.0];
    let cbrt = SetValuedMap::inverse(SetValuedMap::power_gradient(3, 1).unwrap());
    let est = estimate_modulus(&cbrt, &zero, &radii, &probe).map_err(|e| e.to_string())?;
    let fit = fit_modulus(&est.modulus).map_err(|e| e.to_string())?;
    ensure((fit.exponent - 1.0 / 3.0).abs() <= 0.05, || {
        format!("exponent {}", fit.exponent)
    })?;
    ensure(fit.modulus.is_lipschitz().is_none(), || {
        "cube root fitted as Lipschitz".into()
    })?;

    let id = SetValuedMap::identity(1).unwrap();
    let est = estimate_modulus(&id, &zero, &radii, &probe).map_err(|e| e.to_string())?;
    let fit_id = fit_modulus(&est.modulus).map_err(|e| e.to_string())?;
    let l = fit_id
        .modulus
        .is_lipschitz()
        .ok_or("identity not fitted as Lipschitz")?;
    ensure((l - 1.0).abs() <= 0.05, || {
        format!("Lipschitz constant {l}")
    })?;
    Ok(format!(
        "inverse cube: exponent {:.6}; identity: Lipschitz {l}",
        fit.exponent
    ))
}

fn lab(out: &Path, files: &[PathBuf]) -> Result<i32, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_ppa-lab"))
        .env_remove("PPA_LAB_SEED")
        .arg("run")
        .arg("--out")
        .arg(out)
        .args(files)
        .output()
        .map_err(|e| e.to_string())?
        .status;
    status.code().ok_or_else(|| "terminated by signal".into())
}

fn criterion_10() -> Verdict {
    let mut batch: Vec<PathBuf> = std::fs::read_dir(scenarios_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    batch.sort();
    ensure(batch.len() == 7, || {
        format!("{} bundled scenarios", batch.len())
    })?;
    let fixtures = scenarios_dir().join("fixtures");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;

    let first = tmp.path().join("first");
    let code = lab(&first, &batch)?;
    ensure(code == 0, || format!("bundled batch exited {code}"))?;

    let mut with_bad = batch.clone();
    with_bad.push(fixtures.join("bad-modulus.json"));
    let code = lab(&tmp.path().join("bad"), &with_bad)?;
    ensure(code == 1, || {
        format!("batch with bad modulus exited {code}")
    })?;

    let mut with_malformed = batch.clone();
    with_malformed.push(fixtures.join("malformed.json"));
    let malformed_out = tmp.path().join("malformed");
    let code = lab(&malformed_out, &with_malformed)?;
    ensure(code == 2, || {
        format!("batch with malformed file exited {code}")
    })?;
    ensure(!malformed_out.join("malformed").exists(), || {
        "outputs written for the malformed file".into()
    })?;

    let second = tmp.path().join("second");
    let code = lab(&second, &batch)?;
    ensure(code == 0, || format!("rerun exited {code}"))?;
    let mut compared = 0;
    for entry in std::fs::read_dir(&first).map_err(|e| e.to_string())? {
        let dir = entry.map_err(|e| e.to_string())?.path();
        let a = dir.join("trajectory.csv");
        if !a.exists() {
            continue;
        }
        let b = second.join(dir.file_name().unwrap()).join("trajectory.csv");
        let (ba, bb) = (
            std::fs::read(&a).map_err(|e| e.to_string())?,
            std::fs::read(&b).map_err(|e| e.to_string())?,
        );
        ensure(ba == bb, || format!("{} differs on rerun", a.display()))?;
        compared += 1;
    }
    ensure(compared > 0, || "no CSV produced".into())?;
    Ok(format!(
        "bundled batch -> 0, + bad modulus -> 1, + malformed -> 2; {compared} CSVs byte-identical on rerun"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("resolvent nonexpansiveness", criterion_1),
        ("linear rate on the quadratic", criterion_2),
        ("sublinear distance bound on the quartic", criterion_3),
        ("sum of squared steps bound", criterion_4),
        ("branch map is not metrically regular", criterion_5),
        ("strongly monotone pair of non-monotone maps", criterion_6),
        ("matrix R-Lipschitz certificate", criterion_7),
        ("n a_n -> 0 and its counterexample", criterion_8),
        ("modulus fit accuracy", criterion_9),
        ("CLI exit codes and determinism", criterion_10),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
