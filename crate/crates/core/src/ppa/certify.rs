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

use serde::Serialize;

use super::run::PpaTrajectory;
use crate::regularity::ModulusFunction;
use crate::setgeom::SolutionSet;

/// Absolute and relative slack on every certified inequality.
pub const SLACK_ABS: f64 = 1e-9;
pub const SLACK_REL: f64 = 1e-9;
/// Shortest run for which tail signatures are evaluated.
pub const MIN_TAIL_POINTS: usize = 8;

fn holds(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + SLACK_ABS + SLACK_REL * lhs.abs().max(rhs.abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CheckKind {
    StepDecay,
    DistanceBound,
    ValueGap,
    LinearRate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CertStatus {
    Pass,
    Fail,
    Inapplicable,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundViolation {
    pub check: CheckKind,
    pub n: usize,
    pub lhs: f64,
    #[serde(serialize_with = "crate::serde_ext::ext_real")]
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certification {
    pub check: CheckKind,
    pub status: CertStatus,
    pub detail: String,
    pub violations: Vec<BoundViolation>,
    /// Smallest `rhs - lhs` over the checked steps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_contraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_decay_exponent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_sq_sum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_sq_bound: Option<f64>,
    /// Largest `n a_n^2` in the tail window.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_zero: Option<usize>,
}

impl Certification {
    fn new(check: CheckKind, status: CertStatus, detail: impl Into<String>) -> Self {
        Self {
            check,
            status,
            detail: detail.into(),
            violations: Vec::new(),
            worst_slack: None,
            kappa: None,
            observed_contraction: None,
            step_decay_exponent: None,
            step_sq_sum: None,
            step_sq_bound: None,
            tail_max: None,
            n_zero: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CertStatus::Pass
    }
}

/// Least-squares slope of `ln y` against `ln x` over positive pairs.
pub fn loglog_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = pts
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 3 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Tail window: the last half of the points, at least [`MIN_TAIL_POINTS`].
fn tail<T>(items: &[T]) -> Option<&[T]> {
    if items.len() < MIN_TAIL_POINTS {
        return None;
    }
    let len = (items.len() / 2).max(MIN_TAIL_POINTS);
    Some(&items[items.len() - len..])
}

/// `true` when the values in the later half of `window` stay below the
/// peak of the earlier half, or everything is zero.
pub(crate) fn tail_decreasing(window: &[f64]) -> bool {
    let mid = window.len() / 2;
    let first = window[..mid].iter().copied().fold(0.0, f64::max);
    let second = window[mid..].iter().copied().fold(0.0, f64::max);
    (first == 0.0 && second == 0.0) || second < first
}

/// `sum a_n^2 <= gamma (f(x_0) - inf f)` and the `n a_n^2 -> 0` signature.
pub fn certify_step_decay(traj: &PpaTrajectory, f0_gap: f64) -> Certification {
    let bound = traj.gamma * f0_gap;
    let mut cert = Certification::new(CheckKind::StepDecay, CertStatus::Pass, "");
    cert.step_sq_sum = Some(traj.step_sq_sum);
    cert.step_sq_bound = Some(bound);
    if !(f0_gap >= 0.0 && f0_gap.is_finite()) {
        cert.status = CertStatus::Inapplicable;
        cert.detail = format!("f(x0) - inf f = {f0_gap} is not a finite nonnegative gap");
        return cert;
    }
    let sum_ok = holds(traj.step_sq_sum, bound);
    cert.worst_slack = Some(bound - traj.step_sq_sum);
    if !sum_ok {
        cert.violations.push(BoundViolation {
            check: CheckKind::StepDecay,
            n: traj.iterations,
            lhs: traj.step_sq_sum,
            rhs: bound,
        });
    }
    let weighted: Vec<(f64, f64)> = traj
        .records
        .iter()
        .filter(|r| r.n >= 1)
        .map(|r| (r.n as f64, r.step_norm * r.step_norm))
        .collect();
    let Some(window) = tail(&weighted) else {
        cert.status = if sum_ok {
            CertStatus::Inconclusive
        } else {
            CertStatus::Fail
        };
        cert.detail = format!(
            "sum a_n^2 = {:.6e} vs bound {:.6e}; fewer than {MIN_TAIL_POINTS} recorded steps for the tail signature",
            traj.step_sq_sum, bound
        );
        return cert;
    };
    let n_a2: Vec<f64> = window.iter().map(|&(n, a2)| n * a2).collect();
    cert.tail_max = Some(n_a2.iter().copied().fold(0.0, f64::max));
    cert.step_decay_exponent = loglog_slope(window);
    let decreasing = tail_decreasing(&n_a2);
    cert.status = if sum_ok && decreasing {
        CertStatus::Pass
    } else {
        CertStatus::Fail
    };
    cert.detail = format!(
        "sum a_n^2 = {:.6e} vs bound {:.6e}; n a_n^2 tail {}",
        traj.step_sq_sum,
        bound,
        if decreasing {
            "decreasing"
        } else {
            "not decreasing"
        }
    );
    cert
}

/// `d(x_{n+1}, S) <= rho(a_n / gamma)` for every recorded `n >= n_0`.
pub fn certify_distance_bound(traj: &PpaTrajectory, modulus: &ModulusFunction) -> Certification {
    let mut cert = Certification::new(CheckKind::DistanceBound, CertStatus::Pass, "");
    if !traj.has_distances() {
        cert.status = CertStatus::Inconclusive;
        cert.detail = "no distances to the solution set recorded".into();
        return cert;
    }
    let Some(n0) = traj.n_zero_for(modulus.radius) else {
        cert.status = CertStatus::Inconclusive;
        cert.detail = format!(
            "no recorded step with a_n/gamma <= sigma = {}",
            modulus.radius
        );
        return cert;
    };
    cert.n_zero = Some(n0);
    let mut worst = f64::INFINITY;
    let mut checked = 0;
    for r in traj.records.iter().filter(|r| r.n >= n0) {
        let lhs = r.next_distance.expect("checked above");
        let rhs = modulus.eval(r.step_norm / traj.gamma);
        checked += 1;
        worst = worst.min(rhs - lhs);
        if !holds(lhs, rhs) {
            cert.violations.push(BoundViolation {
                check: CheckKind::DistanceBound,
                n: r.n,
                lhs,
                rhs,
            });
        }
    }
    cert.worst_slack = Some(worst);
    cert.status = if cert.violations.is_empty() {
        CertStatus::Pass
    } else {
        CertStatus::Fail
    };
    cert.detail = format!(
        "{checked} steps from n0 = {n0}, {} violations",
        cert.violations.len()
    );
    cert
}

/// `f(x_{n+1}) - f* <= (a_n / gamma) d(x_{n+1}, S)` for every recorded step.
pub fn certify_value_gap(traj: &PpaTrajectory, solution: &SolutionSet) -> Certification {
    let mut cert = Certification::new(CheckKind::ValueGap, CertStatus::Pass, "");
    let Some(fstar) = solution.optimal_value() else {
        cert.status = CertStatus::Inconclusive;
        cert.detail = "solution set has no optimal value".into();
        return cert;
    };
    if !traj.has_values() || !traj.has_distances() {
        cert.status = CertStatus::Inconclusive;
        cert.detail = "function values or distances missing".into();
        return cert;
    }
    let mut worst = f64::INFINITY;
    for r in &traj.records {
        let lhs = r.next_value.expect("checked") - fstar;
        let rhs = r.step_norm / traj.gamma * r.next_distance.expect("checked");
        worst = worst.min(rhs - lhs);
        if !holds(lhs, rhs) {
            cert.violations.push(BoundViolation {
                check: CheckKind::ValueGap,
                n: r.n,
                lhs,
                rhs,
            });
        }
    }
    cert.worst_slack = Some(worst);
    cert.status = if cert.violations.is_empty() {
        CertStatus::Pass
    } else {
        CertStatus::Fail
    };
    cert.detail = format!(
        "{} steps, {} violations",
        traj.records.len(),
        cert.violations.len()
    );
    cert
}

/// `d(x_{n+1}, S) <= kappa d(x_n, S)` with `kappa = 2L / gamma`.
pub fn certify_linear_rate(traj: &PpaTrajectory, lipschitz_l: f64) -> Certification {
    let kappa = 2.0 * lipschitz_l / traj.gamma;
    let mut cert = Certification::new(CheckKind::LinearRate, CertStatus::Pass, "");
    cert.kappa = Some(kappa);
    if !(kappa < 1.0) {
        cert.status = CertStatus::Inapplicable;
        cert.detail = format!(
            "γ ≤ 2L: inapplicable (gamma = {}, L = {lipschitz_l}, kappa = {kappa})",
            traj.gamma
        );
        return cert;
    }
    if !traj.has_distances() {
        cert.status = CertStatus::Inconclusive;
        cert.detail = "no distances to the solution set recorded".into();
        return cert;
    }
    let n0 = match traj.modulus_radius {
        None => Some(traj.records[0].n),
        Some(sigma) => traj.n_zero_for(sigma),
    };
    let Some(n0) = n0 else {
        cert.status = CertStatus::Inconclusive;
        cert.detail = "no recorded step inside the modulus radius".into();
        return cert;
    };
    cert.n_zero = Some(n0);
    let mut ratios = Vec::new();
    let mut worst = f64::INFINITY;
    for r in traj.records.iter().filter(|r| r.n >= n0) {
        let (d, dn) = (
            r.distance.expect("checked"),
            r.next_distance.expect("checked"),
        );
        let rhs = kappa * d;
        worst = worst.min(rhs - dn);
        if !holds(dn, rhs) {
            cert.violations.push(BoundViolation {
                check: CheckKind::LinearRate,
                n: r.n,
                lhs: dn,
                rhs,
            });
        }
        if d >= f64::MIN_POSITIVE && dn >= f64::MIN_POSITIVE {
            ratios.push(dn / d);
        }
    }
    let observed = match tail(&ratios) {
        Some(w) => w.iter().copied().fold(0.0, f64::max),
        None => ratios.iter().copied().fold(0.0, f64::max),
    };
    cert.observed_contraction = Some(observed);
    cert.worst_slack = Some(worst);
    cert.status = if cert.violations.is_empty() {
        CertStatus::Pass
    } else {
        CertStatus::Fail
    };
    cert.detail = format!(
        "kappa = {kappa:.6}, observed contraction {observed:.6}, {} violations",
        cert.violations.len()
    );
    cert
}

/// Aggregated certification of one run.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RateReport {
    pub kappa: Option<f64>,
    pub observed_contraction: Option<f64>,
    pub step_decay_exponent: Option<f64>,
    pub bound_violations: Vec<BoundViolation>,
    pub verdicts: Vec<Certification>,
}

impl RateReport {
    pub fn push(&mut self, cert: Certification) {
        if cert.kappa.is_some() {
            self.kappa = cert.kappa;
        }
        if cert.observed_contraction.is_some() {
            self.observed_contraction = cert.observed_contraction;
        }
        if cert.step_decay_exponent.is_some() {
            self.step_decay_exponent = cert.step_decay_exponent;
        }
        self.bound_violations
            .extend(cert.violations.iter().cloned());
        self.verdicts.push(cert);
    }

    pub fn get(&self, check: CheckKind) -> Option<&Certification> {
        self.verdicts.iter().find(|c| c.check == check)
    }

    pub fn any_failed(&self) -> bool {
        self.verdicts.iter().any(|c| c.status == CertStatus::Fail)
    }
}
