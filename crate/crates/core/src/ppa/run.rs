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

use super::PpaError;
use crate::operators::{ConvexFunctionModel, SetValuedMap};
use crate::setgeom::{distance, Point, SolutionSet};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PpaConfig {
    pub gamma: f64,
    pub start: Point,
    pub max_iterations: usize,
    /// Stop once a step norm drops strictly below this.
    pub stop_step_norm: f64,
    /// Keep every `record_every`-th step (the last step is always kept).
    pub record_every: usize,
}

impl PpaConfig {
    pub fn new(gamma: f64, start: Point, max_iterations: usize) -> Result<Self, PpaError> {
        let cfg = Self {
            gamma,
            start,
            max_iterations,
            stop_step_norm: 0.0,
            record_every: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_stop_step_norm(mut self, tol: f64) -> Result<Self, PpaError> {
        self.stop_step_norm = tol;
        self.validate()?;
        Ok(self)
    }

    pub fn with_record_every(mut self, k: usize) -> Result<Self, PpaError> {
        self.record_every = k;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), PpaError> {
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(PpaError::InvalidConfig(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        if self.max_iterations == 0 {
            return Err(PpaError::InvalidConfig(
                "maxIterations must be at least 1".into(),
            ));
        }
        if !(self.stop_step_norm >= 0.0) {
            return Err(PpaError::InvalidConfig(
                "stopStepNorm must be nonnegative".into(),
            ));
        }
        if self.record_every == 0 {
            return Err(PpaError::InvalidConfig(
                "recordEvery must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// What the iteration is applied to.
#[derive(Clone, Debug)]
pub enum Problem {
    Operator(SetValuedMap),
    /// Iterates the resolvent of the subdifferential and records `f`.
    Function(ConvexFunctionModel),
}

impl Problem {
    pub fn operator(&self) -> SetValuedMap {
        match self {
            Problem::Operator(m) => m.clone(),
            Problem::Function(f) => f.subdifferential(),
        }
    }

    pub fn value(&self, x: &Point) -> Option<f64> {
        match self {
            Problem::Operator(_) => None,
            Problem::Function(f) => f.value(x).ok(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Problem::Operator(m) => m.input_dim(),
            Problem::Function(f) => f.dim(),
        }
    }
}

/// One recorded step `x_n -> x_{n+1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PpaRecord {
    pub n: usize,
    pub iterate: Point,
    /// `a_n = |x_{n+1} - x_n|`.
    pub step_norm: f64,
    pub value: Option<f64>,
    pub distance: Option<f64>,
    pub next_value: Option<f64>,
    pub next_distance: Option<f64>,
    /// `d(-(x_{n+1} - x_n)/gamma, A(x_{n+1}))`.
    pub inclusion_residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PpaTrajectory {
    pub records: Vec<PpaRecord>,
    pub final_iterate: Point,
    pub final_value: Option<f64>,
    pub final_distance: Option<f64>,
    pub iterations: usize,
    /// `sum a_n^2` over every step, recorded or not.
    pub step_sq_sum: f64,
    pub gamma: f64,
    #[serde(serialize_with = "crate::serde_ext::ext_real_opt")]
    pub modulus_radius: Option<f64>,
    /// First recorded `n` with `a_n / gamma <= sigma`.
    pub n_zero: Option<usize>,
    pub initial_value: Option<f64>,
}

impl PpaTrajectory {
    /// Iterates `x_0, ..., x_N` of the recorded steps followed by the final iterate.
    pub fn iterates(&self) -> Vec<&Point> {
        self.records
            .iter()
            .map(|r| &r.iterate)
            .chain([&self.final_iterate])
            .collect()
    }

    pub fn step_norms(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.step_norm).collect()
    }

    pub fn has_distances(&self) -> bool {
        !self.records.is_empty()
            && self
                .records
                .iter()
                .all(|r| r.distance.is_some() && r.next_distance.is_some())
    }

    pub fn has_values(&self) -> bool {
        !self.records.is_empty()
            && self
                .records
                .iter()
                .all(|r| r.value.is_some() && r.next_value.is_some())
    }

    /// Recomputes `n_0` for another modulus radius.
    pub fn n_zero_for(&self, sigma: f64) -> Option<usize> {
        if sigma == f64::INFINITY {
            return Some(self.records.first().map_or(0, |r| r.n));
        }
        self.records
            .iter()
            .find(|r| r.step_norm / self.gamma <= sigma)
            .map(|r| r.n)
    }
}

/// Runs `x_{n+1} = (I + gamma A)^{-1}(x_n)`.
pub fn run_ppa(
    problem: &Problem,
    config: &PpaConfig,
    solution: Option<&SolutionSet>,
    modulus_radius: Option<f64>,
) -> Result<PpaTrajectory, PpaError> {
    config.validate()?;
    if config.start.dim() != problem.dim() {
        return Err(PpaError::InvalidConfig(format!(
            "start has dimension {}, operator has {}",
            config.start.dim(),
            problem.dim()
        )));
    }
    let op = problem.operator();
    op.ensure_monotone().map_err(|source| PpaError::Operator {
        iteration: 0,
        source,
    })?;
    let dist = |x: &Point| -> Result<Option<f64>, PpaError> {
        solution
            .map(|s| distance(x, s.set()))
            .transpose()
            .map_err(PpaError::from)
    };
    let gamma = config.gamma;
    let mut x = config.start.clone();
    let mut fx = problem.value(&x);
    let mut dx = dist(&x)?;
    let initial_value = fx;
    let mut records = Vec::new();
    let mut sq_sum = 0.0;
    let mut iterations = 0;
    for n in 0..config.max_iterations {
        let next = op
            .resolvent_unchecked(gamma, &x)
            .map_err(|source| PpaError::Operator {
                iteration: n,
                source,
            })?;
        let step = next.distance_to(&x);
        sq_sum += step * step;
        let f_next = problem.value(&next);
        let d_next = dist(&next)?;
        iterations = n + 1;
        let last = n + 1 == config.max_iterations || step < config.stop_step_norm;
        if n % config.record_every == 0 || last {
            let residual = op
                .image(&next)
                .ok()
                .and_then(|img| distance(&(&(&x - &next) * (1.0 / gamma)), &img).ok());
            records.push(PpaRecord {
                n,
                iterate: x.clone(),
                step_norm: step,
                value: fx,
                distance: dx,
                next_value: f_next,
                next_distance: d_next,
                inclusion_residual: residual,
            });
        }
        x = next;
        fx = f_next;
        dx = d_next;
        if last {
            break;
        }
    }
    let mut traj = PpaTrajectory {
        records,
        final_iterate: x,
        final_value: fx,
        final_distance: dx,
        iterations,
        step_sq_sum: sq_sum,
        gamma,
        modulus_radius,
        n_zero: None,
        initial_value,
    };
    traj.n_zero = modulus_radius.and_then(|s| traj.n_zero_for(s));
    Ok(traj)
}
