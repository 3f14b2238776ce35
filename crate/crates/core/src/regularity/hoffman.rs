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

use super::modulus::ModulusFunction;
use super::RegularityError;
use crate::operators::SetValuedMap;
use crate::setgeom::{distance, Point, TOL};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HoffmanEntry {
    pub x: Point,
    pub y: Point,
    /// `d(x, A^{-1}(0))`.
    pub distance: f64,
    /// `rho(sigma)`.
    #[serde(serialize_with = "crate::serde_ext::ext_real")]
    pub bound: f64,
    /// `bound - distance`; negative on a violation.
    #[serde(serialize_with = "crate::serde_ext::ext_real")]
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HoffmanReport {
    pub holds: bool,
    pub entries: Vec<HoffmanEntry>,
    /// Indices into `entries` that violate the bound.
    pub violations: Vec<usize>,
}

/// Checks `d(x, A^{-1}(0)) <= rho(sigma)` for graph points `(x, y)` with
/// `|y| <= sigma`. A violation refutes the modulus, not the implication.
pub fn hoffman_consistency(
    map: &SetValuedMap,
    modulus: &ModulusFunction,
    sigma: f64,
    witnesses: &[(Point, Point)],
) -> Result<HoffmanReport, RegularityError> {
    if !(sigma > 0.0) {
        return Err(RegularityError::Precondition(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    if !modulus.covers(sigma) {
        return Err(RegularityError::Precondition(format!(
            "modulus radius {} is below sigma = {sigma}",
            modulus.radius
        )));
    }
    let zero = Point::zeros(map.output_dim());
    let solutions = map.inverse_image(&zero)?;
    let bound = modulus.eval(sigma);
    let mut entries = Vec::with_capacity(witnesses.len());
    let mut violations = Vec::new();
    for (i, (x, y)) in witnesses.iter().enumerate() {
        if y.norm() > sigma + TOL {
            return Err(RegularityError::Precondition(format!(
                "|{y}| exceeds sigma = {sigma}"
            )));
        }
        if distance(y, &map.image(x)?)? > TOL {
            return Err(RegularityError::OffGraph(format!("({x}, {y})")));
        }
        let d = distance(x, &solutions)?;
        let slack = TOL + TOL * d.abs().max(bound.abs());
        if d > bound + slack {
            violations.push(i);
        }
        entries.push(HoffmanEntry {
            x: x.clone(),
            y: y.clone(),
            distance: d,
            bound,
            margin: bound - d,
        });
    }
    Ok(HoffmanReport {
        holds: violations.is_empty(),
        entries,
        violations,
    })
}

/// A sampled graph sequence `(x_n, y_n)` with the claimed limit of `y_n`.
#[derive(Clone, Debug)]
pub struct GraphSequence {
    pub xs: Vec<Point>,
    pub ys: Vec<Point>,
    pub limit: Point,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosedGraphReport {
    /// Diagnostic only: finitely many samples cannot prove closedness.
    pub consistent: bool,
    /// `d(limit, A(0))` per sequence.
    pub limit_distances: Vec<f64>,
    pub violations: Vec<usize>,
}

/// Checks that every limit of `y_n in A(x_n)` with `x_n -> 0` lies in `A(0)`.
/// `tol` bounds both the final `|x_n|` and `|y_n - limit|`.
pub fn check_closed_graph_at_zero(
    map: &SetValuedMap,
    sequences: &[GraphSequence],
    tol: f64,
) -> Result<ClosedGraphReport, RegularityError> {
    let zero = Point::zeros(map.input_dim());
    let at_zero = map.image(&zero)?;
    let mut limit_distances = Vec::new();
    let mut violations = Vec::new();
    for (i, seq) in sequences.iter().enumerate() {
        let (Some(xl), Some(yl)) = (seq.xs.last(), seq.ys.last()) else {
            return Err(RegularityError::NonConvergent(format!(
                "sequence {i} is empty"
            )));
        };
        if seq.xs.len() != seq.ys.len() {
            return Err(RegularityError::NonConvergent(format!(
                "sequence {i} has unequal lengths"
            )));
        }
        if xl.norm() > tol || yl.distance_to(&seq.limit) > tol {
            return Err(RegularityError::NonConvergent(format!(
                "sequence {i}: final |x| = {}, |y - limit| = {}",
                xl.norm(),
                yl.distance_to(&seq.limit)
            )));
        }
        for (x, y) in seq.xs.iter().zip(&seq.ys) {
            if distance(y, &map.image(x)?)? > TOL {
                return Err(RegularityError::OffGraph(format!(
                    "sequence {i} at ({x}, {y})"
                )));
            }
        }
        let d = distance(&seq.limit, &at_zero)?;
        if d > TOL {
            violations.push(i);
        }
        limit_distances.push(d);
    }
    Ok(ClosedGraphReport {
        consistent: violations.is_empty(),
        limit_distances,
        violations,
    })
}
