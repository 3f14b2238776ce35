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

//! Test-side oracles, independent of the library's exact algorithms.

#![allow(dead_code)]

use nalgebra::DMatrix;
use ppa_core::operators::{sign_inverse_graph, GraphPiece, RayDirection, SetValuedMap};

pub const GRID_STEP: f64 = 1e-3;

/// Grid points of `[lo, hi]` with spacing at most `GRID_STEP`, endpoints included.
pub fn grid(lo: f64, hi: f64) -> Vec<f64> {
    let n = ((hi - lo) / GRID_STEP).ceil().max(1.0) as usize;
    (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect()
}

/// Distance from `x` to a union of closed intervals, interval by interval.
pub fn grid_distance(x: f64, ivs: &[(f64, f64)]) -> f64 {
    ivs.iter()
        .map(|&(lo, hi)| {
            if x < lo {
                lo - x
            } else if x > hi {
                x - hi
            } else {
                0.0
            }
        })
        .fold(f64::INFINITY, f64::min)
}

/// `sup_{c in C} d(c, D)` over grid points of `C`.
pub fn grid_excess(c: &[(f64, f64)], d: &[(f64, f64)]) -> f64 {
    c.iter()
        .flat_map(|&(lo, hi)| grid(lo, hi))
        .map(|t| grid_distance(t, d))
        .fold(0.0, f64::max)
}

/// Plain bisection for the nondecreasing scalar `f` on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Moore-Penrose pseudo-inverse through an independent SVD call.
pub fn pinv(a: &DMatrix<f64>) -> DMatrix<f64> {
    a.clone().pseudo_inverse(1e-10).expect("svd converges")
}

/// Monotone models with closed-form or well-defined resolvents, by dimension.
pub fn monotone_catalog(dim: usize) -> Vec<(String, SetValuedMap)> {
    let mut out: Vec<(String, SetValuedMap)> = vec![
        ("zero".into(), SetValuedMap::zero(dim).unwrap()),
        ("identity".into(), SetValuedMap::identity(dim).unwrap()),
        ("sign".into(), SetValuedMap::sign(dim).unwrap()),
        ("abs".into(), SetValuedMap::subgrad_abs_sum(dim).unwrap()),
        (
            "scaled sign".into(),
            SetValuedMap::scaled(2.5, SetValuedMap::sign(dim).unwrap()).unwrap(),
        ),
        (
            "inverse sign".into(),
            SetValuedMap::inverse(SetValuedMap::sign(dim).unwrap()),
        ),
        (
            "sign + identity".into(),
            SetValuedMap::sum(vec![
                SetValuedMap::sign(dim).unwrap(),
                SetValuedMap::identity(dim).unwrap(),
            ])
            .unwrap(),
        ),
        (
            "constant".into(),
            SetValuedMap::constant(ppa_core::Point::new(vec![0.5; dim]).unwrap()),
        ),
    ];
    for p in [1, 3, 5, 7, 9] {
        out.push((
            format!("power {p}"),
            SetValuedMap::power_gradient(p, dim).unwrap(),
        ));
    }
    out.push((
        "inverse power 3".into(),
        SetValuedMap::inverse(SetValuedMap::power_gradient(3, dim).unwrap()),
    ));
    // Rotation plus a PSD diagonal: monotone but not symmetric.
    let mut m = DMatrix::from_fn(dim, dim, |r, c| if r == c { 1.0 + r as f64 } else { 0.0 });
    if dim >= 2 {
        m[(0, 1)] = 2.0;
        m[(1, 0)] = -2.0;
    }
    out.push(("linear".into(), SetValuedMap::linear(m).unwrap()));
    if dim == 1 {
        out.push(("branch graph".into(), sign_inverse_graph()));
        out.push((
            "inverse branch graph".into(),
            SetValuedMap::inverse(sign_inverse_graph()),
        ));
        out.push((
            "staircase".into(),
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
    }
    out
}
