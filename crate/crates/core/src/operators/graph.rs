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

//! Helpers for hand-built 1D graphs made of segments and axis-aligned rays.

use super::model::{GraphPiece, RayDirection};
use super::OperatorError;
use crate::setgeom::{Interval, ValueSet};

pub(crate) fn graph_image(pieces: &[GraphPiece], x: f64) -> Result<ValueSet, OperatorError> {
    let mut ivs = Vec::new();
    for piece in pieces {
        match *piece {
            GraphPiece::Segment { start, end } => {
                let (x0, x1) = (start.0.min(end.0), start.0.max(end.0));
                if x < x0 || x > x1 {
                    continue;
                }
                if start.0 == end.0 {
                    ivs.push(Interval::new(start.1.min(end.1), start.1.max(end.1)));
                } else if x == start.0 {
                    ivs.push(Interval::point(start.1));
                } else if x == end.0 {
                    ivs.push(Interval::point(end.1));
                } else {
                    let t = (x - start.0) / (end.0 - start.0);
                    ivs.push(Interval::point(start.1 + t * (end.1 - start.1)));
                }
            }
            GraphPiece::Ray {
                origin: (a, b),
                direction,
            } => match direction {
                RayDirection::Up if x == a => ivs.push(Interval::new(b, f64::INFINITY)),
                RayDirection::Down if x == a => ivs.push(Interval::new(f64::NEG_INFINITY, b)),
                RayDirection::Right if x >= a => ivs.push(Interval::point(b)),
                RayDirection::Left if x <= a => ivs.push(Interval::point(b)),
                _ => {}
            },
        }
    }
    Ok(ValueSet::from_intervals_1d(ivs)?)
}

fn vertices(pieces: &[GraphPiece]) -> Vec<(f64, f64)> {
    // Far points along each ray stand in for the ray's direction.
    let reach = 1.0
        + 10.0
            * pieces
                .iter()
                .flat_map(|p| match *p {
                    GraphPiece::Segment { start, end } => vec![start.0, start.1, end.0, end.1],
                    GraphPiece::Ray { origin, .. } => vec![origin.0, origin.1],
                })
                .fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut out = Vec::new();
    for piece in pieces {
        match *piece {
            GraphPiece::Segment { start, end } => {
                out.push(start);
                out.push(end);
            }
            GraphPiece::Ray { origin, direction } => {
                let (dx, dy) = direction.vector();
                out.push(origin);
                out.push((origin.0 + reach * dx, origin.1 + reach * dy));
            }
        }
    }
    out
}

/// Minimum of `(vx - z(t))(vy - y(t))` along a segment, `t` in `[0, 1]`.
fn min_against_segment(v: (f64, f64), start: (f64, f64), end: (f64, f64)) -> f64 {
    let (a, b) = (v.0 - start.0, start.0 - end.0);
    let (c, d) = (v.1 - start.1, start.1 - end.1);
    // (a + b t)(c + d t) = ac + (ad + bc) t + bd t^2
    let q = |t: f64| (a + b * t) * (c + d * t);
    let mut best = q(0.0).min(q(1.0));
    if b * d > 0.0 {
        let t = -(a * d + b * c) / (2.0 * b * d);
        if (0.0..=1.0).contains(&t) {
            best = best.min(q(t));
        }
    }
    best
}

/// Worst monotonicity margin of vertex `v` against every point of a ray.
fn min_against_ray(v: (f64, f64), origin: (f64, f64), direction: RayDirection) -> f64 {
    let (a, b) = origin;
    let (dz, dy) = (v.0 - a, v.1 - b);
    let violated = match direction {
        RayDirection::Up => dz > 0.0 || (dz < 0.0 && dy > 0.0),
        RayDirection::Down => dz < 0.0 || (dz > 0.0 && dy < 0.0),
        RayDirection::Right => dy > 0.0 || (dy < 0.0 && dz > 0.0),
        RayDirection::Left => dy < 0.0 || (dy > 0.0 && dz < 0.0),
    };
    if violated {
        -(dz.abs().max(dy.abs())).max(f64::MIN_POSITIVE)
    } else {
        dz * dy
    }
}

pub(crate) fn ensure_monotone_graph(pieces: &[GraphPiece]) -> Result<(), OperatorError> {
    let tol = -1e-12;
    for piece in pieces {
        if let GraphPiece::Segment { start, end } = *piece {
            if (end.0 - start.0) * (end.1 - start.1) < tol {
                return Err(OperatorError::NotMonotone(format!(
                    "decreasing segment from {start:?} to {end:?}"
                )));
            }
        }
    }
    let incompatible = |d1: RayDirection, d2: RayDirection| {
        use RayDirection::*;
        matches!(
            (d1, d2),
            (Up, Right) | (Right, Up) | (Down, Left) | (Left, Down)
        )
    };
    for (i, p) in pieces.iter().enumerate() {
        for q in &pieces[i + 1..] {
            if let (GraphPiece::Ray { direction: d1, .. }, GraphPiece::Ray { direction: d2, .. }) =
                (p, q)
            {
                if incompatible(*d1, *d2) {
                    return Err(OperatorError::NotMonotone(format!(
                        "rays {d1:?} and {d2:?} cross"
                    )));
                }
            }
        }
    }
    let verts = vertices(pieces);
    for &v in &verts {
        for piece in pieces {
            let margin = match *piece {
                GraphPiece::Segment { start, end } => min_against_segment(v, start, end),
                GraphPiece::Ray { origin, direction } => min_against_ray(v, origin, direction),
            };
            if margin < tol {
                return Err(OperatorError::NotMonotone(format!(
                    "graph point {v:?} violates monotonicity against {piece:?}"
                )));
            }
        }
    }
    Ok(())
}

/// Exact intersection of the graph with the line `z + gamma * y = x`.
pub(crate) fn graph_resolvent(
    pieces: &[GraphPiece],
    gamma: f64,
    x: f64,
) -> Result<f64, OperatorError> {
    let mut hits: Vec<f64> = Vec::new();
    for piece in pieces {
        match *piece {
            GraphPiece::Segment { start, end } => {
                let (dz, dy) = (end.0 - start.0, end.1 - start.1);
                let denom = dz + gamma * dy;
                let num = x - start.0 - gamma * start.1;
                if denom == 0.0 {
                    if num == 0.0 {
                        hits.push(start.0);
                        hits.push(end.0);
                    }
                    continue;
                }
                let t = num / denom;
                let eps = 1e-14;
                if (-eps..=1.0 + eps).contains(&t) {
                    hits.push(start.0 + t.clamp(0.0, 1.0) * dz);
                }
            }
            GraphPiece::Ray {
                origin: (a, b),
                direction,
            } => {
                let hit = match direction {
                    RayDirection::Up => (x >= a + gamma * b).then_some(a),
                    RayDirection::Down => (x <= a + gamma * b).then_some(a),
                    RayDirection::Right => {
                        let z = x - gamma * b;
                        (z >= a).then_some(z)
                    }
                    RayDirection::Left => {
                        let z = x - gamma * b;
                        (z <= a).then_some(z)
                    }
                };
                hits.extend(hit);
            }
        }
    }
    let Some(&first) = hits.first() else {
        return Err(OperatorError::NotMaximal(format!(
            "line z + {gamma}·y = {x} misses the graph"
        )));
    };
    let scale = 1.0 + x.abs();
    if hits.iter().any(|h| (h - first).abs() > 1e-12 * scale) {
        return Err(OperatorError::NotMonotone(format!(
            "line z + {gamma}·y = {x} meets the graph at several points"
        )));
    }
    Ok(first)
}
