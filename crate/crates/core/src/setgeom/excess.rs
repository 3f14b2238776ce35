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

//! One-sided excess `ex(C, D) = sup_{c in C} d(c, D)` and set gaps.
//!
//! Every path is exact for the supported variants:
//!
//! * 1D sets are reduced to sorted extended-real intervals. The distance to a
//!   union of intervals is piecewise linear, so its supremum over an interval
//!   is attained at an endpoint or at the midpoint of a gap of `D`.
//! * Box over box is separable per coordinate.
//! * A bounded box over a finite point set is handled by enumerating, on
//!   every face of the box, the points equidistant from `face_dim + 1` of the
//!   targets (the candidate local maxima of the lower envelope of distances).

use nalgebra::{DMatrix, DVector};

use super::{distance, GeomError, Interval, Point, ValueSet};

/// Excess with the two ways of being infinite kept apart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Excess {
    Finite(f64),
    /// `D` is empty: `ex(C, ∅) = +inf`.
    EmptyTarget,
    /// `C` is unbounded in a direction `D` does not follow.
    Unbounded,
}

impl Excess {
    pub fn value(self) -> f64 {
        match self {
            Excess::Finite(v) => v,
            Excess::EmptyTarget | Excess::Unbounded => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Excess::Finite(_))
    }
}

/// `ex(c, d)` as a nonnegative real or `+inf`.
pub fn excess(c: &ValueSet, d: &ValueSet) -> Result<f64, GeomError> {
    excess_detailed(c, d).map(Excess::value)
}

pub fn excess_detailed(c: &ValueSet, d: &ValueSet) -> Result<Excess, GeomError> {
    if d.is_empty() {
        return Ok(Excess::EmptyTarget);
    }
    if c.is_empty() {
        return Ok(Excess::Finite(0.0));
    }
    let dim = c.dim().unwrap_or(0);
    d.check_dim(dim)?;

    if dim == 1 {
        let source = c.to_intervals_1d().unwrap_or_default();
        let target = d.to_intervals_1d().unwrap_or_default();
        return Ok(excess_1d(&source, &target));
    }

    match c {
        ValueSet::Singleton(p) => Ok(Excess::Finite(distance(p, d)?)),
        ValueSet::FinitePoints(ps) => {
            let mut worst: f64 = 0.0;
            for p in ps {
                worst = worst.max(distance(p, d)?);
            }
            Ok(Excess::Finite(worst))
        }
        ValueSet::Box { lo, hi } => match d {
            ValueSet::Singleton(q) => Ok(box_over_box(lo, hi, q.coords(), q.coords())),
            ValueSet::Box { lo: dlo, hi: dhi } => Ok(box_over_box(lo, hi, dlo, dhi)),
            ValueSet::FinitePoints(qs) => {
                if !c.is_bounded() {
                    return Ok(Excess::Unbounded);
                }
                Ok(Excess::Finite(box_over_points(lo, hi, qs)))
            }
            _ => unreachable!("1D-only variants in dimension {dim}"),
        },
        _ => unreachable!("1D-only variants in dimension {dim}"),
    }
}

fn excess_1d(source: &[Interval], target: &[Interval]) -> Excess {
    let dist = |x: f64| {
        target
            .iter()
            .map(|iv| iv.distance(x))
            .fold(f64::INFINITY, f64::min)
    };
    let first_lo = target[0].lo;
    let last_hi = target[target.len() - 1].hi;
    let mut worst: f64 = 0.0;
    for iv in source {
        if (iv.lo == f64::NEG_INFINITY && first_lo > f64::NEG_INFINITY)
            || (iv.hi == f64::INFINITY && last_hi < f64::INFINITY)
        {
            return Excess::Unbounded;
        }
        for end in [iv.lo, iv.hi] {
            if end.is_finite() {
                worst = worst.max(dist(end));
            }
        }
        for gap in target.windows(2) {
            let mid = 0.5 * (gap[0].hi + gap[1].lo);
            if iv.contains(mid, 0.0) {
                worst = worst.max(dist(mid));
            }
        }
    }
    Excess::Finite(worst)
}

fn box_over_box(lo: &[f64], hi: &[f64], dlo: &[f64], dhi: &[f64]) -> Excess {
    let mut total = 0.0;
    for i in 0..lo.len() {
        let target = Interval::new(dlo[i], dhi[i]);
        let at = |x: f64| -> f64 {
            if x == f64::NEG_INFINITY {
                if target.lo == f64::NEG_INFINITY {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else if x == f64::INFINITY {
                if target.hi == f64::INFINITY {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                target.distance(x)
            }
        };
        let m = at(lo[i]).max(at(hi[i]));
        if m.is_infinite() {
            return Excess::Unbounded;
        }
        total += m * m;
    }
    Excess::Finite(total.sqrt())
}

fn box_over_points(lo: &[f64], hi: &[f64], targets: &[Point]) -> f64 {
    let dim = lo.len();
    let nearest = |z: &[f64]| {
        targets
            .iter()
            .map(|q| {
                q.coords()
                    .iter()
                    .zip(z)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    };

    let mut worst: f64 = 0.0;
    // Each coordinate is pinned to lo (0), pinned to hi (1) or free (2).
    let faces = 3usize.pow(dim as u32);
    for code in 0..faces {
        let mut state = Vec::with_capacity(dim);
        let mut c = code;
        for _ in 0..dim {
            state.push(c % 3);
            c /= 3;
        }
        if state
            .iter()
            .enumerate()
            .any(|(i, &s)| (s == 1 || s == 2) && hi[i] == lo[i])
        {
            continue;
        }
        let free: Vec<usize> = (0..dim).filter(|&i| state[i] == 2).collect();
        let mut base: Vec<f64> = (0..dim)
            .map(|i| match state[i] {
                0 => lo[i],
                1 => hi[i],
                _ => 0.0,
            })
            .collect();
        if free.is_empty() {
            worst = worst.max(nearest(&base));
            continue;
        }
        let f = free.len();
        if targets.len() < f + 1 {
            continue;
        }
        for subset in combinations(targets.len(), f + 1) {
            let p0 = targets[subset[0]].coords();
            let mut m = DMatrix::<f64>::zeros(f, f);
            let mut rhs = DVector::<f64>::zeros(f);
            for (row, &j) in subset[1..].iter().enumerate() {
                let pj = targets[j].coords();
                let mut r =
                    pj.iter().map(|v| v * v).sum::<f64>() - p0.iter().map(|v| v * v).sum::<f64>();
                for i in 0..dim {
                    let g = 2.0 * (pj[i] - p0[i]);
                    if state[i] == 2 {
                        let col = free.iter().position(|&k| k == i).unwrap();
                        m[(row, col)] = g;
                    } else {
                        r -= g * base[i];
                    }
                }
                rhs[row] = r;
            }
            let Some(sol) = m.lu().solve(&rhs) else {
                continue;
            };
            let mut inside = true;
            for (col, &i) in free.iter().enumerate() {
                let v = sol[col];
                if !v.is_finite() || v < lo[i] - 1e-12 || v > hi[i] + 1e-12 {
                    inside = false;
                    break;
                }
                base[i] = v.clamp(lo[i], hi[i]);
            }
            if inside {
                worst = worst.max(nearest(&base));
            }
        }
    }
    worst
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `inf { |a - b| : a in A, b in B }`; `+inf` if either set is empty.
pub fn set_gap(a: &ValueSet, b: &ValueSet) -> Result<f64, GeomError> {
    if a.is_empty() || b.is_empty() {
        return Ok(f64::INFINITY);
    }
    let dim = a.dim().unwrap_or(0);
    b.check_dim(dim)?;
    if let Some(pts) = finite_points(a) {
        return pts
            .iter()
            .map(|p| distance(p, b))
            .try_fold(f64::INFINITY, |acc, d| d.map(|d| acc.min(d)));
    }
    if let Some(pts) = finite_points(b) {
        return pts
            .iter()
            .map(|p| distance(p, a))
            .try_fold(f64::INFINITY, |acc, d| d.map(|d| acc.min(d)));
    }
    if dim == 1 {
        let xa = a.to_intervals_1d().unwrap_or_default();
        let xb = b.to_intervals_1d().unwrap_or_default();
        let mut best = f64::INFINITY;
        for p in &xa {
            for q in &xb {
                let gap = if p.hi < q.lo {
                    q.lo - p.hi
                } else if q.hi < p.lo {
                    p.lo - q.hi
                } else {
                    0.0
                };
                best = best.min(gap);
            }
        }
        return Ok(best);
    }
    match (a, b) {
        (ValueSet::Box { lo: l1, hi: h1 }, ValueSet::Box { lo: l2, hi: h2 }) => Ok((0..dim)
            .map(|i| {
                let g = if h1[i] < l2[i] {
                    l2[i] - h1[i]
                } else if h2[i] < l1[i] {
                    l1[i] - h2[i]
                } else {
                    0.0
                };
                g * g
            })
            .sum::<f64>()
            .sqrt()),
        _ => Err(GeomError::Unrepresentable("gap between these sets".into())),
    }
}

fn finite_points(s: &ValueSet) -> Option<Vec<Point>> {
    match s {
        ValueSet::Singleton(p) => Some(vec![p.clone()]),
        ValueSet::FinitePoints(ps) => Some(ps.clone()),
        other => other.as_single_point().map(|p| vec![p]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setgeom::Direction;

    fn iv(lo: f64, hi: f64) -> ValueSet {
        ValueSet::interval(lo, hi).unwrap()
    }

    #[test]
    fn empty_conventions() {
        assert_eq!(excess(&ValueSet::Empty, &iv(-1.0, 1.0)).unwrap(), 0.0);
        assert_eq!(
            excess(&iv(-1.0, 1.0), &ValueSet::Empty).unwrap(),
            f64::INFINITY
        );
        assert_eq!(
            excess_detailed(&ValueSet::Empty, &ValueSet::Empty).unwrap(),
            Excess::EmptyTarget
        );
    }

    #[test]
    fn interval_examples() {
        let one = ValueSet::singleton(Point::scalar(1.0));
        assert_eq!(excess(&one, &iv(-1.0, 1.0)).unwrap(), 0.0);
        assert_eq!(excess(&iv(0.0, 3.0), &iv(-1.0, 1.0)).unwrap(), 2.0);
    }

    #[test]
    fn half_line_over_bounded_is_flagged_unbounded() {
        let h = ValueSet::half_line(0.0, Direction::Up).unwrap();
        assert_eq!(
            excess_detailed(&h, &iv(-1.0, 1.0)).unwrap(),
            Excess::Unbounded
        );
        let h2 = ValueSet::half_line(-2.0, Direction::Up).unwrap();
        assert_eq!(excess(&h, &h2).unwrap(), 0.0);
        assert_eq!(excess(&h2, &h).unwrap(), 2.0);
    }

    #[test]
    fn gap_midpoint_of_nonconvex_target() {
        let two = ValueSet::points(vec![Point::scalar(-1.0), Point::scalar(1.0)]).unwrap();
        assert_eq!(excess(&iv(-1.0, 1.0), &two).unwrap(), 1.0);
    }

    #[test]
    fn box_over_corner_points() {
        let square = ValueSet::boxed(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let corners = ValueSet::points(vec![
            Point::new(vec![0.0, 0.0]).unwrap(),
            Point::new(vec![1.0, 0.0]).unwrap(),
            Point::new(vec![0.0, 1.0]).unwrap(),
            Point::new(vec![1.0, 1.0]).unwrap(),
        ])
        .unwrap();
        let e = excess(&square, &corners).unwrap();
        assert!((e - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gaps() {
        assert_eq!(set_gap(&iv(0.0, 1.0), &iv(3.0, 4.0)).unwrap(), 2.0);
        let a = ValueSet::boxed(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let b = ValueSet::boxed(vec![4.0, 5.0], vec![6.0, 6.0]).unwrap();
        assert_eq!(set_gap(&a, &b).unwrap(), 5.0);
        assert_eq!(combinations(4, 2).len(), 6);
    }
}
