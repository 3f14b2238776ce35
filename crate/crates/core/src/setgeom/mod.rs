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

//! Points, finitely representable sets and the distance/projection/excess
//! primitives every other layer is built on.

mod excess;
mod point;
mod value_set;

use thiserror::Error;

pub use excess::{excess, excess_detailed, set_gap, Excess};
pub use point::{Point, MAX_DIM};
pub use value_set::{Direction, Interval, ValueSet};

/// Default absolute tolerance for floating comparisons.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0} (expected 1..=4)")]
    UnsupportedDimension(usize),
    #[error("non-finite coordinate {0}")]
    NonFinite(f64),
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("operation needs a nonempty set")]
    EmptySet,
    #[error("result not representable: {0}")]
    Unrepresentable(String),
}

/// Euclidean distance from `p` to `s`; `+inf` iff `s` is empty.
pub fn distance(p: &Point, s: &ValueSet) -> Result<f64, GeomError> {
    s.check_dim(p.dim())?;
    Ok(match s {
        ValueSet::Empty => f64::INFINITY,
        ValueSet::Singleton(q) => p.distance_to(q),
        ValueSet::Box { lo, hi } => p
            .coords()
            .iter()
            .zip(lo.iter().zip(hi))
            .map(|(&x, (&l, &h))| {
                let d = Interval::new(l, h).distance(x);
                d * d
            })
            .sum::<f64>()
            .sqrt(),
        ValueSet::FinitePoints(ps) => ps
            .iter()
            .map(|q| p.distance_to(q))
            .fold(f64::INFINITY, f64::min),
        ValueSet::HalfLine1D { anchor, direction } => {
            let offset = (p[0] - anchor) * direction.sign();
            if offset >= 0.0 {
                0.0
            } else {
                -offset
            }
        }
        ValueSet::IntervalUnion1D(ivs) => ivs
            .iter()
            .map(|iv| iv.distance(p[0]))
            .fold(f64::INFINITY, f64::min),
    })
}

/// A nearest point of `s` to `p`.
///
/// Ties are broken toward the lowest index for point lists and toward the
/// smaller coordinate for interval unions.
pub fn project(p: &Point, s: &ValueSet) -> Result<Point, GeomError> {
    s.check_dim(p.dim())?;
    match s {
        ValueSet::Empty => Err(GeomError::EmptySet),
        ValueSet::Singleton(q) => Ok(q.clone()),
        ValueSet::Box { lo, hi } => Ok(Point::from_vec_unchecked(
            p.coords()
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(&x, (&l, &h))| x.clamp(l, h))
                .collect(),
        )),
        ValueSet::FinitePoints(ps) => {
            let mut best = &ps[0];
            let mut best_d = p.distance_to(best);
            for q in &ps[1..] {
                let d = p.distance_to(q);
                if d < best_d {
                    best = q;
                    best_d = d;
                }
            }
            Ok(best.clone())
        }
        ValueSet::HalfLine1D { anchor, direction } => {
            let offset = (p[0] - anchor) * direction.sign();
            Ok(if offset >= 0.0 {
                p.clone()
            } else {
                Point::scalar(*anchor)
            })
        }
        ValueSet::IntervalUnion1D(ivs) => {
            let x = p[0];
            let mut best = x.clamp(ivs[0].lo, ivs[0].hi);
            let mut best_d = (x - best).abs();
            for iv in &ivs[1..] {
                let q = x.clamp(iv.lo, iv.hi);
                let d = (x - q).abs();
                if d < best_d {
                    best = q;
                    best_d = d;
                }
            }
            Ok(Point::scalar(best))
        }
    }
}

/// Solution set `S = A^{-1}(0)` of a scenario, with the optimal value `f*`
/// when the scenario is a minimization.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    set: ValueSet,
    optimal_value: Option<f64>,
}

impl SolutionSet {
    pub fn new(set: ValueSet, optimal_value: Option<f64>) -> Result<Self, GeomError> {
        if set.is_empty() {
            return Err(GeomError::EmptySet);
        }
        if let Some(v) = optimal_value {
            if !v.is_finite() {
                return Err(GeomError::NonFinite(v));
            }
        }
        Ok(SolutionSet { set, optimal_value })
    }

    pub fn set(&self) -> &ValueSet {
        &self.set
    }

    pub fn optimal_value(&self) -> Option<f64> {
        self.optimal_value
    }

    pub fn distance(&self, p: &Point) -> Result<f64, GeomError> {
        distance(p, &self.set)
    }

    pub fn project(&self, p: &Point) -> Result<Point, GeomError> {
        project(p, &self.set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(x: f64) -> Point {
        Point::scalar(x)
    }

    #[test]
    fn distance_examples() {
        let b = ValueSet::interval(-1.0, 1.0).unwrap();
        assert_eq!(distance(&p1(0.0), &b).unwrap(), 0.0);
        let u = ValueSet::interval_union(vec![Interval::new(-1.0, 1.0)]).unwrap();
        assert_eq!(distance(&p1(2.0), &u).unwrap(), 1.0);
        let h = ValueSet::half_line(0.0, Direction::Down).unwrap();
        assert_eq!(distance(&p1(1.0), &h).unwrap(), 1.0);
        assert_eq!(distance(&p1(-7.0), &h).unwrap(), 0.0);
        assert_eq!(distance(&p1(3.0), &ValueSet::Empty).unwrap(), f64::INFINITY);
    }

    #[test]
    fn distance_dimension_mismatch() {
        let b = ValueSet::boxed(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            distance(&p1(0.0), &b),
            Err(GeomError::DimensionMismatch {
                expected: 1,
                found: 2
            })
        ));
    }

    #[test]
    fn project_examples() {
        let b = ValueSet::interval(-1.0, 1.0).unwrap();
        assert_eq!(project(&p1(5.0), &b).unwrap(), p1(1.0));
        let pts = ValueSet::points(vec![p1(-1.0), p1(1.0)]).unwrap();
        assert_eq!(project(&p1(0.0), &pts).unwrap(), p1(-1.0));
        let b2 = ValueSet::boxed(vec![0.0, 0.0], vec![1.0, 3.0]).unwrap();
        let q = project(&Point::new(vec![2.0, 2.0]).unwrap(), &b2).unwrap();
        assert_eq!(q.coords(), &[1.0, 2.0]);
        assert_eq!(
            project(&p1(0.0), &ValueSet::Empty),
            Err(GeomError::EmptySet)
        );
    }

    #[test]
    fn interval_union_tie_goes_to_smaller_coordinate() {
        let u = ValueSet::interval_union(vec![Interval::new(-3.0, -1.0), Interval::new(1.0, 2.0)])
            .unwrap();
        assert_eq!(project(&p1(0.0), &u).unwrap(), p1(-1.0));
    }

    #[test]
    fn unbounded_boxes() {
        let slab = ValueSet::boxed(vec![0.0, f64::NEG_INFINITY], vec![0.0, f64::INFINITY]).unwrap();
        let p = Point::new(vec![3.0, -40.0]).unwrap();
        assert_eq!(distance(&p, &slab).unwrap(), 3.0);
        assert_eq!(project(&p, &slab).unwrap().coords(), &[0.0, -40.0]);
        assert_eq!(distance(&p, &ValueSet::whole(2)).unwrap(), 0.0);
    }

    #[test]
    fn solution_set_rejects_empty() {
        assert!(SolutionSet::new(ValueSet::Empty, None).is_err());
        let s = SolutionSet::new(ValueSet::singleton(p1(0.0)), Some(0.0)).unwrap();
        assert_eq!(s.distance(&p1(-2.0)).unwrap(), 2.0);
    }
}
