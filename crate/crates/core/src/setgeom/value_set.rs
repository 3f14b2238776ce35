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

use super::{GeomError, Point};

/// Orientation of a half-line in `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Up => 1.0,
            Direction::Down => -1.0,
        }
    }

    pub fn flipped(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }
}

/// Closed interval of the extended real line. Endpoints may be infinite only
/// when used as an intermediate 1D representation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }

    /// Distance from a finite `x` to the interval.
    pub fn distance(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }

    fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

/// Finite representation of one image `A(x)`.
#[derive(Clone, Debug, PartialEq)]
pub enum ValueSet {
    Empty,
    Singleton(Point),
    /// Axis-aligned box. Bounds may be infinite, so `R^d` and slabs such as
    /// `{x : x_1 = 0}` are boxes too.
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    /// Nonempty list of points of a common dimension.
    FinitePoints(Vec<Point>),
    /// `{anchor + t * direction : t >= 0}` in `R`.
    HalfLine1D {
        anchor: f64,
        direction: Direction,
    },
    /// Sorted, pairwise disjoint, bounded closed intervals in `R`.
    IntervalUnion1D(Vec<Interval>),
}

impl ValueSet {
    pub fn singleton(p: Point) -> Self {
        ValueSet::Singleton(p)
    }

    pub fn boxed(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, GeomError> {
        if lo.len() != hi.len() {
            return Err(GeomError::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if lo.is_empty() || lo.len() > super::MAX_DIM {
            return Err(GeomError::UnsupportedDimension(lo.len()));
        }
        for (&l, &h) in lo.iter().zip(&hi) {
            if l.is_nan() || h.is_nan() || l == f64::INFINITY || h == f64::NEG_INFINITY || l > h {
                return Err(GeomError::InvalidSet(format!(
                    "box bounds [{l}, {h}] are not ordered"
                )));
            }
        }
        Ok(ValueSet::Box { lo, hi })
    }

    /// `[lo, hi]` in `R`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self, GeomError> {
        Self::boxed(vec![lo], vec![hi])
    }

    /// All of `R^dim`.
    pub fn whole(dim: usize) -> Self {
        ValueSet::Box {
            lo: vec![f64::NEG_INFINITY; dim],
            hi: vec![f64::INFINITY; dim],
        }
    }

    pub fn points(points: Vec<Point>) -> Result<Self, GeomError> {
        let Some(first) = points.first() else {
            return Ok(ValueSet::Empty);
        };
        let dim = first.dim();
        for p in &points {
            p.check_dim(dim)?;
        }
        Ok(ValueSet::FinitePoints(points))
    }

    pub fn half_line(anchor: f64, direction: Direction) -> Result<Self, GeomError> {
        if !anchor.is_finite() {
            return Err(GeomError::NonFinite(anchor));
        }
        Ok(ValueSet::HalfLine1D { anchor, direction })
    }

    /// Union of bounded closed intervals; must already be sorted and disjoint.
    pub fn interval_union(intervals: Vec<Interval>) -> Result<Self, GeomError> {
        if intervals.is_empty() {
            return Ok(ValueSet::Empty);
        }
        for iv in &intervals {
            if !iv.is_bounded() || iv.lo > iv.hi {
                return Err(GeomError::InvalidSet(format!(
                    "interval [{}, {}] must be bounded and ordered",
                    iv.lo, iv.hi
                )));
            }
        }
        for pair in intervals.windows(2) {
            if pair[0].hi >= pair[1].lo {
                return Err(GeomError::InvalidSet(
                    "intervals must be sorted and pairwise disjoint".into(),
                ));
            }
        }
        Ok(ValueSet::IntervalUnion1D(intervals))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ValueSet::Empty)
    }

    /// Ambient dimension, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        match self {
            ValueSet::Empty => None,
            ValueSet::Singleton(p) => Some(p.dim()),
            ValueSet::Box { lo, .. } => Some(lo.len()),
            ValueSet::FinitePoints(ps) => ps.first().map(Point::dim),
            ValueSet::HalfLine1D { .. } | ValueSet::IntervalUnion1D(_) => Some(1),
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            ValueSet::Box { lo, hi } => lo.iter().chain(hi).all(|v| v.is_finite()),
            ValueSet::HalfLine1D { .. } => false,
            _ => true,
        }
    }

    /// `true` when the set has exactly one element.
    pub fn as_single_point(&self) -> Option<Point> {
        match self {
            ValueSet::Singleton(p) => Some(p.clone()),
            ValueSet::Box { lo, hi } if lo == hi => Some(Point::from_vec_unchecked(lo.clone())),
            ValueSet::FinitePoints(ps) if ps.len() == 1 => Some(ps[0].clone()),
            ValueSet::IntervalUnion1D(ivs) if ivs.len() == 1 && ivs[0].lo == ivs[0].hi => {
                Some(Point::scalar(ivs[0].lo))
            }
            _ => None,
        }
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<(), GeomError> {
        match self.dim() {
            Some(d) if d != dim => Err(GeomError::DimensionMismatch {
                expected: dim,
                found: d,
            }),
            _ => Ok(()),
        }
    }

    /// Membership with absolute tolerance `tol`.
    pub fn contains(&self, p: &Point, tol: f64) -> Result<bool, GeomError> {
        Ok(super::distance(p, self)? <= tol)
    }

    /// Sorted, merged list of extended-real intervals for a one-dimensional set.
    /// Returns `None` when the set is not one-dimensional.
    pub fn to_intervals_1d(&self) -> Option<Vec<Interval>> {
        let mut out = match self {
            ValueSet::Empty => Vec::new(),
            ValueSet::Singleton(p) if p.dim() == 1 => vec![Interval::point(p[0])],
            ValueSet::Box { lo, hi } if lo.len() == 1 => vec![Interval::new(lo[0], hi[0])],
            ValueSet::FinitePoints(ps) if ps[0].dim() == 1 => {
                ps.iter().map(|p| Interval::point(p[0])).collect()
            }
            ValueSet::HalfLine1D { anchor, direction } => match direction {
                Direction::Up => vec![Interval::new(*anchor, f64::INFINITY)],
                Direction::Down => vec![Interval::new(f64::NEG_INFINITY, *anchor)],
            },
            ValueSet::IntervalUnion1D(ivs) => ivs.clone(),
            _ => return None,
        };
        Some(merge_intervals(&mut out))
    }

    /// Canonical set for a union of extended-real intervals: a point becomes a
    /// singleton, a single interval a 1D box or half-line, several bounded
    /// intervals an interval union.
    pub fn from_intervals_1d(mut intervals: Vec<Interval>) -> Result<Self, GeomError> {
        let merged = merge_intervals(&mut intervals);
        match merged.as_slice() {
            [] => Ok(ValueSet::Empty),
            [iv] if iv.lo == iv.hi => Ok(ValueSet::Singleton(Point::scalar(iv.lo))),
            [iv] if iv.lo.is_finite() && iv.hi == f64::INFINITY => Ok(ValueSet::HalfLine1D {
                anchor: iv.lo,
                direction: Direction::Up,
            }),
            [iv] if iv.hi.is_finite() && iv.lo == f64::NEG_INFINITY => Ok(ValueSet::HalfLine1D {
                anchor: iv.hi,
                direction: Direction::Down,
            }),
            [iv] => ValueSet::boxed(vec![iv.lo], vec![iv.hi]),
            many if many.iter().all(Interval::is_bounded) => {
                if many.iter().all(|iv| iv.lo == iv.hi) {
                    Ok(ValueSet::FinitePoints(
                        many.iter().map(|iv| Point::scalar(iv.lo)).collect(),
                    ))
                } else {
                    Ok(ValueSet::IntervalUnion1D(merged))
                }
            }
            _ => Err(GeomError::Unrepresentable(
                "union of unbounded and disjoint intervals".into(),
            )),
        }
    }

    /// Extreme points of a bounded set (box vertices, interval endpoints,
    /// listed points). `None` for unbounded sets.
    pub fn extreme_points(&self) -> Option<Vec<Point>> {
        if !self.is_bounded() {
            return None;
        }
        Some(match self {
            ValueSet::Empty => Vec::new(),
            ValueSet::Singleton(p) => vec![p.clone()],
            ValueSet::FinitePoints(ps) => ps.clone(),
            ValueSet::Box { lo, hi } => box_vertices(lo, hi),
            ValueSet::IntervalUnion1D(ivs) => {
                let mut pts = Vec::new();
                for iv in ivs {
                    pts.push(Point::scalar(iv.lo));
                    if iv.hi > iv.lo {
                        pts.push(Point::scalar(iv.hi));
                    }
                }
                pts
            }
            ValueSet::HalfLine1D { .. } => unreachable!(),
        })
    }

    /// Support function `sup_{s in S} <s, u>`; `-inf` for the empty set.
    pub fn support(&self, u: &Point) -> f64 {
        match self {
            ValueSet::Empty => f64::NEG_INFINITY,
            ValueSet::Singleton(p) => p.dot(u),
            ValueSet::FinitePoints(ps) => ps
                .iter()
                .map(|p| p.dot(u))
                .fold(f64::NEG_INFINITY, f64::max),
            ValueSet::Box { lo, hi } => lo
                .iter()
                .zip(hi)
                .zip(u.coords())
                .map(|((&l, &h), &ui)| {
                    if ui > 0.0 {
                        h * ui
                    } else if ui < 0.0 {
                        l * ui
                    } else {
                        0.0
                    }
                })
                .sum(),
            ValueSet::HalfLine1D { anchor, direction } => {
                let slope = direction.sign() * u[0];
                if slope > 0.0 {
                    f64::INFINITY
                } else {
                    anchor * u[0]
                }
            }
            ValueSet::IntervalUnion1D(ivs) => ivs
                .iter()
                .map(|iv| (iv.lo * u[0]).max(iv.hi * u[0]))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// `{c * s : s in S}`.
    pub fn scale(&self, c: f64) -> ValueSet {
        match self {
            ValueSet::Empty => ValueSet::Empty,
            ValueSet::Singleton(p) => ValueSet::Singleton(p * c),
            ValueSet::FinitePoints(ps) => {
                ValueSet::FinitePoints(ps.iter().map(|p| p * c).collect())
            }
            ValueSet::Box { lo, hi } => {
                if c == 0.0 {
                    return ValueSet::Singleton(Point::zeros(lo.len()));
                }
                let (a, b): (Vec<f64>, Vec<f64>) = lo
                    .iter()
                    .zip(hi)
                    .map(|(&l, &h)| {
                        if c > 0.0 {
                            (l * c, h * c)
                        } else {
                            (h * c, l * c)
                        }
                    })
                    .unzip();
                ValueSet::Box { lo: a, hi: b }
            }
            ValueSet::HalfLine1D { anchor, direction } => {
                if c == 0.0 {
                    ValueSet::Singleton(Point::scalar(0.0))
                } else if c > 0.0 {
                    ValueSet::HalfLine1D {
                        anchor: anchor * c,
                        direction: *direction,
                    }
                } else {
                    ValueSet::HalfLine1D {
                        anchor: anchor * c,
                        direction: direction.flipped(),
                    }
                }
            }
            ValueSet::IntervalUnion1D(ivs) => {
                if c == 0.0 {
                    return ValueSet::Singleton(Point::scalar(0.0));
                }
                let mut out: Vec<Interval> = ivs
                    .iter()
                    .map(|iv| {
                        let (a, b) = (iv.lo * c, iv.hi * c);
                        Interval::new(a.min(b), a.max(b))
                    })
                    .collect();
                out.sort_by(|a, b| a.lo.total_cmp(&b.lo));
                ValueSet::IntervalUnion1D(out)
            }
        }
    }

    /// `{s + t : s in S}`.
    pub fn translate(&self, t: &Point) -> Result<ValueSet, GeomError> {
        ValueSet::Singleton(t.clone()).minkowski_sum(self)
    }

    /// Minkowski sum `S + T`, when it is representable by one of the variants.
    pub fn minkowski_sum(&self, other: &ValueSet) -> Result<ValueSet, GeomError> {
        use ValueSet::*;
        if self.is_empty() || other.is_empty() {
            return Ok(Empty);
        }
        let dim = self.dim().unwrap_or(0);
        other.check_dim(dim)?;
        if dim == 1 {
            let a = self.to_intervals_1d().unwrap_or_default();
            let b = other.to_intervals_1d().unwrap_or_default();
            let mut sums = Vec::with_capacity(a.len() * b.len());
            for x in &a {
                for y in &b {
                    sums.push(Interval::new(x.lo + y.lo, x.hi + y.hi));
                }
            }
            return ValueSet::from_intervals_1d(sums);
        }
        match (self, other) {
            (Singleton(p), Singleton(q)) => Ok(Singleton(p + q)),
            (Singleton(p), FinitePoints(qs)) | (FinitePoints(qs), Singleton(p)) => {
                Ok(FinitePoints(qs.iter().map(|q| p + q).collect()))
            }
            (FinitePoints(ps), FinitePoints(qs)) => {
                let mut out = Vec::with_capacity(ps.len() * qs.len());
                for p in ps {
                    for q in qs {
                        let s = p + q;
                        if !out.contains(&s) {
                            out.push(s);
                        }
                    }
                }
                Ok(FinitePoints(out))
            }
            (Singleton(p), Box { lo, hi }) | (Box { lo, hi }, Singleton(p)) => Ok(Box {
                lo: lo.iter().zip(p.coords()).map(|(l, c)| l + c).collect(),
                hi: hi.iter().zip(p.coords()).map(|(h, c)| h + c).collect(),
            }),
            (Box { lo: l1, hi: h1 }, Box { lo: l2, hi: h2 }) => Ok(Box {
                lo: l1.iter().zip(l2).map(|(a, b)| a + b).collect(),
                hi: h1.iter().zip(h2).map(|(a, b)| a + b).collect(),
            }),
            (FinitePoints(ps), b @ Box { .. }) | (b @ Box { .. }, FinitePoints(ps))
                if ps.len() == 1 =>
            {
                Singleton(ps[0].clone()).minkowski_sum(b)
            }
            _ => Err(GeomError::Unrepresentable(
                "Minkowski sum of a box and several points".into(),
            )),
        }
    }

    /// `S ∩ B(center, radius)`.
    ///
    /// Exact for finite sets, for every 1D set and for boxes that lie inside
    /// or outside the ball; a multi-dimensional box that straddles the sphere
    /// is reported as unrepresentable.
    pub fn intersect_ball(&self, center: &Point, radius: f64) -> Result<ValueSet, GeomError> {
        self.check_dim(center.dim())?;
        match self {
            ValueSet::Empty => Ok(ValueSet::Empty),
            ValueSet::Singleton(p) => Ok(if p.distance_to(center) <= radius {
                self.clone()
            } else {
                ValueSet::Empty
            }),
            ValueSet::FinitePoints(ps) => ValueSet::points(
                ps.iter()
                    .filter(|p| p.distance_to(center) <= radius)
                    .cloned()
                    .collect(),
            ),
            _ if center.dim() == 1 => {
                let ball = Interval::new(center[0] - radius, center[0] + radius);
                let clipped = self
                    .to_intervals_1d()
                    .unwrap_or_default()
                    .into_iter()
                    .filter_map(|iv| {
                        let lo = iv.lo.max(ball.lo);
                        let hi = iv.hi.min(ball.hi);
                        (lo <= hi).then_some(Interval::new(lo, hi))
                    })
                    .collect();
                ValueSet::from_intervals_1d(clipped)
            }
            ValueSet::Box { lo, hi } => {
                if super::distance(center, self)? > radius {
                    return Ok(ValueSet::Empty);
                }
                if let Some(p) = self.as_single_point() {
                    return Ok(ValueSet::Singleton(p));
                }
                let inside = self.is_bounded()
                    && box_vertices(lo, hi)
                        .iter()
                        .all(|v| v.distance_to(center) <= radius);
                if inside {
                    Ok(self.clone())
                } else {
                    Err(GeomError::Unrepresentable(
                        "box partially covered by a ball".into(),
                    ))
                }
            }
            ValueSet::HalfLine1D { .. } | ValueSet::IntervalUnion1D(_) => unreachable!(),
        }
    }
}

/// Sorts and merges overlapping intervals in place, returning the result.
pub(crate) fn merge_intervals(intervals: &mut Vec<Interval>) -> Vec<Interval> {
    intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
    let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals.drain(..) {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
            _ => out.push(iv),
        }
    }
    out
}

/// Vertices of a bounded box, without duplicates for degenerate sides.
pub(crate) fn box_vertices(lo: &[f64], hi: &[f64]) -> Vec<Point> {
    let mut verts = vec![Vec::with_capacity(lo.len())];
    for (&l, &h) in lo.iter().zip(hi) {
        let mut next = Vec::with_capacity(verts.len() * 2);
        for v in &verts {
            let mut a = v.clone();
            a.push(l);
            next.push(a);
            if h > l {
                let mut b = v.clone();
                b.push(h);
                next.push(b);
            }
        }
        verts = next;
    }
    verts.into_iter().map(Point::from_vec_unchecked).collect()
}

impl Default for ValueSet {
    fn default() -> Self {
        ValueSet::Empty
    }
}
