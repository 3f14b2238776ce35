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
//! Declarative scenario vocabulary and its translation to core models.
//!
//! Every tagged choice is externally tagged (`{"powerGradient": {...}}`) so
//! that unknown keys and field paths survive deserialization.

use nalgebra::{DMatrix, DVector};
use serde::Deserialize;

use ppa_core::operators::{matrix_from_rows, RayDirection};
use ppa_core::regularity::{ModulusFunction, RegularityError};
use ppa_core::setgeom::{Direction, Interval};
use ppa_core::{ConvexFunctionModel, GraphPiece, Point, ScalarFn, SetValuedMap, ValueSet};

use crate::error::ConfigError;

/// A number, or one of the labels `"inf"`, `"+inf"`, `"-inf"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ExtReal {
    Num(f64),
    Label(String),
}

impl ExtReal {
    pub fn value(&self, path: &str) -> Result<f64, ConfigError> {
        match self {
            ExtReal::Num(v) => Ok(*v),
            ExtReal::Label(s) => match s.as_str() {
                "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
                "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
                other => Err(ConfigError::field(
                    path,
                    format!("expected a number or \"+inf\"/\"-inf\", got {other:?}"),
                )),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DirectionSpec {
    Up,
    Down,
    Left,
    Right,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum PieceSpec {
    Segment {
        start: [f64; 2],
        end: [f64; 2],
    },
    Ray {
        origin: [f64; 2],
        direction: DirectionSpec,
    },
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ScalarFnSpec {
    SinAbs,
    CosAbs,
    Heaviside,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum OperatorSpec {
    Zero {
        dim: usize,
    },
    Identity {
        dim: usize,
    },
    Constant {
        value: Vec<f64>,
    },
    Linear {
        matrix: Vec<Vec<f64>>,
    },
    Sign {
        dim: usize,
    },
    SubgradAbsSum {
        dim: usize,
    },
    PowerGradient {
        power: u32,
        dim: usize,
    },
    PiecewiseGraph {
        pieces: Vec<PieceSpec>,
    },
    Sum {
        members: Vec<OperatorSpec>,
    },
    Inverse {
        of: Box<OperatorSpec>,
    },
    Scaled {
        factor: f64,
        of: Box<OperatorSpec>,
    },
    Composed {
        outer: Box<OperatorSpec>,
        matrix: Vec<Vec<f64>>,
    },
    Elementwise {
        functions: Vec<ScalarFnSpec>,
    },
    /// `f(x) = x'Qx/2 + b'x`.
    Quadratic {
        q: Vec<Vec<f64>>,
        b: Vec<f64>,
    },
    AbsSum {
        dim: usize,
    },
    /// `f(x) = sum x_i^q / q`.
    PowerEven {
        power: u32,
        dim: usize,
    },
    /// `f(x) = |Ax - b|^2 / 2`.
    LeastSquares {
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
    },
}

/// A resolved operator: either a map or a convex function whose
/// subdifferential is iterated.
#[derive(Clone, Debug)]
pub enum Built {
    Map(SetValuedMap),
    Function(ConvexFunctionModel),
}

impl Built {
    pub fn map(&self) -> SetValuedMap {
        match self {
            Built::Map(m) => m.clone(),
            Built::Function(f) => f.subdifferential(),
        }
    }
}

/// A validated point; errors name `path`.
pub fn point(v: &[f64], path: &str) -> Result<Point, ConfigError> {
    Point::from_slice(v).map_err(|e| ConfigError::field(path, e))
}

fn matrix(rows: &[Vec<f64>], path: &str) -> Result<DMatrix<f64>, ConfigError> {
    matrix_from_rows(rows).map_err(|e| ConfigError::field(path, e))
}

impl OperatorSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            OperatorSpec::Zero { .. } => "zero",
            OperatorSpec::Identity { .. } => "identity",
            OperatorSpec::Constant { .. } => "constant",
            OperatorSpec::Linear { .. } => "linear",
            OperatorSpec::Sign { .. } => "sign",
            OperatorSpec::SubgradAbsSum { .. } => "subgradAbsSum",
            OperatorSpec::PowerGradient { .. } => "powerGradient",
            OperatorSpec::PiecewiseGraph { .. } => "piecewiseGraph",
            OperatorSpec::Sum { .. } => "sum",
            OperatorSpec::Inverse { .. } => "inverse",
            OperatorSpec::Scaled { .. } => "scaled",
            OperatorSpec::Composed { .. } => "composed",
            OperatorSpec::Elementwise { .. } => "elementwise",
            OperatorSpec::Quadratic { .. } => "quadratic",
            OperatorSpec::AbsSum { .. } => "absSum",
            OperatorSpec::PowerEven { .. } => "powerEven",
            OperatorSpec::LeastSquares { .. } => "leastSquares",
        }
    }

    /// Builds the model; errors name `path` extended by the variant tag.
    pub fn build(&self, path: &str) -> Result<Built, ConfigError> {
        let here = format!("{path}.{}", self.tag());
        let err = |e: ppa_core::OperatorError| ConfigError::field(&here, e);
        let map = |m: Result<SetValuedMap, ppa_core::OperatorError>| m.map(Built::Map).map_err(err);
        let func = |f: Result<ConvexFunctionModel, ppa_core::OperatorError>| {
            f.map(Built::Function).map_err(err)
        };
        match self {
            OperatorSpec::Zero { dim } => map(SetValuedMap::zero(*dim)),
            OperatorSpec::Identity { dim } => map(SetValuedMap::identity(*dim)),
            OperatorSpec::Constant { value } => {
                let c = point(value, &format!("{here}.value"))?;
                Ok(Built::Map(SetValuedMap::constant(c)))
            }
            OperatorSpec::Linear { matrix: rows } => map(SetValuedMap::linear(matrix(
                rows,
                &format!("{here}.matrix"),
            )?)),
            OperatorSpec::Sign { dim } => map(SetValuedMap::sign(*dim)),
            OperatorSpec::SubgradAbsSum { dim } => map(SetValuedMap::subgrad_abs_sum(*dim)),
            OperatorSpec::PowerGradient { power, dim } => {
                map(SetValuedMap::power_gradient(*power, *dim))
            }
            OperatorSpec::PiecewiseGraph { pieces } => map(SetValuedMap::piecewise_graph(
                pieces.iter().map(PieceSpec::piece).collect(),
            )),
            OperatorSpec::Sum { members } => {
                let mut built = Vec::with_capacity(members.len());
                for (i, m) in members.iter().enumerate() {
                    built.push(m.build(&format!("{here}.members[{i}]"))?.map());
                }
                map(SetValuedMap::sum(built))
            }
            OperatorSpec::Inverse { of } => Ok(Built::Map(SetValuedMap::inverse(
                of.build(&format!("{here}.of"))?.map(),
            ))),
            OperatorSpec::Scaled { factor, of } => map(SetValuedMap::scaled(
                *factor,
                of.build(&format!("{here}.of"))?.map(),
            )),
            OperatorSpec::Composed {
                outer,
                matrix: rows,
            } => {
                let inner = matrix(rows, &format!("{here}.matrix"))?;
                map(SetValuedMap::composed(
                    outer.build(&format!("{here}.outer"))?.map(),
                    inner,
                ))
            }
            OperatorSpec::Elementwise { functions } => map(SetValuedMap::elementwise(
                functions.iter().map(|f| f.scalar_fn()).collect(),
            )),
            OperatorSpec::Quadratic { q, b } => func(ConvexFunctionModel::quadratic(
                matrix(q, &format!("{here}.q"))?,
                DVector::from_column_slice(b),
            )),
            OperatorSpec::AbsSum { dim } => func(ConvexFunctionModel::abs_sum(*dim)),
            OperatorSpec::PowerEven { power, dim } => {
                func(ConvexFunctionModel::power_even(*power, *dim))
            }
            OperatorSpec::LeastSquares { a, b } => func(ConvexFunctionModel::least_squares(
                matrix(a, &format!("{here}.a"))?,
                DVector::from_column_slice(b),
            )),
        }
    }
}

impl PieceSpec {
    fn piece(&self) -> GraphPiece {
        match self {
            PieceSpec::Segment { start, end } => GraphPiece::Segment {
                start: (start[0], start[1]),
                end: (end[0], end[1]),
            },
            PieceSpec::Ray { origin, direction } => GraphPiece::Ray {
                origin: (origin[0], origin[1]),
                direction: match direction {
                    DirectionSpec::Up => RayDirection::Up,
                    DirectionSpec::Down => RayDirection::Down,
                    DirectionSpec::Left => RayDirection::Left,
                    DirectionSpec::Right => RayDirection::Right,
                },
            },
        }
    }
}

impl ScalarFnSpec {
    fn scalar_fn(self) -> ScalarFn {
        match self {
            ScalarFnSpec::SinAbs => ScalarFn::SinAbs,
            ScalarFnSpec::CosAbs => ScalarFn::CosAbs,
            ScalarFnSpec::Heaviside => ScalarFn::Heaviside,
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum HalfLineDirection {
    Up,
    Down,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum SetSpec {
    Empty,
    Whole {
        dim: usize,
    },
    Singleton(Vec<f64>),
    Box {
        lo: Vec<ExtReal>,
        hi: Vec<ExtReal>,
    },
    Points(Vec<Vec<f64>>),
    HalfLine {
        anchor: f64,
        direction: HalfLineDirection,
    },
    Intervals(Vec<[ExtReal; 2]>),
}

impl SetSpec {
    pub fn build(&self, path: &str) -> Result<ValueSet, ConfigError> {
        let geom = |p: &str, e: ppa_core::setgeom::GeomError| ConfigError::field(p, e);
        match self {
            SetSpec::Empty => Ok(ValueSet::Empty),
            SetSpec::Whole { dim } => {
                if *dim == 0 {
                    return Err(ConfigError::field(
                        format!("{path}.whole.dim"),
                        "must be positive",
                    ));
                }
                Ok(ValueSet::whole(*dim))
            }
            SetSpec::Singleton(v) => {
                Ok(ValueSet::singleton(point(v, &format!("{path}.singleton"))?))
            }
            SetSpec::Box { lo, hi } => {
                let p = format!("{path}.box");
                let lo = ext_vec(lo, &format!("{p}.lo"))?;
                let hi = ext_vec(hi, &format!("{p}.hi"))?;
                ValueSet::boxed(lo, hi).map_err(|e| geom(&p, e))
            }
            SetSpec::Points(pts) => {
                let p = format!("{path}.points");
                let pts = pts
                    .iter()
                    .enumerate()
                    .map(|(i, v)| point(v, &format!("{p}[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                ValueSet::points(pts).map_err(|e| geom(&p, e))
            }
            SetSpec::HalfLine { anchor, direction } => ValueSet::half_line(
                *anchor,
                match direction {
                    HalfLineDirection::Up => Direction::Up,
                    HalfLineDirection::Down => Direction::Down,
                },
            )
            .map_err(|e| geom(&format!("{path}.halfLine"), e)),
            SetSpec::Intervals(list) => {
                let p = format!("{path}.intervals");
                let mut ivs = Vec::with_capacity(list.len());
                for (i, [lo, hi]) in list.iter().enumerate() {
                    let q = format!("{p}[{i}]");
                    ivs.push(Interval::new(lo.value(&q)?, hi.value(&q)?));
                }
                ValueSet::interval_union(ivs).map_err(|e| geom(&p, e))
            }
        }
    }
}

fn ext_vec(v: &[ExtReal], path: &str) -> Result<Vec<f64>, ConfigError> {
    v.iter()
        .enumerate()
        .map(|(i, x)| x.value(&format!("{path}[{i}]")))
        .collect()
}

/// Solution set: derived from the model, or given explicitly.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum SolutionSpec {
    /// `A^{-1}(0)`, with `inf f` attached for function models.
    Auto,
    Explicit {
        set: SetSpec,
        optimal_value: Option<f64>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum ModulusSpec {
    Lipschitz {
        l: f64,
        radius: Option<ExtReal>,
    },
    PowerLaw {
        c: f64,
        p: f64,
        radius: Option<ExtReal>,
    },
    Tabulated {
        table: Vec<[f64; 2]>,
        radius: Option<ExtReal>,
    },
    /// Estimates the modulus of `A^{-1}` at `0` on `radii` and fits it.
    Estimate {
        radii: Vec<f64>,
        #[serde(default = "default_sample_count")]
        sample_count: usize,
        seed: Option<u64>,
        #[serde(default = "default_true")]
        fit: bool,
    },
    /// `L = |A'| / k` from the affine part of the operator.
    MatrixCertificate {
        radius: Option<ExtReal>,
    },
}

pub fn default_sample_count() -> usize {
    200
}

pub fn default_true() -> bool {
    true
}

fn radius_or(r: &Option<ExtReal>, default: f64, path: &str) -> Result<f64, ConfigError> {
    match r {
        Some(v) => v.value(&format!("{path}.radius")),
        None => Ok(default),
    }
}

impl ModulusSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            ModulusSpec::Lipschitz { .. } => "lipschitz",
            ModulusSpec::PowerLaw { .. } => "powerLaw",
            ModulusSpec::Tabulated { .. } => "tabulated",
            ModulusSpec::Estimate { .. } => "estimate",
            ModulusSpec::MatrixCertificate { .. } => "matrixCertificate",
        }
    }

    /// Closed-form moduli; `None` for the directives resolved at run time.
    pub fn explicit(&self, path: &str) -> Result<Option<ModulusFunction>, ConfigError> {
        let here = format!("{path}.{}", self.tag());
        let err = |e: RegularityError| ConfigError::field(&here, e);
        match self {
            ModulusSpec::Lipschitz { l, radius } => {
                let r = radius_or(radius, f64::INFINITY, &here)?;
                ModulusFunction::lipschitz(*l, r).map(Some).map_err(err)
            }
            ModulusSpec::PowerLaw { c, p, radius } => {
                let r = radius_or(radius, f64::INFINITY, &here)?;
                ModulusFunction::power_law(*c, *p, r).map(Some).map_err(err)
            }
            ModulusSpec::Tabulated { table, radius } => {
                let last = table.last().map_or(0.0, |e| e[0]);
                let r = radius_or(radius, last, &here)?;
                let t = table.iter().map(|e| (e[0], e[1])).collect();
                ModulusFunction::tabulated(t, r).map(Some).map_err(err)
            }
            ModulusSpec::Estimate {
                radii,
                sample_count,
                ..
            } => {
                if radii.is_empty() {
                    return Err(ConfigError::field(format!("{here}.radii"), "no radii"));
                }
                if *sample_count == 0 {
                    return Err(ConfigError::field(
                        format!("{here}.sampleCount"),
                        "must be at least 1",
                    ));
                }
                Ok(None)
            }
            ModulusSpec::MatrixCertificate { radius } => {
                radius_or(radius, f64::INFINITY, &here)?;
                Ok(None)
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PpaSpec {
    pub gamma: f64,
    pub start: Vec<f64>,
    pub max_iterations: usize,
    #[serde(default)]
    pub stop_step_norm: f64,
    #[serde(default = "one")]
    pub record_every: usize,
}

fn one() -> usize {
    1
}

/// `(x, y)` pair given explicitly.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairSpec {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Generated pairs `(x + dx n^{-p}, y + dy n^{-p})` for each `n` in `ns`.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SequenceSpec {
    pub x: Vec<f64>,
    #[serde(default)]
    pub dx: Vec<f64>,
    pub y: Vec<f64>,
    #[serde(default)]
    pub dy: Vec<f64>,
    pub ns: Vec<f64>,
    #[serde(default = "unit_exponent")]
    pub exponent: f64,
    /// Claimed limit of `y_n` (closed-graph checks only).
    pub limit: Option<Vec<f64>>,
}

fn unit_exponent() -> f64 {
    1.0
}

impl SequenceSpec {
    pub fn pairs(&self, path: &str) -> Result<Vec<(Point, Point)>, ConfigError> {
        let dx = offsets(&self.dx, self.x.len(), &format!("{path}.dx"))?;
        let dy = offsets(&self.dy, self.y.len(), &format!("{path}.dy"))?;
        if self.x.is_empty() || self.y.is_empty() {
            return Err(ConfigError::field(path, "x and y must be nonempty"));
        }
        let mut out = Vec::with_capacity(self.ns.len());
        for (i, &n) in self.ns.iter().enumerate() {
            if !(n > 0.0 && n.is_finite()) {
                return Err(ConfigError::field(
                    format!("{path}.ns[{i}]"),
                    "must be positive and finite",
                ));
            }
            let t = n.powf(-self.exponent);
            let shift = |base: &[f64], d: &[f64]| -> Vec<f64> {
                base.iter().zip(d).map(|(b, d)| b + d * t).collect()
            };
            let at = format!("{path}.ns[{i}]");
            out.push((
                point(&shift(&self.x, &dx), &at)?,
                point(&shift(&self.y, &dy), &at)?,
            ));
        }
        Ok(out)
    }
}

fn offsets(d: &[f64], len: usize, path: &str) -> Result<Vec<f64>, ConfigError> {
    if d.is_empty() {
        return Ok(vec![0.0; len]);
    }
    if d.len() != len {
        return Err(ConfigError::field(
            path,
            format!("expected {len} entries, found {}", d.len()),
        ));
    }
    Ok(d.to_vec())
}

pub fn pair_points(pairs: &[PairSpec], path: &str) -> Result<Vec<(Point, Point)>, ConfigError> {
    pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            Ok((
                point(&p.x, &format!("{path}[{i}].x"))?,
                point(&p.y, &format!("{path}[{i}].y"))?,
            ))
        })
        .collect()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum SequenceSource {
    /// `a_n = 1/n^2`.
    InverseSquare {
        len: usize,
    },
    /// `a_n = 1/n` at perfect squares, `0` elsewhere.
    SquareIndexed {
        len: usize,
    },
    Values(Vec<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Expect {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeSpec {
    pub label: Option<String>,
    #[serde(default = "expect_holds")]
    pub expect: Expect,
    pub check: CheckSpec,
}

fn expect_holds() -> Expect {
    Expect::Holds
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum CheckSpec {
    Calm {
        operator: Option<OperatorSpec>,
        base_point: Vec<f64>,
        base_image_point: Vec<f64>,
        sample_radius: f64,
        ball_radius: Option<f64>,
        #[serde(default = "default_sample_count")]
        sample_count: usize,
        seed: Option<u64>,
        divergence_cap: Option<f64>,
    },
    MetricRegularity {
        operator: Option<OperatorSpec>,
        base_point: Vec<f64>,
        base_image_point: Vec<f64>,
        sample_radius: f64,
        ball_radius: Option<f64>,
        #[serde(default = "default_sample_count")]
        sample_count: usize,
        seed: Option<u64>,
        divergence_cap: Option<f64>,
        #[serde(default)]
        witnesses: Vec<PairSpec>,
        witness_sequence: Option<SequenceSpec>,
    },
    MetricSubregularity {
        operator: Option<OperatorSpec>,
        base_point: Vec<f64>,
        sample_radius: f64,
        #[serde(default = "default_sample_count")]
        sample_count: usize,
        seed: Option<u64>,
        divergence_cap: Option<f64>,
        #[serde(default)]
        witnesses: Vec<PairSpec>,
    },
    /// Estimates `rho(r)` for the map (or its inverse) at `basePoint`.
    Modulus {
        operator: Option<OperatorSpec>,
        #[serde(default)]
        inverse: bool,
        base_point: Vec<f64>,
        radii: Vec<f64>,
        #[serde(default = "default_sample_count")]
        sample_count: usize,
        seed: Option<u64>,
        #[serde(default = "default_true")]
        fit: bool,
    },
    Monotone {
        operator: Option<OperatorSpec>,
        half_width: f64,
        count: usize,
        seed: Option<u64>,
    },
    PairMonotone {
        operator: Option<OperatorSpec>,
        second: OperatorSpec,
        strong_modulus: f64,
        half_width: f64,
        count: usize,
        seed: Option<u64>,
    },
    Coercive {
        operator: Option<OperatorSpec>,
        gamma: f64,
        half_width: f64,
        count: usize,
        seed: Option<u64>,
    },
    Hoffman {
        operator: Option<OperatorSpec>,
        modulus: Option<ModulusSpec>,
        sigma: f64,
        witnesses: Vec<PairSpec>,
    },
    MatrixCertificate {
        #[serde(default)]
        matrices: Vec<Vec<Vec<f64>>>,
        #[serde(default)]
        random_count: usize,
        #[serde(default = "default_max_dim")]
        max_dim: usize,
        #[serde(default = "default_trials")]
        trials: usize,
        seed: Option<u64>,
    },
    SequenceRate {
        sequence: SequenceSource,
    },
    ClosedGraph {
        operator: Option<OperatorSpec>,
        sequences: Vec<SequenceSpec>,
        #[serde(default = "default_closed_tol")]
        tol: f64,
    },
}

fn default_max_dim() -> usize {
    4
}

fn default_trials() -> usize {
    10
}

fn default_closed_tol() -> f64 {
    1e-6
}

impl CheckSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            CheckSpec::Calm { .. } => "calm",
            CheckSpec::MetricRegularity { .. } => "metricRegularity",
            CheckSpec::MetricSubregularity { .. } => "metricSubregularity",
            CheckSpec::Modulus { .. } => "modulus",
            CheckSpec::Monotone { .. } => "monotone",
            CheckSpec::PairMonotone { .. } => "pairMonotone",
            CheckSpec::Coercive { .. } => "coercive",
            CheckSpec::Hoffman { .. } => "hoffman",
            CheckSpec::MatrixCertificate { .. } => "matrixCertificate",
            CheckSpec::SequenceRate { .. } => "sequenceRate",
            CheckSpec::ClosedGraph { .. } => "closedGraph",
        }
    }

    /// The per-probe operator override, if any.
    pub fn operator(&self) -> Option<&OperatorSpec> {
        match self {
            CheckSpec::Calm { operator, .. }
            | CheckSpec::MetricRegularity { operator, .. }
            | CheckSpec::MetricSubregularity { operator, .. }
            | CheckSpec::Modulus { operator, .. }
            | CheckSpec::Monotone { operator, .. }
            | CheckSpec::PairMonotone { operator, .. }
            | CheckSpec::Coercive { operator, .. }
            | CheckSpec::Hoffman { operator, .. }
            | CheckSpec::ClosedGraph { operator, .. } => operator.as_ref(),
            CheckSpec::MatrixCertificate { .. } | CheckSpec::SequenceRate { .. } => None,
        }
    }

    pub fn needs_operator(&self) -> bool {
        !matches!(
            self,
            CheckSpec::MatrixCertificate { .. } | CheckSpec::SequenceRate { .. }
        )
    }
}

/// Raw scenario document as written on disk.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScenarioDoc {
    pub name: String,
    pub description: Option<String>,
    pub seed: Option<u64>,
    pub operator_spec: Option<OperatorSpec>,
    pub solution_spec: Option<SolutionSpec>,
    pub modulus_spec: Option<ModulusSpec>,
    pub ppa_config: Option<PpaSpec>,
    #[serde(default)]
    pub probes: Vec<ProbeSpec>,
    pub output_dir: Option<String>,
}
