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

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::OperatorError;
use crate::setgeom::{Point, MAX_DIM};

/// Direction of an axis-aligned ray in the `(x, y)` graph plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum RayDirection {
    Up,
    Down,
    Left,
    Right,
}

impl RayDirection {
    pub fn vector(self) -> (f64, f64) {
        match self {
            RayDirection::Up => (0.0, 1.0),
            RayDirection::Down => (0.0, -1.0),
            RayDirection::Left => (-1.0, 0.0),
            RayDirection::Right => (1.0, 0.0),
        }
    }

    /// The same ray after swapping the roles of `x` and `y`.
    pub fn reflected(self) -> RayDirection {
        match self {
            RayDirection::Up => RayDirection::Right,
            RayDirection::Right => RayDirection::Up,
            RayDirection::Down => RayDirection::Left,
            RayDirection::Left => RayDirection::Down,
        }
    }
}

/// One closed piece of a 1D graph, in `(x, y)` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum GraphPiece {
    Segment {
        start: (f64, f64),
        end: (f64, f64),
    },
    Ray {
        origin: (f64, f64),
        direction: RayDirection,
    },
}

impl GraphPiece {
    pub fn reflected(self) -> GraphPiece {
        match self {
            GraphPiece::Segment { start, end } => GraphPiece::Segment {
                start: (start.1, start.0),
                end: (end.1, end.0),
            },
            GraphPiece::Ray { origin, direction } => GraphPiece::Ray {
                origin: (origin.1, origin.0),
                direction: direction.reflected(),
            },
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            GraphPiece::Segment { start, end } => {
                start.0.is_finite() && start.1.is_finite() && end.0.is_finite() && end.1.is_finite()
            }
            GraphPiece::Ray { origin, .. } => origin.0.is_finite() && origin.1.is_finite(),
        }
    }
}

/// Single-valued scalar functions applied coordinatewise by
/// [`SetValuedMap::Elementwise`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ScalarFn {
    SinAbs,
    CosAbs,
    /// `1` for `t > 0`, `0` otherwise. Its graph is not closed at zero.
    Heaviside,
}

impl ScalarFn {
    pub fn apply(self, t: f64) -> f64 {
        match self {
            ScalarFn::SinAbs => t.abs().sin(),
            ScalarFn::CosAbs => t.abs().cos(),
            ScalarFn::Heaviside => {
                if t > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    fn is_nondecreasing(self) -> bool {
        matches!(self, ScalarFn::Heaviside)
    }
}

/// Representable set-valued operator `A : R^n ⇉ R^m`.
#[derive(Clone, Debug, PartialEq)]
pub enum SetValuedMap {
    Zero {
        dim: usize,
    },
    Identity {
        dim: usize,
    },
    /// `x ↦ {c}`.
    Constant(Point),
    /// `x ↦ {Mx}`, `M` of size `m × n`.
    Linear(DMatrix<f64>),
    SignComponentwise {
        dim: usize,
    },
    /// Subdifferential of `x ↦ Σ|x_i|`.
    SubgradAbsSum {
        dim: usize,
    },
    /// `x ↦ (x_i^p)_i`, the gradient of `Σ x_i^{p+1}/(p+1)`; `p` odd.
    PowerGradient {
        power: u32,
        dim: usize,
    },
    PiecewiseGraph1D(Vec<GraphPiece>),
    Sum(Vec<SetValuedMap>),
    InverseOf(Box<SetValuedMap>),
    Scaled(f64, Box<SetValuedMap>),
    /// `x ↦ outer(inner · x)`.
    Composed {
        outer: Box<SetValuedMap>,
        inner: DMatrix<f64>,
    },
    /// `x ↦ (f_i(x_i))_i`.
    Elementwise(Vec<ScalarFn>),
}

fn check_dim(dim: usize) -> Result<(), OperatorError> {
    if dim == 0 || dim > MAX_DIM {
        Err(OperatorError::InvalidModel(format!(
            "dimension {dim} outside 1..=4"
        )))
    } else {
        Ok(())
    }
}

fn check_matrix(m: &DMatrix<f64>) -> Result<(), OperatorError> {
    check_dim(m.nrows())?;
    check_dim(m.ncols())?;
    if m.iter().any(|v| !v.is_finite()) {
        return Err(OperatorError::InvalidModel(
            "matrix has non-finite entries".into(),
        ));
    }
    Ok(())
}

impl SetValuedMap {
    pub fn zero(dim: usize) -> Result<Self, OperatorError> {
        check_dim(dim)?;
        Ok(SetValuedMap::Zero { dim })
    }

    pub fn identity(dim: usize) -> Result<Self, OperatorError> {
        check_dim(dim)?;
        Ok(SetValuedMap::Identity { dim })
    }

    pub fn constant(c: Point) -> Self {
        SetValuedMap::Constant(c)
    }

    pub fn linear(m: DMatrix<f64>) -> Result<Self, OperatorError> {
        check_matrix(&m)?;
        Ok(SetValuedMap::Linear(m))
    }

    /// Row-major constructor.
    pub fn linear_from_rows(rows: &[Vec<f64>]) -> Result<Self, OperatorError> {
        Self::linear(matrix_from_rows(rows)?)
    }

    pub fn sign(dim: usize) -> Result<Self, OperatorError> {
        check_dim(dim)?;
        Ok(SetValuedMap::SignComponentwise { dim })
    }

    pub fn subgrad_abs_sum(dim: usize) -> Result<Self, OperatorError> {
        check_dim(dim)?;
        Ok(SetValuedMap::SubgradAbsSum { dim })
    }

    /// Odd powers up to 9 keep the resolvent root well conditioned.
    pub fn power_gradient(power: u32, dim: usize) -> Result<Self, OperatorError> {
        check_dim(dim)?;
        if power % 2 == 0 || power > 9 {
            return Err(OperatorError::InvalidModel(format!(
                "power must be odd and at most 9, got {power}"
            )));
        }
        Ok(SetValuedMap::PowerGradient { power, dim })
    }

    pub fn piecewise_graph(pieces: Vec<GraphPiece>) -> Result<Self, OperatorError> {
        if pieces.is_empty() {
            return Err(OperatorError::InvalidModel("graph has no pieces".into()));
        }
        if !pieces.iter().all(GraphPiece::is_finite) {
            return Err(OperatorError::InvalidModel(
                "graph piece with non-finite coordinates".into(),
            ));
        }
        Ok(SetValuedMap::PiecewiseGraph1D(pieces))
    }

    pub fn sum(members: Vec<SetValuedMap>) -> Result<Self, OperatorError> {
        let Some(first) = members.first() else {
            return Err(OperatorError::InvalidModel("empty sum".into()));
        };
        let (n, m) = (first.input_dim(), first.output_dim());
        for member in &members {
            if member.input_dim() != n || member.output_dim() != m {
                return Err(OperatorError::DimensionMismatch {
                    expected: n,
                    found: member.input_dim(),
                });
            }
        }
        Ok(SetValuedMap::Sum(members))
    }

    pub fn inverse(map: SetValuedMap) -> Self {
        match map {
            SetValuedMap::InverseOf(inner) => *inner,
            other => SetValuedMap::InverseOf(Box::new(other)),
        }
    }

    pub fn scaled(factor: f64, map: SetValuedMap) -> Result<Self, OperatorError> {
        if !factor.is_finite() {
            return Err(OperatorError::InvalidModel(format!(
                "scale factor {factor} is not finite"
            )));
        }
        Ok(SetValuedMap::Scaled(factor, Box::new(map)))
    }

    pub fn composed(outer: SetValuedMap, inner: DMatrix<f64>) -> Result<Self, OperatorError> {
        check_matrix(&inner)?;
        if outer.input_dim() != inner.nrows() {
            return Err(OperatorError::DimensionMismatch {
                expected: outer.input_dim(),
                found: inner.nrows(),
            });
        }
        Ok(SetValuedMap::Composed {
            outer: Box::new(outer),
            inner,
        })
    }

    pub fn elementwise(fns: Vec<ScalarFn>) -> Result<Self, OperatorError> {
        check_dim(fns.len())?;
        Ok(SetValuedMap::Elementwise(fns))
    }

    pub fn input_dim(&self) -> usize {
        match self {
            SetValuedMap::Zero { dim }
            | SetValuedMap::Identity { dim }
            | SetValuedMap::SignComponentwise { dim }
            | SetValuedMap::SubgradAbsSum { dim }
            | SetValuedMap::PowerGradient { dim, .. } => *dim,
            SetValuedMap::Constant(c) => c.dim(),
            SetValuedMap::Linear(m) => m.ncols(),
            SetValuedMap::PiecewiseGraph1D(_) => 1,
            SetValuedMap::Sum(ms) => ms[0].input_dim(),
            SetValuedMap::InverseOf(m) => m.output_dim(),
            SetValuedMap::Scaled(_, m) => m.input_dim(),
            SetValuedMap::Composed { inner, .. } => inner.ncols(),
            SetValuedMap::Elementwise(fns) => fns.len(),
        }
    }

    pub fn output_dim(&self) -> usize {
        match self {
            SetValuedMap::Linear(m) => m.nrows(),
            SetValuedMap::Sum(ms) => ms[0].output_dim(),
            SetValuedMap::InverseOf(m) => m.input_dim(),
            SetValuedMap::Scaled(_, m) => m.output_dim(),
            SetValuedMap::Composed { outer, .. } => outer.output_dim(),
            _ => self.input_dim(),
        }
    }

    /// `x ↦ Mx + c` when the model is affine and single-valued.
    pub fn as_affine(&self) -> Option<(DMatrix<f64>, DVector<f64>)> {
        match self {
            SetValuedMap::Zero { dim } => Some((DMatrix::zeros(*dim, *dim), DVector::zeros(*dim))),
            SetValuedMap::Identity { dim } => {
                Some((DMatrix::identity(*dim, *dim), DVector::zeros(*dim)))
            }
            SetValuedMap::Constant(c) => Some((
                DMatrix::zeros(c.dim(), c.dim()),
                DVector::from_column_slice(c.coords()),
            )),
            SetValuedMap::Linear(m) => Some((m.clone(), DVector::zeros(m.nrows()))),
            SetValuedMap::Scaled(f, m) => m.as_affine().map(|(a, c)| (a * *f, c * *f)),
            SetValuedMap::Sum(ms) => {
                let mut acc: Option<(DMatrix<f64>, DVector<f64>)> = None;
                for member in ms {
                    let (a, c) = member.as_affine()?;
                    acc = Some(match acc {
                        None => (a, c),
                        Some((a0, c0)) => (a0 + a, c0 + c),
                    });
                }
                acc
            }
            SetValuedMap::Composed { outer, inner } => {
                outer.as_affine().map(|(a, c)| (a * inner, c))
            }
            _ => None,
        }
    }

    /// The 1D model acting on coordinate `i`, for coordinatewise maps.
    pub fn component(&self, i: usize) -> Option<SetValuedMap> {
        match self {
            SetValuedMap::Zero { .. } => Some(SetValuedMap::Zero { dim: 1 }),
            SetValuedMap::Identity { .. } => Some(SetValuedMap::Identity { dim: 1 }),
            SetValuedMap::Constant(c) => Some(SetValuedMap::Constant(Point::scalar(c[i]))),
            SetValuedMap::Linear(m) => {
                let diagonal = m.is_square()
                    && (0..m.nrows()).all(|r| (0..m.ncols()).all(|c| r == c || m[(r, c)] == 0.0));
                diagonal.then(|| SetValuedMap::Linear(DMatrix::from_element(1, 1, m[(i, i)])))
            }
            SetValuedMap::SignComponentwise { .. } => {
                Some(SetValuedMap::SignComponentwise { dim: 1 })
            }
            SetValuedMap::SubgradAbsSum { .. } => Some(SetValuedMap::SubgradAbsSum { dim: 1 }),
            SetValuedMap::PowerGradient { power, .. } => Some(SetValuedMap::PowerGradient {
                power: *power,
                dim: 1,
            }),
            SetValuedMap::PiecewiseGraph1D(_) => (i == 0).then(|| self.clone()),
            SetValuedMap::Sum(ms) => ms
                .iter()
                .map(|m| m.component(i))
                .collect::<Option<Vec<_>>>()
                .map(SetValuedMap::Sum),
            SetValuedMap::InverseOf(m) => {
                m.component(i).map(|c| SetValuedMap::InverseOf(Box::new(c)))
            }
            SetValuedMap::Scaled(f, m) => m
                .component(i)
                .map(|c| SetValuedMap::Scaled(*f, Box::new(c))),
            SetValuedMap::Composed { .. } => None,
            SetValuedMap::Elementwise(fns) => Some(SetValuedMap::Elementwise(vec![fns[i]])),
        }
    }

    /// Structural monotonicity test for the supported models. Returns the
    /// reason when the model is not (or cannot be shown to be) monotone.
    pub fn ensure_monotone(&self) -> Result<(), OperatorError> {
        match self {
            SetValuedMap::Zero { .. }
            | SetValuedMap::Identity { .. }
            | SetValuedMap::Constant(_)
            | SetValuedMap::SignComponentwise { .. }
            | SetValuedMap::SubgradAbsSum { .. }
            | SetValuedMap::PowerGradient { .. } => Ok(()),
            SetValuedMap::Linear(m) => ensure_psd_part(m),
            SetValuedMap::PiecewiseGraph1D(pieces) => super::graph::ensure_monotone_graph(pieces),
            SetValuedMap::Sum(ms) => ms.iter().try_for_each(SetValuedMap::ensure_monotone),
            SetValuedMap::InverseOf(m) => m.ensure_monotone(),
            SetValuedMap::Scaled(f, m) => {
                if *f < 0.0 {
                    Err(OperatorError::NotMonotone(format!(
                        "negative scale factor {f}"
                    )))
                } else if *f == 0.0 {
                    Ok(())
                } else {
                    m.ensure_monotone()
                }
            }
            SetValuedMap::Composed { .. } => match self.as_affine() {
                Some((a, _)) => ensure_psd_part(&a),
                None => Err(OperatorError::NotMonotone(
                    "composition with a nonlinear outer map".into(),
                )),
            },
            SetValuedMap::Elementwise(fns) => {
                if fns.iter().all(|f| f.is_nondecreasing()) {
                    Ok(())
                } else {
                    Err(OperatorError::NotMonotone(
                        "elementwise function is not nondecreasing".into(),
                    ))
                }
            }
        }
    }
}

fn ensure_psd_part(m: &DMatrix<f64>) -> Result<(), OperatorError> {
    if !m.is_square() {
        return Err(OperatorError::NotMonotone(format!(
            "{}×{} matrix is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    let sym = (m + m.transpose()) * 0.5;
    let scale = m.amax().max(1.0);
    let min_eig = sym.symmetric_eigenvalues().min();
    if min_eig < -1e-10 * scale {
        return Err(OperatorError::NotMonotone(format!(
            "symmetric part has eigenvalue {min_eig}"
        )));
    }
    Ok(())
}

pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>, OperatorError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(OperatorError::InvalidModel(
            "matrix rows must be nonempty and of equal length".into(),
        ));
    }
    let m = DMatrix::from_fn(nrows, ncols, |r, c| rows[r][c]);
    check_matrix(&m)?;
    Ok(m)
}
