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

//! Convex functions whose subdifferentials drive proximal point runs.

use nalgebra::{DMatrix, DVector};

use super::model::SetValuedMap;
use super::OperatorError;
use crate::setgeom::{Point, SolutionSet, ValueSet, MAX_DIM};

#[derive(Clone, Debug, PartialEq)]
pub enum ConvexKind {
    /// `x ↦ ½ xᵀQx + bᵀx`.
    Quadratic {
        q: DMatrix<f64>,
        b: DVector<f64>,
    },
    AbsSum {
        dim: usize,
    },
    /// `x ↦ Σ x_i^power / power` with `power` even.
    PowerEven {
        power: u32,
        dim: usize,
    },
    /// `x ↦ ½ |Ax - b|²`.
    LeastSquares {
        a: DMatrix<f64>,
        b: DVector<f64>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexFunctionModel {
    kind: ConvexKind,
    inf_value: f64,
    minimizers: ValueSet,
}

fn check_dim(dim: usize) -> Result<(), OperatorError> {
    if dim == 0 || dim > MAX_DIM {
        return Err(OperatorError::InvalidModel(format!(
            "dimension {dim} outside 1..=4"
        )));
    }
    Ok(())
}

impl ConvexFunctionModel {
    pub fn quadratic(q: DMatrix<f64>, b: DVector<f64>) -> Result<Self, OperatorError> {
        let n = q.nrows();
        check_dim(n)?;
        if !q.is_square() || b.len() != n {
            return Err(OperatorError::InvalidModel(
                "Q must be square and match b".into(),
            ));
        }
        if q.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(OperatorError::InvalidModel(
                "non-finite quadratic coefficients".into(),
            ));
        }
        let scale = q.amax().max(1.0);
        if (&q - q.transpose()).amax() > 1e-12 * scale {
            return Err(OperatorError::InvalidModel("Q is not symmetric".into()));
        }
        if q.clone().symmetric_eigenvalues().min() < -1e-10 * scale {
            return Err(OperatorError::InvalidModel(
                "Q is not positive semidefinite".into(),
            ));
        }
        let grad = SetValuedMap::Sum(vec![
            SetValuedMap::Linear(q.clone()),
            SetValuedMap::Constant(Point::new(b.iter().copied().collect())?),
        ]);
        let minimizers = grad.inverse_image(&Point::zeros(n))?;
        let Some(x) = minimizers_anchor(&minimizers) else {
            return Err(OperatorError::InvalidModel(
                "quadratic is unbounded below".into(),
            ));
        };
        let kind = ConvexKind::Quadratic { q, b };
        let inf_value = eval(&kind, &x);
        Ok(Self {
            kind,
            inf_value,
            minimizers,
        })
    }

    pub fn abs_sum(dim: usize) -> Result<Self, OperatorError> {
        check_dim(dim)?;
        Ok(Self {
            kind: ConvexKind::AbsSum { dim },
            inf_value: 0.0,
            minimizers: ValueSet::Singleton(Point::zeros(dim)),
        })
    }

    /// Even powers from 2 to 10.
    pub fn power_even(power: u32, dim: usize) -> Result<Self, OperatorError> {
        check_dim(dim)?;
        if power % 2 != 0 || power == 0 || power > 10 {
            return Err(OperatorError::InvalidModel(format!(
                "power must be even in 2..=10, got {power}"
            )));
        }
        Ok(Self {
            kind: ConvexKind::PowerEven { power, dim },
            inf_value: 0.0,
            minimizers: ValueSet::Singleton(Point::zeros(dim)),
        })
    }

    pub fn least_squares(a: DMatrix<f64>, b: DVector<f64>) -> Result<Self, OperatorError> {
        check_dim(a.nrows())?;
        check_dim(a.ncols())?;
        if b.len() != a.nrows() || a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(OperatorError::InvalidModel(
                "A and b must be finite and match".into(),
            ));
        }
        let grad = Self::least_squares_gradient(&a, &b)?;
        let minimizers = grad.inverse_image(&Point::zeros(a.ncols()))?;
        let x = minimizers_anchor(&minimizers)
            .ok_or_else(|| OperatorError::Unsupported("least-squares minimizer set".into()))?;
        let kind = ConvexKind::LeastSquares { a, b };
        let inf_value = eval(&kind, &x);
        Ok(Self {
            kind,
            inf_value,
            minimizers,
        })
    }

    fn least_squares_gradient(
        a: &DMatrix<f64>,
        b: &DVector<f64>,
    ) -> Result<SetValuedMap, OperatorError> {
        let atb = -(a.transpose() * b);
        Ok(SetValuedMap::Sum(vec![
            SetValuedMap::Linear(a.transpose() * a),
            SetValuedMap::Constant(Point::new(atb.iter().copied().collect())?),
        ]))
    }

    pub fn kind(&self) -> &ConvexKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            ConvexKind::Quadratic { q, .. } => q.nrows(),
            ConvexKind::AbsSum { dim } | ConvexKind::PowerEven { dim, .. } => *dim,
            ConvexKind::LeastSquares { a, .. } => a.ncols(),
        }
    }

    pub fn inf_value(&self) -> f64 {
        self.inf_value
    }

    pub fn value(&self, x: &Point) -> Result<f64, OperatorError> {
        if x.dim() != self.dim() {
            return Err(OperatorError::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(eval(&self.kind, x))
    }

    /// The subdifferential as an operator model.
    pub fn subdifferential(&self) -> SetValuedMap {
        match &self.kind {
            ConvexKind::Quadratic { q, b } => {
                if b.iter().all(|&v| v == 0.0) {
                    SetValuedMap::Linear(q.clone())
                } else {
                    SetValuedMap::Sum(vec![
                        SetValuedMap::Linear(q.clone()),
                        SetValuedMap::Constant(
                            Point::new(b.iter().copied().collect()).expect("validated"),
                        ),
                    ])
                }
            }
            ConvexKind::AbsSum { dim } => SetValuedMap::SubgradAbsSum { dim: *dim },
            ConvexKind::PowerEven { power, dim } => SetValuedMap::PowerGradient {
                power: power - 1,
                dim: *dim,
            },
            ConvexKind::LeastSquares { a, b } => {
                Self::least_squares_gradient(a, b).expect("validated")
            }
        }
    }

    /// The minimizer set with `inf f` attached.
    pub fn solution_set(&self) -> SolutionSet {
        SolutionSet::new(self.minimizers.clone(), Some(self.inf_value))
            .expect("nonempty minimizer set")
    }
}

/// A concrete point of an (axis-aligned) minimizer set.
fn minimizers_anchor(set: &ValueSet) -> Option<Point> {
    match set {
        ValueSet::Singleton(p) => Some(p.clone()),
        ValueSet::Box { lo, hi } => Point::new(
            lo.iter()
                .zip(hi)
                .map(|(&l, &h)| {
                    if l.is_finite() {
                        l
                    } else if h.is_finite() {
                        h
                    } else {
                        0.0
                    }
                })
                .collect(),
        )
        .ok(),
        ValueSet::HalfLine1D { anchor, .. } => Some(Point::scalar(*anchor)),
        _ => None,
    }
}

fn eval(kind: &ConvexKind, x: &Point) -> f64 {
    let xv = DVector::from_column_slice(x.coords());
    match kind {
        ConvexKind::Quadratic { q, b } => 0.5 * xv.dot(&(q * &xv)) + b.dot(&xv),
        ConvexKind::AbsSum { .. } => x.coords().iter().map(|v| v.abs()).sum(),
        ConvexKind::PowerEven { power, .. } => {
            x.coords()
                .iter()
                .map(|v| v.powi(*power as i32))
                .sum::<f64>()
                / f64::from(*power)
        }
        ConvexKind::LeastSquares { a, b } => 0.5 * (a * &xv - b).norm_squared(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_inf_and_minimizers() {
        let f = ConvexFunctionModel::quadratic(
            DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.0]),
            DVector::from_vec(vec![-2.0, 0.0]),
        )
        .unwrap();
        assert!((f.inf_value() + 1.0).abs() < 1e-12);
        let s = f.solution_set();
        assert_eq!(
            s.distance(&Point::from_slice(&[1.0, 7.0]).unwrap())
                .unwrap(),
            0.0
        );
        assert!(ConvexFunctionModel::quadratic(
            DMatrix::from_row_slice(1, 1, &[0.0]),
            DVector::from_vec(vec![1.0]),
        )
        .is_err());
    }

    #[test]
    fn least_squares_inf() {
        let f = ConvexFunctionModel::least_squares(
            DMatrix::from_row_slice(2, 1, &[1.0, 1.0]),
            DVector::from_vec(vec![0.0, 2.0]),
        )
        .unwrap();
        assert!((f.inf_value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn power_even_subdifferential() {
        let f = ConvexFunctionModel::power_even(4, 1).unwrap();
        assert_eq!(
            f.subdifferential(),
            SetValuedMap::PowerGradient { power: 3, dim: 1 }
        );
        assert_eq!(f.value(&Point::scalar(2.0)).unwrap(), 4.0);
    }
}
