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

use super::graph::graph_image;
use super::model::{GraphPiece, SetValuedMap};
use super::OperatorError;
use crate::setgeom::{Point, ValueSet};

const RANK_TOL: f64 = 1e-10;

fn sign_box(x: &Point) -> Result<ValueSet, OperatorError> {
    let (mut lo, mut hi) = (Vec::new(), Vec::new());
    for &v in x.coords() {
        let (l, h) = if v > 0.0 {
            (1.0, 1.0)
        } else if v < 0.0 {
            (-1.0, -1.0)
        } else {
            (-1.0, 1.0)
        };
        lo.push(l);
        hi.push(h);
    }
    normalized_box(lo, hi)
}

fn normalized_box(lo: Vec<f64>, hi: Vec<f64>) -> Result<ValueSet, OperatorError> {
    if lo == hi {
        return Ok(ValueSet::Singleton(Point::new(lo)?));
    }
    if lo.len() == 1 {
        return Ok(ValueSet::from_intervals_1d(vec![
            crate::setgeom::Interval::new(lo[0], hi[0]),
        ])?);
    }
    Ok(ValueSet::boxed(lo, hi)?)
}

fn to_point(v: &DVector<f64>) -> Result<Point, OperatorError> {
    Ok(Point::new(v.iter().copied().collect())?)
}

impl SetValuedMap {
    /// The image `A(x)`; the empty set when `x` lies outside the domain.
    pub fn image(&self, x: &Point) -> Result<ValueSet, OperatorError> {
        if x.dim() != self.input_dim() {
            return Err(OperatorError::DimensionMismatch {
                expected: self.input_dim(),
                found: x.dim(),
            });
        }
        match self {
            SetValuedMap::Zero { dim } => Ok(ValueSet::Singleton(Point::zeros(*dim))),
            SetValuedMap::Identity { .. } => Ok(ValueSet::Singleton(x.clone())),
            SetValuedMap::Constant(c) => Ok(ValueSet::Singleton(c.clone())),
            SetValuedMap::Linear(m) => {
                let v = m * DVector::from_column_slice(x.coords());
                Ok(ValueSet::Singleton(to_point(&v)?))
            }
            SetValuedMap::SignComponentwise { .. } | SetValuedMap::SubgradAbsSum { .. } => {
                sign_box(x)
            }
            SetValuedMap::PowerGradient { power, .. } => Ok(ValueSet::Singleton(Point::new(
                x.coords().iter().map(|v| v.powi(*power as i32)).collect(),
            )?)),
            SetValuedMap::PiecewiseGraph1D(pieces) => graph_image(pieces, x[0]),
            SetValuedMap::Sum(ms) => {
                let mut acc = ms[0].image(x)?;
                for member in &ms[1..] {
                    if acc.is_empty() {
                        return Ok(ValueSet::Empty);
                    }
                    let next = member.image(x)?;
                    acc = acc.minkowski_sum(&next)?;
                }
                Ok(acc)
            }
            SetValuedMap::InverseOf(m) => m.inverse_image(x),
            SetValuedMap::Scaled(f, m) => Ok(m.image(x)?.scale(*f)),
            SetValuedMap::Composed { outer, inner } => {
                let v = inner * DVector::from_column_slice(x.coords());
                outer.image(&to_point(&v)?)
            }
            SetValuedMap::Elementwise(fns) => Ok(ValueSet::Singleton(Point::new(
                fns.iter()
                    .zip(x.coords())
                    .map(|(f, &v)| f.apply(v))
                    .collect(),
            )?)),
        }
    }

    /// The image `A(x)`, rejecting points outside the domain.
    pub fn evaluate(&self, x: &Point) -> Result<ValueSet, OperatorError> {
        let img = self.image(x)?;
        if img.is_empty() {
            return Err(OperatorError::OutsideDomain(x.clone()));
        }
        Ok(img)
    }

    /// `A^{-1}(y) = {x : y in A(x)}` for the models where it is representable.
    pub fn inverse_image(&self, y: &Point) -> Result<ValueSet, OperatorError> {
        if y.dim() != self.output_dim() {
            return Err(OperatorError::DimensionMismatch {
                expected: self.output_dim(),
                found: y.dim(),
            });
        }
        let n = self.input_dim();
        match self {
            SetValuedMap::Identity { .. } => Ok(ValueSet::Singleton(y.clone())),
            SetValuedMap::Zero { .. } => Ok(if y.coords().iter().all(|&v| v == 0.0) {
                ValueSet::whole(n)
            } else {
                ValueSet::Empty
            }),
            SetValuedMap::Constant(c) => Ok(if y == c {
                ValueSet::whole(n)
            } else {
                ValueSet::Empty
            }),
            SetValuedMap::SignComponentwise { .. } | SetValuedMap::SubgradAbsSum { .. } => {
                let (mut lo, mut hi) = (Vec::new(), Vec::new());
                for &v in y.coords() {
                    let (l, h) = if v == 1.0 {
                        (0.0, f64::INFINITY)
                    } else if v == -1.0 {
                        (f64::NEG_INFINITY, 0.0)
                    } else if v.abs() < 1.0 {
                        (0.0, 0.0)
                    } else {
                        return Ok(ValueSet::Empty);
                    };
                    lo.push(l);
                    hi.push(h);
                }
                normalized_box(lo, hi)
            }
            SetValuedMap::PowerGradient { power, .. } => {
                let p = f64::from(*power);
                Ok(ValueSet::Singleton(
                    y.map(|v| v.signum() * v.abs().powf(1.0 / p)),
                ))
            }
            SetValuedMap::PiecewiseGraph1D(pieces) => {
                let reflected: Vec<GraphPiece> = pieces.iter().map(|p| p.reflected()).collect();
                graph_image(&reflected, y[0])
            }
            SetValuedMap::InverseOf(m) => m.image(y),
            SetValuedMap::Scaled(f, m) => {
                if *f == 0.0 {
                    SetValuedMap::Zero { dim: n }.inverse_image(y)
                } else {
                    m.inverse_image(&(y * (1.0 / f)))
                }
            }
            _ => match self.as_affine() {
                Some((a, c)) => affine_preimage(&a, &(DVector::from_column_slice(y.coords()) - c)),
                None => Err(OperatorError::Unsupported(
                    "inverse image of a non-affine composite model".into(),
                )),
            },
        }
    }
}

/// `{x : Mx = v}` as a singleton, an axis-aligned affine box, or empty.
fn affine_preimage(m: &DMatrix<f64>, v: &DVector<f64>) -> Result<ValueSet, OperatorError> {
    let n = m.ncols();
    let svd = m.clone().svd(true, true);
    let scale = svd.singular_values.max().max(1.0);
    let x = svd
        .clone()
        .pseudo_inverse(RANK_TOL * scale)
        .map_err(|e| OperatorError::Unsupported(e.to_string()))?
        * v;
    let residual = (m * &x - v).norm();
    if residual > 1e-9 * (1.0 + v.norm()) {
        return Ok(ValueSet::Empty);
    }
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    // Rows of V^T for zero singular values span the kernel; nalgebra does not
    // sort singular values, so filter by value rather than position.
    let kernel: Vec<DVector<f64>> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= RANK_TOL * scale)
        .map(|i| v_t.row(i).transpose())
        .chain(extra_kernel(v_t, n))
        .collect();
    if kernel.is_empty() {
        return Ok(ValueSet::Singleton(to_point(&x)?));
    }
    let proj = kernel
        .iter()
        .fold(DMatrix::zeros(n, n), |acc, k| acc + k * k.transpose());
    let (mut lo, mut hi) = (Vec::new(), Vec::new());
    for i in 0..n {
        let diag = proj[(i, i)];
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| proj[(i, j)].abs()).sum();
        if off > 1e-9 || (diag > 1e-9 && (diag - 1.0).abs() > 1e-9) {
            return Err(OperatorError::Unsupported(
                "solution set is an affine subspace that is not axis-aligned".into(),
            ));
        }
        if diag > 0.5 {
            lo.push(f64::NEG_INFINITY);
            hi.push(f64::INFINITY);
        } else {
            lo.push(x[i]);
            hi.push(x[i]);
        }
    }
    normalized_box(lo, hi)
}

/// Kernel directions missing from a thin SVD of a wide matrix.
fn extra_kernel(v_t: &DMatrix<f64>, n: usize) -> Vec<DVector<f64>> {
    let k = v_t.nrows();
    if k >= n {
        return Vec::new();
    }
    let mut basis: Vec<DVector<f64>> = (0..k).map(|i| v_t.row(i).transpose()).collect();
    let mut extra = Vec::new();
    for j in 0..n {
        let mut e = DVector::zeros(n);
        e[j] = 1.0;
        for b in &basis {
            let c = b.dot(&e);
            e -= b * c;
        }
        let norm = e.norm();
        if norm > 1e-6 {
            e /= norm;
            basis.push(e.clone());
            extra.push(e);
        }
        if basis.len() == n {
            break;
        }
    }
    extra
}
