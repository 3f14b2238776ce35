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

//! Range/kernel certificate for the inverse of a linear map.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::OperatorError;
use crate::setgeom::Point;

/// Eigenvalues of `A^T A` at or below this are treated as zero.
pub const EIGEN_THRESHOLD: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MatrixCertificate {
    /// `L = |A^T| / k`; zero for the zero matrix.
    pub lipschitz_l: f64,
    /// `k`, the smallest eigenvalue of `A^T A` above the threshold.
    pub smallest_positive_eig: f64,
    /// Spectral norm of `A^T`.
    pub transpose_norm: f64,
    pub rank: usize,
    /// Largest eigenvalue classified as zero, if any.
    pub largest_discarded_eig: Option<f64>,
    #[serde(skip)]
    pub range_basis: Vec<DVector<f64>>,
    #[serde(skip)]
    pub kernel_basis: Vec<DVector<f64>>,
}

impl MatrixCertificate {
    fn projector(basis: &[DVector<f64>], n: usize) -> DMatrix<f64> {
        basis
            .iter()
            .fold(DMatrix::zeros(n, n), |acc, v| acc + v * v.transpose())
    }

    pub fn range_projector(&self, n: usize) -> DMatrix<f64> {
        Self::projector(&self.range_basis, n)
    }

    pub fn kernel_projector(&self, n: usize) -> DMatrix<f64> {
        Self::projector(&self.kernel_basis, n)
    }
}

pub fn matrix_r_lipschitz(a: &DMatrix<f64>) -> Result<MatrixCertificate, OperatorError> {
    if a.nrows() == 0 || a.ncols() == 0 || a.iter().any(|v| !v.is_finite()) {
        return Err(OperatorError::InvalidModel(
            "matrix must be nonempty and finite".into(),
        ));
    }
    let ata = a.transpose() * a;
    let eig = ata.symmetric_eigen();
    let mut range_basis = Vec::new();
    let mut kernel_basis = Vec::new();
    let mut k = f64::INFINITY;
    let mut max_eig = 0.0_f64;
    let mut discarded: Option<f64> = None;
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(i).into_owned();
        max_eig = max_eig.max(lambda);
        if lambda > EIGEN_THRESHOLD {
            k = k.min(lambda);
            range_basis.push(v);
        } else {
            discarded = Some(discarded.map_or(lambda, |d| d.max(lambda)));
            kernel_basis.push(v);
        }
    }
    let transpose_norm = max_eig.max(0.0).sqrt();
    if range_basis.is_empty() {
        return Ok(MatrixCertificate {
            lipschitz_l: 0.0,
            smallest_positive_eig: 0.0,
            transpose_norm,
            rank: 0,
            largest_discarded_eig: discarded,
            range_basis,
            kernel_basis,
        });
    }
    Ok(MatrixCertificate {
        lipschitz_l: transpose_norm / k,
        smallest_positive_eig: k,
        transpose_norm,
        rank: range_basis.len(),
        largest_discarded_eig: discarded,
        range_basis,
        kernel_basis,
    })
}

/// The preimage of `ybar` closest in the certificate's sense to `x`:
/// the range part of `xprime` plus the kernel part of `x`.
pub fn matched_preimage(
    a: &DMatrix<f64>,
    cert: &MatrixCertificate,
    x: &Point,
    ybar: &Point,
    xprime: &Point,
) -> Result<Point, OperatorError> {
    let n = a.ncols();
    for (p, expected) in [(x, n), (xprime, n), (ybar, a.nrows())] {
        if p.dim() != expected {
            return Err(OperatorError::DimensionMismatch {
                expected,
                found: p.dim(),
            });
        }
    }
    let xp = DVector::from_column_slice(xprime.coords());
    let yb = DVector::from_column_slice(ybar.coords());
    let residual = (a * &xp - &yb).norm();
    if residual > 1e-9 * (1.0 + yb.norm()) {
        return Err(OperatorError::Precondition(format!(
            "xprime is not a preimage of ybar (residual {residual:e})"
        )));
    }
    let xv = DVector::from_column_slice(x.coords());
    let xbar = cert.range_projector(n) * xp + cert.kernel_projector(n) * xv;
    Ok(Point::new(xbar.iter().copied().collect())?)
}
