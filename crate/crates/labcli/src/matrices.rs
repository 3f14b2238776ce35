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
//! Random matrix batches for the R-Lipschitz certificate.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ppa_core::operators::{matched_preimage, matrix_r_lipschitz, MatrixCertificate};
use ppa_core::{OperatorError, Point};

/// Tolerance on both the bound and the preimage residual.
pub const MATRIX_TOL: f64 = 1e-8;

/// `count` matrices with `1 <= m, n <= max_dim` and rank drawn uniformly in
/// `0..=min(m, n)`, built as products of random factors.
pub fn random_matrices(count: usize, max_dim: usize, seed: u64) -> Vec<DMatrix<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.random_range(1..=max_dim);
            let n = rng.random_range(1..=max_dim);
            let r = rng.random_range(0..=m.min(n));
            let left = DMatrix::from_fn(m, r, |_, _| rng.random_range(-2.0..=2.0));
            let right = DMatrix::from_fn(r, n, |_, _| rng.random_range(-2.0..=2.0));
            if r == 0 {
                DMatrix::zeros(m, n)
            } else {
                left * right
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MatrixCheck {
    pub rows: usize,
    pub cols: usize,
    pub certificate: MatrixCertificate,
    /// Smallest `L |Ax - ybar| - |x - xbar|` over the trials.
    pub worst_slack: f64,
    /// Largest `|A xbar - ybar|`.
    pub max_residual: f64,
    pub holds: bool,
}

/// Draws `trials` triples `(x, z)` with `ybar = A z` and checks
/// `|x - xbar| <= L |Ax - ybar|` and `A xbar = ybar` for the matched preimage.
pub fn check_matrix(
    a: &DMatrix<f64>,
    trials: usize,
    seed: u64,
) -> Result<MatrixCheck, OperatorError> {
    let cert = matrix_r_lipschitz(a)?;
    let (m, n) = a.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |len: usize| DVector::from_fn(len, |_, _| rng.random_range(-3.0..=3.0));
    let mut worst_slack = f64::INFINITY;
    let mut max_residual = 0.0_f64;
    for _ in 0..trials {
        let x = draw(n);
        let z = draw(n);
        let ybar = a * &z;
        let xbar = matched_preimage(
            a,
            &cert,
            &Point::from_slice(x.as_slice())?,
            &Point::from_slice(ybar.as_slice())?,
            &Point::from_slice(z.as_slice())?,
        )?;
        let xbar = DVector::from_column_slice(xbar.coords());
        let lhs = (&x - &xbar).norm();
        let rhs = cert.lipschitz_l * (a * &x - &ybar).norm();
        worst_slack = worst_slack.min(rhs - lhs);
        max_residual = max_residual.max((a * &xbar - &ybar).norm());
    }
    Ok(MatrixCheck {
        rows: m,
        cols: n,
        holds: worst_slack >= -MATRIX_TOL && max_residual <= MATRIX_TOL,
        certificate: cert,
        worst_slack,
        max_residual,
    })
}
