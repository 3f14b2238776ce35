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

//! Sampled estimators of the continuity modulus and comparators for
//! calmness, metric regularity and metric subregularity.
//!
//! Every verdict is a statement about the samples drawn: passing is
//! evidence, failing comes with a concrete witness.

mod hoffman;
mod modulus;
mod probes;
pub mod sampling;

use thiserror::Error;

use crate::operators::OperatorError;
use crate::setgeom::GeomError;

pub use hoffman::{
    check_closed_graph_at_zero, hoffman_consistency, ClosedGraphReport, GraphSequence,
    HoffmanEntry, HoffmanReport,
};
pub use modulus::{
    fit_modulus, log_grid, sum_modulus, ModulusFit, ModulusForm, ModulusFunction, DEGENERATE_L,
    LIPSCHITZ_EXPONENT_TOL, MAX_FIT_ERROR,
};
pub use probes::{
    check_calm, check_metric_regularity, check_metric_subregularity, estimate_modulus,
    metric_regularity_ratio, ratio, ModulusEstimate, Ratio, RegularityProbe, RegularityProperty,
    RegularityVerdict, DEFAULT_DIVERGENCE_CAP,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegularityError {
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("invalid probe: {0}")]
    InvalidProbe(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("witness off the graph: {0}")]
    OffGraph(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("fit rejected: exponent {exponent}, max relative error {max_relative_error}")]
    FitRejected {
        max_relative_error: f64,
        exponent: f64,
    },
    #[error("infinite excess at radius {radius}: not R-continuous")]
    NotRContinuous { radius: f64 },
    #[error("sequence does not converge: {0}")]
    NonConvergent(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{sign_inverse_graph, SetValuedMap};
    use crate::setgeom::Point;

    fn probe(x: f64, sigma: f64) -> RegularityProbe {
        RegularityProbe::new(Point::scalar(x), sigma, 200, 3).unwrap()
    }

    #[test]
    fn modulus_examples() {
        let radii = [1e-3, 1e-2, 1e-1, 1.0];
        let inv = SetValuedMap::inverse(sign_inverse_graph());
        let est = estimate_modulus(&inv, &Point::scalar(0.0), &radii, &probe(0.0, 1.0)).unwrap();
        assert!(est.modulus.table().unwrap().iter().all(|&(_, v)| v == 0.0));
        assert!(fit_modulus(&est.modulus).unwrap().modulus.degenerate);

        let id = SetValuedMap::identity(1).unwrap();
        let est = estimate_modulus(&id, &Point::scalar(0.0), &radii, &probe(0.0, 1.0)).unwrap();
        for &(r, v) in est.modulus.table().unwrap() {
            assert_eq!(v, r);
        }
        assert_eq!(
            fit_modulus(&est.modulus).unwrap().modulus.is_lipschitz(),
            Some(1.0)
        );

        let cbrt = SetValuedMap::inverse(SetValuedMap::power_gradient(3, 1).unwrap());
        let est =
            estimate_modulus(&cbrt, &Point::scalar(0.0), &radii[..3], &probe(0.0, 1.0)).unwrap();
        for &(r, v) in est.modulus.table().unwrap() {
            assert!((v / r.cbrt() - 1.0).abs() < 0.02);
        }
        let fit = fit_modulus(&est.modulus).unwrap();
        assert!((fit.exponent - 1.0 / 3.0).abs() < 0.05);
    }

    #[test]
    fn calm_and_regularity_examples() {
        let id = SetValuedMap::identity(1).unwrap();
        let p = probe(0.0, 1.0)
            .with_image_point(Point::scalar(0.0), 0.5)
            .unwrap();
        assert!((check_calm(&id, &p).unwrap().constant - 1.0).abs() < 1e-12);
        assert!((check_metric_regularity(&id, &p).unwrap().constant - 1.0).abs() < 1e-12);
        assert!((check_metric_subregularity(&id, &p).unwrap().constant - 1.0).abs() < 1e-12);

        let sign = SetValuedMap::sign(1).unwrap();
        let p = probe(0.0, 1.0)
            .with_image_point(Point::scalar(1.0), 0.5)
            .unwrap();
        let v = check_calm(&sign, &p).unwrap();
        assert_eq!(v.constant, 0.0);
        assert!(v.holds);

        let two = SetValuedMap::linear_from_rows(&[vec![2.0]]).unwrap();
        let p = probe(0.0, 1.0)
            .with_image_point(Point::scalar(0.0), 1.0)
            .unwrap();
        let v = check_metric_regularity(&two, &p).unwrap();
        assert!((v.constant - 0.5).abs() < 1e-12);
    }

    #[test]
    fn branch_map_fails_metric_regularity() {
        let g = sign_inverse_graph();
        let witnesses: Vec<_> = [1.0, 10.0, 100.0]
            .iter()
            .map(|n| (Point::scalar(1.0), Point::scalar(-1.0 / n)))
            .collect();
        let p = probe(1.0, 0.5)
            .with_image_point(Point::scalar(0.0), 0.5)
            .unwrap()
            .with_witnesses(witnesses);
        let v = check_metric_regularity(&g, &p).unwrap();
        assert!(!v.holds);
        assert!((v.witness_ratios[2] - 200.0).abs() < 1e-9);

        let v = check_metric_subregularity(&g, &probe(0.0, 2.0)).unwrap();
        assert!(v.holds);

        let cube = SetValuedMap::power_gradient(3, 1).unwrap();
        assert!(
            !check_metric_subregularity(&cube, &probe(0.0, 1.0))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn hoffman_examples() {
        let id = SetValuedMap::identity(1).unwrap();
        let lin = ModulusFunction::lipschitz(1.0, 1.0).unwrap();
        let w = [(Point::scalar(0.3), Point::scalar(0.3))];
        assert!(hoffman_consistency(&id, &lin, 0.5, &w).unwrap().holds);

        let cube = SetValuedMap::power_gradient(3, 1).unwrap();
        let w = [(Point::scalar(0.1), Point::scalar(0.001))];
        let good = ModulusFunction::power_law(1.0, 1.0 / 3.0, 1.0).unwrap();
        assert!(hoffman_consistency(&cube, &good, 0.001, &w).unwrap().holds);
        let bad = hoffman_consistency(&cube, &lin, 0.001, &w).unwrap();
        assert_eq!(bad.violations, vec![0]);
        let off = [(Point::scalar(0.2), Point::scalar(0.001))];
        assert!(matches!(
            hoffman_consistency(&cube, &good, 0.001, &off),
            Err(RegularityError::OffGraph(_))
        ));
    }

    #[test]
    fn closed_graph_examples() {
        let n_max = 1_000_000;
        let harmonic = |s: f64, y: f64| {
            let xs: Vec<Point> = (1..=n_max)
                .step_by(997)
                .chain([n_max])
                .map(|n| Point::scalar(s / n as f64))
                .collect();
            let ys = vec![Point::scalar(y); xs.len()];
            GraphSequence {
                xs,
                ys,
                limit: Point::scalar(y),
            }
        };
        let sign = SetValuedMap::sign(1).unwrap();
        assert!(
            check_closed_graph_at_zero(&sign, &[harmonic(1.0, 1.0)], 1e-6)
                .unwrap()
                .consistent
        );
        let g = sign_inverse_graph();
        assert!(
            check_closed_graph_at_zero(&g, &[harmonic(-1.0, 0.0)], 1e-6)
                .unwrap()
                .consistent
        );
        let h = SetValuedMap::elementwise(vec![crate::operators::ScalarFn::Heaviside]).unwrap();
        let r = check_closed_graph_at_zero(&h, &[harmonic(1.0, 1.0)], 1e-6).unwrap();
        assert_eq!(r.violations, vec![0]);
    }
}
