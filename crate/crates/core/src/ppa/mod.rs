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

//! The proximal point iteration and certification of its rate guarantees on
//! recorded trajectories.

mod certify;
mod run;
mod sequence;

use thiserror::Error;

use crate::operators::OperatorError;
use crate::setgeom::GeomError;

pub use certify::{
    certify_distance_bound, certify_linear_rate, certify_step_decay, certify_value_gap,
    loglog_slope, BoundViolation, CertStatus, Certification, CheckKind, RateReport,
    MIN_TAIL_POINTS, SLACK_ABS, SLACK_REL,
};
pub use run::{run_ppa, PpaConfig, PpaRecord, PpaTrajectory, Problem};
pub use sequence::{sequence_rate_check, square_indexed_sequence, Hypothesis, SequenceVerdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PpaError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("resolvent failed at iteration {iteration}: {source}")]
    Operator {
        iteration: usize,
        #[source]
        source: OperatorError,
    },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{ConvexFunctionModel, SetValuedMap};
    use crate::regularity::ModulusFunction;
    use crate::setgeom::{Point, SolutionSet, ValueSet};
    use nalgebra::{DMatrix, DVector};

    fn quadratic() -> ConvexFunctionModel {
        ConvexFunctionModel::quadratic(DMatrix::from_element(1, 1, 1.0), DVector::zeros(1)).unwrap()
    }

    fn run(
        f: &ConvexFunctionModel,
        gamma: f64,
        x0: f64,
        iters: usize,
        radius: Option<f64>,
    ) -> PpaTrajectory {
        let cfg = PpaConfig::new(gamma, Point::scalar(x0), iters).unwrap();
        run_ppa(
            &Problem::Function(f.clone()),
            &cfg,
            Some(&f.solution_set()),
            radius,
        )
        .unwrap()
    }

    #[test]
    fn quadratic_iterates_quarter() {
        let t = run(&quadratic(), 3.0, 1.0, 40, None);
        for r in &t.records {
            assert_eq!(r.iterate[0], 4f64.powi(-(r.n as i32)));
        }
        let lr = certify_linear_rate(&t, 1.0);
        assert_eq!(lr.status, CertStatus::Pass);
        assert_eq!(lr.kappa, Some(2.0 / 3.0));
        assert_eq!(lr.observed_contraction, Some(0.25));
        let t = run(&quadratic(), 1.5, 1.0, 40, None);
        let lr = certify_linear_rate(&t, 1.0);
        assert_eq!(lr.status, CertStatus::Inapplicable);
        assert!(lr.detail.starts_with("γ ≤ 2L: inapplicable"));
    }

    #[test]
    fn abs_converges_finitely() {
        let f = ConvexFunctionModel::abs_sum(1).unwrap();
        let t = run(&f, 1.0, 2.5, 20, None);
        let xs: Vec<f64> = t.iterates().iter().take(5).map(|p| p[0]).collect();
        assert_eq!(xs, vec![2.5, 1.5, 0.5, 0.0, 0.0]);
        assert_eq!(t.step_sq_sum, 2.25);
        assert_eq!(certify_step_decay(&t, 2.5).status, CertStatus::Pass);
        assert_eq!(
            certify_value_gap(&t, &f.solution_set()).status,
            CertStatus::Pass
        );
    }

    #[test]
    fn zero_map_is_constant() {
        let cfg = PpaConfig::new(2.0, Point::from_slice(&[1.0, -3.0]).unwrap(), 10).unwrap();
        let s = SolutionSet::new(ValueSet::whole(2), Some(0.0)).unwrap();
        let t = run_ppa(
            &Problem::Operator(SetValuedMap::zero(2).unwrap()),
            &cfg,
            Some(&s),
            Some(1.0),
        )
        .unwrap();
        assert!(t.iterates().iter().all(|p| p.coords() == [1.0, -3.0]));
        assert_eq!(certify_step_decay(&t, 0.0).status, CertStatus::Pass);
        let m = ModulusFunction::lipschitz(1.0, 1.0).unwrap();
        assert_eq!(certify_distance_bound(&t, &m).status, CertStatus::Pass);
        assert_eq!(certify_linear_rate(&t, 0.1).status, CertStatus::Pass);
    }

    #[test]
    fn quartic_distance_bound() {
        let f = ConvexFunctionModel::power_even(4, 1).unwrap();
        let t = run(&f, 1.0, 1.0, 200, Some(1.0));
        let m = ModulusFunction::power_law(1.0, 1.0 / 3.0, 1.0).unwrap();
        let c = certify_distance_bound(&t, &m);
        assert_eq!(c.status, CertStatus::Pass, "{:?}", c.violations.first());
        let sd = certify_step_decay(&t, 0.25);
        assert_eq!(sd.status, CertStatus::Pass);
        assert!(sd.step_decay_exponent.unwrap() <= -0.9);
    }

    #[test]
    fn invalid_gamma_rejected() {
        assert!(matches!(
            PpaConfig::new(-1.0, Point::scalar(0.0), 3),
            Err(PpaError::InvalidConfig(_))
        ));
    }
}
