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
use ppa_core::operators::{ConvexFunctionModel, SetValuedMap};
use ppa_core::ppa::{
    certify_distance_bound, certify_linear_rate, run_ppa, PpaConfig, PpaTrajectory, Problem,
};
use ppa_core::regularity::ModulusFunction;
use ppa_core::setgeom::{project, ValueSet};
use ppa_core::{Point, SolutionSet};
use proptest::prelude::*;

fn functions() -> Vec<ConvexFunctionModel> {
    vec![
        ConvexFunctionModel::quadratic(
            DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]),
            DVector::from_vec(vec![1.0, -1.0]),
        )
        .unwrap(),
        ConvexFunctionModel::abs_sum(2).unwrap(),
        ConvexFunctionModel::power_even(4, 2).unwrap(),
        ConvexFunctionModel::least_squares(
            DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 1.0, 1.0, 0.0, 2.0]),
            DVector::from_vec(vec![1.0, 0.0, -1.0]),
        )
        .unwrap(),
    ]
}

fn run(
    f: &ConvexFunctionModel,
    gamma: f64,
    x0: &Point,
    iters: usize,
    every: usize,
) -> PpaTrajectory {
    let cfg = PpaConfig::new(gamma, x0.clone(), iters)
        .unwrap()
        .with_record_every(every)
        .unwrap();
    run_ppa(
        &Problem::Function(f.clone()),
        &cfg,
        Some(&f.solution_set()),
        Some(1.0),
    )
    .unwrap()
}

/// A few points of the solution set to test Fejér monotonicity against.
fn solution_samples(s: &SolutionSet) -> Vec<Point> {
    let probes = [[0.0, 0.0], [3.0, -2.0], [-5.0, 4.0]];
    probes
        .iter()
        .map(|p| project(&Point::from_slice(p).unwrap(), s.set()).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trajectory_invariants(x in prop::collection::vec(-4.0..4.0f64, 2), g in 0.1..5.0f64) {
        let x0 = Point::new(x).unwrap();
        for f in functions() {
            let t = run(&f, g, &x0, 60, 1);
            let steps = t.step_norms();
            for w in steps.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-12);
            }
            for r in &t.records {
                prop_assert!(r.next_value.unwrap() <= r.value.unwrap() + 1e-12);
                prop_assert!(r.inclusion_residual.unwrap() <= 1e-8);
            }
            let iterates = t.iterates();
            for xbar in solution_samples(&f.solution_set()) {
                for w in iterates.windows(2) {
                    prop_assert!(w[1].distance_to(&xbar) <= w[0].distance_to(&xbar) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn thinning_keeps_verdicts(x0 in -3.0..3.0f64, every in 2usize..7) {
        let q = ConvexFunctionModel::quadratic(DMatrix::from_element(1, 1, 1.0), DVector::zeros(1)).unwrap();
        let quartic = ConvexFunctionModel::power_even(4, 1).unwrap();
        let p = Point::scalar(x0);
        let lin = ModulusFunction::lipschitz(1.0, f64::INFINITY).unwrap();
        let cube = ModulusFunction::power_law(1.0, 1.0 / 3.0, 1.0).unwrap();
        let full = certify_linear_rate(&run(&q, 3.0, &p, 40, 1), 1.0);
        let thin = certify_linear_rate(&run(&q, 3.0, &p, 40, every), 1.0);
        prop_assert_eq!(full.status, thin.status);
        let full = certify_distance_bound(&run(&quartic, 1.0, &p, 80, 1), &cube);
        let thin = certify_distance_bound(&run(&quartic, 1.0, &p, 80, every), &cube);
        prop_assert_eq!(full.status, thin.status);
        let full = certify_distance_bound(&run(&q, 3.0, &p, 40, 1), &lin);
        let thin = certify_distance_bound(&run(&q, 3.0, &p, 40, every), &lin);
        prop_assert_eq!(full.status, thin.status);
    }
}

#[test]
fn zero_map_certifies_vacuously() {
    let cfg = PpaConfig::new(1.0, Point::scalar(4.0), 20).unwrap();
    let s = SolutionSet::new(ValueSet::whole(1), Some(0.0)).unwrap();
    let t = run_ppa(
        &Problem::Operator(SetValuedMap::zero(1).unwrap()),
        &cfg,
        Some(&s),
        None,
    )
    .unwrap();
    assert!(t
        .records
        .iter()
        .all(|r| r.distance == Some(0.0) && r.step_norm == 0.0));
    assert!(certify_linear_rate(&t, 0.25).passed());
}
