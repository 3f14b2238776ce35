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

mod common;

use nalgebra::{DMatrix, DVector};
use ppa_core::operators::{matched_preimage, matrix_r_lipschitz, sign_inverse_graph, SetValuedMap};
use ppa_core::regularity::{
    check_calm, check_metric_regularity, estimate_modulus, fit_modulus, RegularityProbe,
};
use ppa_core::Point;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn radii() -> Vec<f64> {
    (0..=12)
        .map(|k| 10f64.powf(-3.0 + 0.25 * k as f64))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn estimated_modulus_is_nondecreasing(seed in 0u64..1000, which in 0usize..4) {
        let maps = [
            SetValuedMap::identity(2).unwrap(),
            SetValuedMap::inverse(SetValuedMap::power_gradient(3, 2).unwrap()),
            SetValuedMap::sign(2).unwrap(),
            ppa_core::operators::strong_pair_b(),
        ];
        let probe = RegularityProbe::new(Point::zeros(2), 1.0, 64, seed).unwrap();
        let est = estimate_modulus(&maps[which], &Point::zeros(2), &radii(), &probe).unwrap();
        let table = est.modulus.table().unwrap();
        for w in table.windows(2) {
            prop_assert!(w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn calm_never_penalizes_empty_intersections(seed in 0u64..1000, y in prop::sample::select(vec![-1.0, 1.0])) {
        // Far from y, Sign(x) is the opposite value, so every intersection is empty.
        let sign = SetValuedMap::sign(1).unwrap();
        let probe = RegularityProbe::new(Point::scalar(0.0), 1.0, 64, seed)
            .unwrap()
            .with_image_point(Point::scalar(y), 0.5)
            .unwrap();
        let v = check_calm(&sign, &probe).unwrap();
        prop_assert!(v.holds);
        prop_assert_eq!(v.constant, 0.0);
    }
}

#[test]
fn r_lipschitz_at_zero_implies_calm() {
    // The branch-map inverse is Sign: R-Lipschitz at 0 with any modulus.
    let inv = SetValuedMap::inverse(sign_inverse_graph());
    for ybar in [-1.0, -0.5, 0.0, 0.25, 1.0] {
        let probe = RegularityProbe::new(Point::scalar(0.0), 1.0, 200, 1)
            .unwrap()
            .with_image_point(Point::scalar(ybar), 0.5)
            .unwrap();
        assert!(check_calm(&inv, &probe).unwrap().holds, "ybar = {ybar}");
    }
}

#[test]
fn inverse_linear_excess_within_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let (m, n) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let a = DMatrix::from_fn(m, n, |_, _| rng.random_range(-2.0..2.0));
        let cert = matrix_r_lipschitz(&a).unwrap();
        let pinv = common::pinv(&a);
        let to_p = |v: &DVector<f64>| Point::new(v.iter().copied().collect()).unwrap();
        let ybar = &a * DVector::from_fn(n, |_, _| rng.random_range(-2.0..2.0));
        let y = &a * DVector::from_fn(n, |_, _| rng.random_range(-2.0..2.0));
        if (&y - &ybar).norm() < 1e-9 {
            continue;
        }
        // A point of A^{-1}(y) and its matched partner in A^{-1}(ybar).
        let kernel_part = DVector::from_fn(n, |_, _| rng.random_range(-2.0..2.0));
        let x = &pinv * &y + (DMatrix::identity(n, n) - &pinv * &a) * kernel_part;
        let xbar =
            matched_preimage(&a, &cert, &to_p(&x), &to_p(&ybar), &to_p(&(&pinv * &ybar))).unwrap();
        let ratio = to_p(&x).distance_to(&xbar) / (&y - &ybar).norm();
        assert!(
            ratio <= cert.lipschitz_l + 1e-6,
            "{ratio} > {}",
            cert.lipschitz_l
        );
    }
}

#[test]
fn metric_regularity_constant_bounds_inverse_modulus() {
    for (k, rows) in [vec![vec![2.0]], vec![vec![0.5]], vec![vec![3.0]]]
        .iter()
        .enumerate()
    {
        let map = SetValuedMap::linear_from_rows(rows).unwrap();
        let probe = RegularityProbe::new(Point::scalar(0.0), 1.0, 200, k as u64)
            .unwrap()
            .with_image_point(Point::scalar(0.0), 1.0)
            .unwrap();
        let mr = check_metric_regularity(&map, &probe).unwrap();
        assert!(mr.holds);
        let inv = SetValuedMap::inverse(map);
        let probe = RegularityProbe::new(Point::scalar(0.0), 1.0, 200, k as u64).unwrap();
        let est = estimate_modulus(&inv, &Point::scalar(0.0), &radii(), &probe).unwrap();
        let fit = fit_modulus(&est.modulus).unwrap();
        let l = fit
            .modulus
            .is_lipschitz()
            .expect("linear inverse fits a Lipschitz modulus");
        assert!(l <= mr.constant + 1e-9, "L = {l}, kappa = {}", mr.constant);
    }
}

#[test]
fn fit_reports_cube_root_and_identity() {
    let probe = RegularityProbe::new(Point::scalar(0.0), 1.0, 100, 0).unwrap();
    let cbrt = SetValuedMap::inverse(SetValuedMap::power_gradient(3, 1).unwrap());
    let fit = fit_modulus(
        &estimate_modulus(&cbrt, &Point::scalar(0.0), &radii(), &probe)
            .unwrap()
            .modulus,
    )
    .unwrap();
    assert!((fit.exponent - 1.0 / 3.0).abs() <= 0.05);
    assert!(matches!(
        fit.modulus.form,
        ppa_core::regularity::ModulusForm::PowerLaw { .. }
    ));
    let id = SetValuedMap::identity(1).unwrap();
    let fit = fit_modulus(
        &estimate_modulus(&id, &Point::scalar(0.0), &radii(), &probe)
            .unwrap()
            .modulus,
    )
    .unwrap();
    assert!((fit.modulus.is_lipschitz().unwrap() - 1.0).abs() <= 0.05);
}
