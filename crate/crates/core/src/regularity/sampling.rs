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

//! Deterministic samples in Euclidean balls: a scrambled Halton sequence
//! mapped radially from the cube onto the ball, plus axis extremes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::setgeom::Point;

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Number of decades covered by [`axis_extremes_multiscale`].
pub const EXTREME_DECADES: i32 = 6;

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while i > 0 {
        out += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    out
}

/// Points in `[0, 1)^dim` (dim ≤ 8), shifted modulo one by a seeded offset.
#[derive(Clone, Debug)]
pub struct HaltonSampler {
    dim: usize,
    shift: Vec<f64>,
    index: u64,
}

impl HaltonSampler {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(
            dim >= 1 && dim <= PRIMES.len(),
            "Halton dimension {dim} unsupported"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = (0..dim).map(|_| rng.random::<f64>()).collect();
        Self {
            dim,
            shift,
            index: 0,
        }
    }

    pub fn next_unit(&mut self) -> Vec<f64> {
        self.index += 1;
        (0..self.dim)
            .map(|k| (radical_inverse(self.index, PRIMES[k]) + self.shift[k]).fract())
            .collect()
    }
}

/// Maps the cube `[0,1)^d` onto the closed ball of the given radius by
/// radial rescaling of the max-norm onto the Euclidean norm.
pub fn cube_to_ball(u: &[f64], radius: f64) -> Vec<f64> {
    let v: Vec<f64> = u.iter().map(|t| 2.0 * t - 1.0).collect();
    let inf = v.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
    let two = v.iter().map(|t| t * t).sum::<f64>().sqrt();
    if two == 0.0 {
        return vec![0.0; v.len()];
    }
    v.iter().map(|t| t * inf / two * radius).collect()
}

/// `count` deterministic points in the ball `B(center, radius)`.
pub fn ball_samples(center: &Point, radius: f64, count: usize, seed: u64) -> Vec<Point> {
    let mut halton = HaltonSampler::new(center.dim(), seed);
    (0..count)
        .map(|_| {
            let offset = cube_to_ball(&halton.next_unit(), radius);
            Point::new(
                center
                    .coords()
                    .iter()
                    .zip(offset)
                    .map(|(c, o)| c + o)
                    .collect(),
            )
            .expect("finite sample")
        })
        .collect()
}

/// `center ± radius e_i` for every axis.
pub fn axis_extremes(center: &Point, radius: f64) -> Vec<Point> {
    let d = center.dim();
    let mut out = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [radius, -radius] {
            out.push(center + &Point::axis(d, i, s));
        }
    }
    out
}

/// Axis extremes at radii `radius · 10^{-k}`, `k = 0..=6`.
pub fn axis_extremes_multiscale(center: &Point, radius: f64) -> Vec<Point> {
    (0..=EXTREME_DECADES)
        .flat_map(|k| axis_extremes(center, radius * 10f64.powi(-k)))
        .collect()
}
