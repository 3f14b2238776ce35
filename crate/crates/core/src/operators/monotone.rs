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

//! Sampled monotonicity, pair-monotonicity and coercivity checks.
//!
//! Selections are handled through support functions, which enumerate the
//! extreme points of every supported image variant.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::model::SetValuedMap;
use super::OperatorError;
use crate::setgeom::{set_gap, GeomError, Point, ValueSet};

const VERDICT_TOL: f64 = 1e-9;

/// `(B, C)` together with the strong-monotonicity modulus under test.
#[derive(Clone, Debug)]
pub struct OperatorPair {
    pub first: SetValuedMap,
    pub second: SetValuedMap,
    pub strong_modulus: f64,
}

impl OperatorPair {
    pub fn new(
        first: SetValuedMap,
        second: SetValuedMap,
        strong_modulus: f64,
    ) -> Result<Self, OperatorError> {
        if first.input_dim() != second.input_dim() || first.output_dim() != second.output_dim() {
            return Err(OperatorError::DimensionMismatch {
                expected: first.input_dim(),
                found: second.input_dim(),
            });
        }
        if !(strong_modulus >= 0.0 && strong_modulus.is_finite()) {
            return Err(OperatorError::InvalidParameter(format!(
                "strong modulus must be nonnegative, got {strong_modulus}"
            )));
        }
        Ok(Self {
            first,
            second,
            strong_modulus,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MonotonicityReport {
    pub monotone: bool,
    /// Minimum of `<x* - y*, x - y>` over samples and selections.
    #[serde(serialize_with = "crate::serde_ext::ext_real")]
    pub worst_margin: f64,
    pub witness: Option<(Point, Point)>,
    pub pairs_used: usize,
    /// Pairs with a point outside the domain.
    pub skipped: usize,
    /// Pairs whose images could not be represented.
    pub undecidable: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairReport {
    /// Whether the estimate reaches the pair's declared strong modulus.
    pub strong: bool,
    /// Minimum of `<b - b', c - c'> / |x - y|^2`.
    #[serde(serialize_with = "crate::serde_ext::ext_real")]
    pub modulus_estimate: f64,
    /// Minimum of `<b - b', c - c'>` without normalization.
    #[serde(serialize_with = "crate::serde_ext::ext_real")]
    pub worst_raw_margin: f64,
    pub witness: Option<(Point, Point)>,
    pub pairs_used: usize,
    pub skipped: usize,
    pub undecidable: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoercivityReport {
    #[serde(serialize_with = "crate::serde_ext::ext_real")]
    pub gamma_estimate: f64,
    pub witness: Option<(Point, Point)>,
    pub pairs_used: usize,
    pub skipped: usize,
}

/// Deterministic sample pairs, uniform in `[-half_width, half_width]^dim`.
pub fn sample_pairs(dim: usize, half_width: f64, count: usize, seed: u64) -> Vec<(Point, Point)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        Point::new(
            (0..dim)
                .map(|_| rng.random_range(-half_width..=half_width))
                .collect(),
        )
        .expect("finite sample")
    };
    (0..count)
        .map(|_| (draw(&mut rng), draw(&mut rng)))
        .collect()
}

enum Img {
    Set(ValueSet),
    /// Outside the domain: no selections to compare.
    Empty,
    Unrepresentable,
}

fn image_of(map: &SetValuedMap, x: &Point) -> Result<Img, OperatorError> {
    match map.image(x) {
        Ok(v) if v.is_empty() => Ok(Img::Empty),
        Ok(v) => Ok(Img::Set(v)),
        Err(OperatorError::Geom(GeomError::Unrepresentable(_))) => Ok(Img::Unrepresentable),
        Err(e) => Err(e),
    }
}

/// `min <a - b, u>` over `a in sa`, `b in sb`.
fn min_inner(sa: &ValueSet, sb: &ValueSet, u: &Point) -> f64 {
    let neg_u = -u;
    -sa.support(&neg_u) - sb.support(u)
}

pub fn check_monotone(
    map: &SetValuedMap,
    samples: &[(Point, Point)],
) -> Result<MonotonicityReport, OperatorError> {
    let mut worst = f64::INFINITY;
    let mut witness = None;
    let (mut used, mut skipped, mut undecidable) = (0, 0, 0);
    for (x, y) in samples {
        let (ax, ay) = match (image_of(map, x)?, image_of(map, y)?) {
            (Img::Set(a), Img::Set(b)) => (a, b),
            (Img::Unrepresentable, _) | (_, Img::Unrepresentable) => {
                undecidable += 1;
                continue;
            }
            _ => {
                skipped += 1;
                continue;
            }
        };
        let u = x - y;
        let margin = min_inner(&ax, &ay, &u);
        used += 1;
        if margin < worst {
            worst = margin;
            witness = Some((x.clone(), y.clone()));
        }
    }
    if used == 0 {
        return Err(OperatorError::NoData);
    }
    Ok(MonotonicityReport {
        monotone: worst >= -VERDICT_TOL,
        worst_margin: worst,
        witness,
        pairs_used: used,
        skipped,
        undecidable,
    })
}

pub fn check_pair_monotone(
    pair: &OperatorPair,
    samples: &[(Point, Point)],
) -> Result<PairReport, OperatorError> {
    let mut worst = f64::INFINITY;
    let mut worst_raw = f64::INFINITY;
    let mut witness = None;
    let (mut used, mut skipped, mut undecidable) = (0, 0, 0);
    for (x, y) in samples {
        let u = x - y;
        let norm_sq = u.dot(&u);
        if norm_sq == 0.0 {
            skipped += 1;
            continue;
        }
        let images = [
            image_of(&pair.first, x)?,
            image_of(&pair.first, y)?,
            image_of(&pair.second, x)?,
            image_of(&pair.second, y)?,
        ];
        if images.iter().any(|i| matches!(i, Img::Unrepresentable)) {
            undecidable += 1;
            continue;
        }
        let [Img::Set(bx), Img::Set(by), Img::Set(cx), Img::Set(cy)] = images else {
            skipped += 1;
            continue;
        };
        let (Some(cxs), Some(cys)) = (cx.extreme_points(), cy.extreme_points()) else {
            undecidable += 1;
            continue;
        };
        let mut raw = f64::INFINITY;
        for cxp in &cxs {
            for cyp in &cys {
                raw = raw.min(min_inner(&bx, &by, &(cxp - cyp)));
            }
        }
        used += 1;
        worst_raw = worst_raw.min(raw);
        let normalized = raw / norm_sq;
        if normalized < worst {
            worst = normalized;
            witness = Some((x.clone(), y.clone()));
        }
    }
    if used == 0 {
        return Err(OperatorError::NoData);
    }
    Ok(PairReport {
        strong: worst >= pair.strong_modulus - VERDICT_TOL,
        modulus_estimate: worst,
        worst_raw_margin: worst_raw,
        witness,
        pairs_used: used,
        skipped,
        undecidable,
    })
}

pub fn check_coercive(
    map: &SetValuedMap,
    samples: &[(Point, Point)],
) -> Result<CoercivityReport, OperatorError> {
    let mut worst = f64::INFINITY;
    let mut witness = None;
    let (mut used, mut skipped) = (0, 0);
    for (x, y) in samples {
        let dist = x.distance_to(y);
        if dist == 0.0 {
            skipped += 1;
            continue;
        }
        let (Img::Set(ax), Img::Set(ay)) = (image_of(map, x)?, image_of(map, y)?) else {
            skipped += 1;
            continue;
        };
        let gap = set_gap(&ax, &ay)?;
        used += 1;
        let ratio = gap / dist;
        if ratio < worst {
            worst = ratio;
            witness = Some((x.clone(), y.clone()));
        }
    }
    if used == 0 {
        return Err(OperatorError::NoData);
    }
    Ok(CoercivityReport {
        gamma_estimate: worst,
        witness,
        pairs_used: used,
        skipped,
    })
}
