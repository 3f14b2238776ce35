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

use serde::Serialize;

use super::modulus::ModulusFunction;
use super::sampling::{
    axis_extremes, axis_extremes_multiscale, ball_samples, cube_to_ball, HaltonSampler,
};
use super::RegularityError;
use crate::operators::SetValuedMap;
use crate::setgeom::{distance, excess, Point, ValueSet, TOL};

/// Default bound separating a large constant from a diverging one.
pub const DEFAULT_DIVERGENCE_CAP: f64 = 1e6;
/// Denominators at or below this count as zero.
const ZERO_DENOM: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularityProbe {
    pub base_point: Point,
    pub base_image_point: Option<Point>,
    /// `epsilon`: radius around the base image point.
    pub ball_radius: f64,
    /// `sigma`: radius around the base point.
    pub sample_radius: f64,
    pub sample_count: usize,
    pub seed: u64,
    pub divergence_cap: f64,
    /// Extra `(x, y)` pairs whose ratios are reported individually.
    pub witnesses: Vec<(Point, Point)>,
}

impl RegularityProbe {
    pub fn new(
        base_point: Point,
        sample_radius: f64,
        sample_count: usize,
        seed: u64,
    ) -> Result<Self, RegularityError> {
        let probe = Self {
            base_point,
            base_image_point: None,
            ball_radius: sample_radius,
            sample_radius,
            sample_count,
            seed,
            divergence_cap: DEFAULT_DIVERGENCE_CAP,
            witnesses: Vec::new(),
        };
        probe.validate()?;
        Ok(probe)
    }

    pub fn with_image_point(mut self, y: Point, ball_radius: f64) -> Result<Self, RegularityError> {
        self.base_image_point = Some(y);
        self.ball_radius = ball_radius;
        self.validate()?;
        Ok(self)
    }

    pub fn with_witnesses(mut self, witnesses: Vec<(Point, Point)>) -> Self {
        self.witnesses = witnesses;
        self
    }

    pub fn with_cap(mut self, cap: f64) -> Result<Self, RegularityError> {
        self.divergence_cap = cap;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), RegularityError> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.ball_radius) || !positive(self.sample_radius) {
            return Err(RegularityError::InvalidProbe(
                "radii must be positive and finite".into(),
            ));
        }
        if self.sample_count == 0 {
            return Err(RegularityError::InvalidProbe(
                "sampleCount must be at least 1".into(),
            ));
        }
        if !(self.divergence_cap > 0.0) {
            return Err(RegularityError::InvalidProbe(
                "divergence cap must be positive".into(),
            ));
        }
        Ok(())
    }

    fn x_samples(&self) -> Vec<Point> {
        let mut pts = axis_extremes_multiscale(&self.base_point, self.sample_radius);
        pts.extend(ball_samples(
            &self.base_point,
            self.sample_radius,
            self.sample_count,
            self.seed,
        ));
        pts
    }

    fn image_point(&self) -> Result<&Point, RegularityError> {
        self.base_image_point
            .as_ref()
            .ok_or_else(|| RegularityError::Precondition("probe needs a base image point".into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum RegularityProperty {
    RContinuous,
    RLipschitz,
    Calm,
    MetricallyRegular,
    MetricallySubregular,
}

/// Verdict on samples: a pass is evidence, a failure comes with a witness.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularityVerdict {
    pub property: RegularityProperty,
    pub holds: bool,
    #[serde(serialize_with = "crate::serde_ext::ext_real")]
    pub constant: f64,
    /// Worst sample: the domain point and, when relevant, the image point.
    pub witness: Option<(Point, Option<Point>)>,
    pub samples_used: usize,
    pub skipped: usize,
    /// Ratios of the probe's explicit witnesses, in order (`+inf` encoded).
    #[serde(serialize_with = "ser_ratios")]
    pub witness_ratios: Vec<f64>,
}

fn ser_ratios<S: serde::Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for &r in v {
        if r.is_finite() {
            seq.serialize_element(&r)?;
        } else {
            seq.serialize_element(crate::serde_ext::ext_real_label(r))?;
        }
    }
    seq.end()
}

/// Outcome of one error-bound ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ratio {
    Value(f64),
    /// Both sides vanish.
    Skipped,
}

/// `num / den` under the zero conventions: `0/0` is skipped, `x/0` diverges
/// and anything over `+inf` is zero.
pub fn ratio(num: f64, den: f64) -> Ratio {
    if den == f64::INFINITY {
        return Ratio::Value(0.0);
    }
    if den <= ZERO_DENOM {
        return if num <= TOL {
            Ratio::Skipped
        } else {
            Ratio::Value(f64::INFINITY)
        };
    }
    Ratio::Value(num / den)
}

struct Tracker {
    worst: f64,
    witness: Option<(Point, Option<Point>)>,
    used: usize,
    skipped: usize,
}

impl Tracker {
    fn new() -> Self {
        Self {
            worst: 0.0,
            witness: None,
            used: 0,
            skipped: 0,
        }
    }

    fn push(&mut self, r: Ratio, x: &Point, y: Option<&Point>) {
        match r {
            Ratio::Skipped => self.skipped += 1,
            Ratio::Value(v) => {
                self.used += 1;
                if v > self.worst || (self.witness.is_none() && v >= self.worst) {
                    self.worst = v;
                    self.witness = Some((x.clone(), y.cloned()));
                }
            }
        }
    }

    fn verdict(
        self,
        property: RegularityProperty,
        cap: f64,
        witness_ratios: Vec<f64>,
    ) -> RegularityVerdict {
        RegularityVerdict {
            property,
            holds: self.worst.is_finite() && self.worst <= cap,
            constant: self.worst,
            witness: self.witness,
            samples_used: self.used,
            skipped: self.skipped,
            witness_ratios,
        }
    }
}

/// Tabulated running maximum of `ex(A(x), A(xbar))` over samples with
/// `|x - xbar| <= r`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModulusEstimate {
    pub modulus: ModulusFunction,
    /// Worst sample for each radius (none when every excess was zero).
    pub witnesses: Vec<Option<Point>>,
    /// First radius with an infinite excess, if any.
    pub not_r_continuous_at: Option<f64>,
}

pub fn estimate_modulus(
    map: &SetValuedMap,
    xbar: &Point,
    radii: &[f64],
    probe: &RegularityProbe,
) -> Result<ModulusEstimate, RegularityError> {
    probe.validate()?;
    if radii.is_empty() {
        return Err(RegularityError::InvalidProbe("no radii".into()));
    }
    for w in radii.windows(2) {
        if !(w[0] < w[1]) {
            return Err(RegularityError::InvalidProbe(
                "radii must be strictly increasing".into(),
            ));
        }
    }
    if !(radii[0] > 0.0) || radii[radii.len() - 1] > probe.sample_radius {
        return Err(RegularityError::InvalidProbe(
            "radii must be positive and at most the sample radius".into(),
        ));
    }
    let base = map.evaluate(xbar)?;
    let mut running = 0.0_f64;
    let mut table = Vec::with_capacity(radii.len());
    let mut witnesses = Vec::with_capacity(radii.len());
    let mut not_rc = None;
    let mut witness: Option<Point> = None;
    for (i, &r) in radii.iter().enumerate() {
        let mut pts = axis_extremes(xbar, r);
        pts.extend(ball_samples(
            xbar,
            r,
            probe.sample_count,
            probe.seed.wrapping_add(i as u64),
        ));
        for x in &pts {
            let e = excess(&map.image(x)?, &base)?;
            if e > running {
                running = e;
                witness = Some(x.clone());
            }
        }
        if running == f64::INFINITY && not_rc.is_none() {
            not_rc = Some(r);
        }
        table.push((r, running));
        witnesses.push(witness.clone());
    }
    Ok(ModulusEstimate {
        modulus: ModulusFunction::tabulated(table, radii[radii.len() - 1])?,
        witnesses,
        not_r_continuous_at: not_rc,
    })
}

fn ensure_on_graph(map: &SetValuedMap, x: &Point, y: &Point) -> Result<ValueSet, RegularityError> {
    let img = map.image(x)?;
    if distance(y, &img)? > TOL {
        return Err(RegularityError::Precondition(format!(
            "({x}, {y}) is not on the graph"
        )));
    }
    Ok(img)
}

pub fn check_calm(
    map: &SetValuedMap,
    probe: &RegularityProbe,
) -> Result<RegularityVerdict, RegularityError> {
    probe.validate()?;
    let xbar = &probe.base_point;
    let ybar = probe.image_point()?;
    let base = ensure_on_graph(map, xbar, ybar)?;
    let mut t = Tracker::new();
    for x in probe.x_samples() {
        let d = x.distance_to(xbar);
        if d == 0.0 {
            continue;
        }
        let local = map.image(&x)?.intersect_ball(ybar, probe.ball_radius)?;
        let num = if local.is_empty() {
            0.0
        } else {
            excess(&local, &base)?
        };
        t.push(ratio(num, d), &x, None);
    }
    let mut wr = Vec::new();
    for (x, _) in &probe.witnesses {
        let local = map.image(x)?.intersect_ball(ybar, probe.ball_radius)?;
        let num = if local.is_empty() {
            0.0
        } else {
            excess(&local, &base)?
        };
        let r = ratio(num, x.distance_to(xbar));
        t.push(r, x, None);
        wr.push(ratio_value(r));
    }
    Ok(t.verdict(RegularityProperty::Calm, probe.divergence_cap, wr))
}

fn ratio_value(r: Ratio) -> f64 {
    match r {
        Ratio::Value(v) => v,
        Ratio::Skipped => f64::NAN,
    }
}

/// `d(x, A^{-1}(y)) / d(y, A(x))`.
pub fn metric_regularity_ratio(
    map: &SetValuedMap,
    x: &Point,
    y: &Point,
) -> Result<Ratio, RegularityError> {
    let den = distance(y, &map.image(x)?)?;
    if den == f64::INFINITY {
        return Ok(Ratio::Value(0.0));
    }
    let num = distance(x, &map.inverse_image(y)?)?;
    Ok(ratio(num, den))
}

pub fn check_metric_regularity(
    map: &SetValuedMap,
    probe: &RegularityProbe,
) -> Result<RegularityVerdict, RegularityError> {
    probe.validate()?;
    let xbar = &probe.base_point;
    let ybar = probe.image_point()?;
    let (n, m) = (xbar.dim(), ybar.dim());
    let mut pairs: Vec<(Point, Point)> = Vec::new();
    for x in axis_extremes_multiscale(xbar, probe.sample_radius) {
        pairs.push((x, ybar.clone()));
    }
    for y in axis_extremes_multiscale(ybar, probe.ball_radius) {
        pairs.push((xbar.clone(), y));
    }
    // Joint low-discrepancy samples in the product of the two balls.
    let mut halton = HaltonSampler::new(n + m, probe.seed);
    for _ in 0..probe.sample_count {
        let u = halton.next_unit();
        let dx = cube_to_ball(&u[..n], probe.sample_radius);
        let dy = cube_to_ball(&u[n..], probe.ball_radius);
        let x = Point::new(xbar.coords().iter().zip(dx).map(|(a, b)| a + b).collect())?;
        let y = Point::new(ybar.coords().iter().zip(dy).map(|(a, b)| a + b).collect())?;
        pairs.push((x, y));
    }
    let mut t = Tracker::new();
    for (x, y) in &pairs {
        t.push(metric_regularity_ratio(map, x, y)?, x, Some(y));
    }
    let mut wr = Vec::new();
    for (x, y) in &probe.witnesses {
        let r = metric_regularity_ratio(map, x, y)?;
        t.push(r, x, Some(y));
        wr.push(ratio_value(r));
    }
    Ok(t.verdict(
        RegularityProperty::MetricallyRegular,
        probe.divergence_cap,
        wr,
    ))
}

pub fn check_metric_subregularity(
    map: &SetValuedMap,
    probe: &RegularityProbe,
) -> Result<RegularityVerdict, RegularityError> {
    probe.validate()?;
    let xbar = &probe.base_point;
    let zero = Point::zeros(map.output_dim());
    ensure_on_graph(map, xbar, &zero)?;
    let solutions = map.inverse_image(&zero)?;
    if solutions.is_empty() {
        return Err(RegularityError::Precondition("A^{-1}(0) is empty".into()));
    }
    let sub_ratio = |x: &Point| -> Result<Ratio, RegularityError> {
        let den = distance(&zero, &map.image(x)?)?;
        if den == f64::INFINITY {
            return Ok(Ratio::Value(0.0));
        }
        Ok(ratio(distance(x, &solutions)?, den))
    };
    let mut t = Tracker::new();
    for x in probe.x_samples() {
        t.push(sub_ratio(&x)?, &x, None);
    }
    let mut wr = Vec::new();
    for (x, _) in &probe.witnesses {
        let r = sub_ratio(x)?;
        t.push(r, x, None);
        wr.push(ratio_value(r));
    }
    Ok(t.verdict(
        RegularityProperty::MetricallySubregular,
        probe.divergence_cap,
        wr,
    ))
}
