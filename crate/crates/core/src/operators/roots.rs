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

//! Scalar root finding for monotone equations.

use super::OperatorError;

/// Default absolute tolerance on the bracket width.
pub const BISECTION_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;

/// Root of a nondecreasing `f` inside `[lo, hi]` with `f(lo) <= 0 <= f(hi)`.
///
/// Newton steps are taken from the current iterate and replaced by a
/// bisection step whenever they leave the bracket.
pub fn safeguarded_newton(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64, OperatorError> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo > 0.0 || fhi < 0.0 {
        return Err(OperatorError::Root(format!(
            "no sign change on [{lo}, {hi}]: f = {flo}, {fhi}"
        )));
    }
    let mut z = 0.5 * (lo + hi);
    for _ in 0..MAX_ITERATIONS {
        let fz = f(z);
        if fz == 0.0 {
            return Ok(z);
        }
        if fz < 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        let slope = df(z);
        let newton = z - fz / slope;
        let next = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - z).abs() <= 4.0 * f64::EPSILON * z.abs().max(f64::MIN_POSITIVE)
            || hi - lo <= f64::EPSILON * z.abs()
        {
            return Ok(next);
        }
        z = next;
    }
    if hi - lo <= BISECTION_TOL * lo.abs().max(hi.abs()).max(1.0) {
        Ok(z)
    } else {
        Err(OperatorError::Root(format!(
            "no convergence in {MAX_ITERATIONS} iterations"
        )))
    }
}

/// Outcome of comparing a target against a monotone set-valued function at `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    /// Target above every value: the root lies to the right.
    Below,
    Hit,
    /// Target below every value: the root lies to the left.
    Above,
}

/// Bisection for `0 in phi(z)` where `phi` is monotone set-valued and
/// `side(z)` reports where `0` sits relative to `phi(z)`.
pub(crate) fn bisect_inclusion(
    side: impl Fn(f64) -> Result<Side, OperatorError>,
    start: f64,
    candidates: &[f64],
) -> Result<f64, OperatorError> {
    let mut h = 1.0 + start.abs();
    let (mut lo, mut hi) = (start - h, start + h);
    let mut expansions = 0;
    loop {
        match (side(lo)?, side(hi)?) {
            (Side::Hit, _) => return Ok(lo),
            (_, Side::Hit) => return Ok(hi),
            (Side::Below, Side::Above) => break,
            (s_lo, s_hi) => {
                expansions += 1;
                if expansions > MAX_ITERATIONS {
                    return Err(OperatorError::Root(
                        "could not bracket the resolvent".into(),
                    ));
                }
                h *= 2.0;
                if s_lo != Side::Below {
                    lo = start - h;
                }
                if s_hi != Side::Above {
                    hi = start + h;
                }
            }
        }
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= BISECTION_TOL * mid.abs().max(1.0) {
            break;
        }
        match side(mid)? {
            Side::Hit => return Ok(mid),
            Side::Below => lo = mid,
            Side::Above => hi = mid,
        }
    }
    for &c in candidates {
        if c >= lo && c <= hi && side(c)? == Side::Hit {
            return Ok(c);
        }
    }
    Ok(0.5 * (lo + hi))
}
