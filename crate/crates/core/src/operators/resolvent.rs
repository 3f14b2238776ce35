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

use super::graph::graph_resolvent;
use super::model::{GraphPiece, SetValuedMap};
use super::roots::{bisect_inclusion, safeguarded_newton, Side};
use super::OperatorError;
use crate::setgeom::{distance, Point};

fn soft_threshold(v: f64, t: f64) -> f64 {
    v.signum() * (v.abs() - t).max(0.0)
}

/// Root of `z + gamma * z^p = x` for odd `p`.
pub fn power_resolvent_1d(power: u32, gamma: f64, x: f64) -> Result<f64, OperatorError> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let p = power as i32;
    let f = |z: f64| z + gamma * z.powi(p) - x;
    let df = |z: f64| 1.0 + gamma * f64::from(power) * z.powi(p - 1);
    let (lo, hi) = if x > 0.0 { (0.0, x) } else { (x, 0.0) };
    safeguarded_newton(f, df, lo, hi)
}

fn solve_affine(
    a: &DMatrix<f64>,
    c: &DVector<f64>,
    gamma: f64,
    x: &Point,
) -> Result<Point, OperatorError> {
    let n = a.nrows();
    let lhs = DMatrix::identity(n, n) + a * gamma;
    let rhs = DVector::from_column_slice(x.coords()) - c * gamma;
    let z = lhs
        .lu()
        .solve(&rhs)
        .ok_or_else(|| OperatorError::NotMonotone("I + gamma·M is singular".into()))?;
    Ok(Point::new(z.iter().copied().collect())?)
}

impl SetValuedMap {
    /// The resolvent `(I + gamma A)^{-1}(x)`.
    ///
    /// The model is checked for monotonicity first; models whose resolvent
    /// line misses the graph are reported as not maximal.
    pub fn resolvent(&self, gamma: f64, x: &Point) -> Result<Point, OperatorError> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(OperatorError::InvalidParameter(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        if self.input_dim() != self.output_dim() {
            return Err(OperatorError::NotMonotone("operator is not square".into()));
        }
        if x.dim() != self.input_dim() {
            return Err(OperatorError::DimensionMismatch {
                expected: self.input_dim(),
                found: x.dim(),
            });
        }
        self.ensure_monotone()?;
        self.resolvent_unchecked(gamma, x)
    }

    pub(crate) fn resolvent_unchecked(
        &self,
        gamma: f64,
        x: &Point,
    ) -> Result<Point, OperatorError> {
        match self {
            SetValuedMap::Zero { .. } => Ok(x.clone()),
            SetValuedMap::Identity { .. } => Ok(x * (1.0 / (1.0 + gamma))),
            SetValuedMap::Constant(c) => Ok(x - &(c * gamma)),
            SetValuedMap::Linear(m) => solve_affine(m, &DVector::zeros(m.nrows()), gamma, x),
            SetValuedMap::SignComponentwise { .. } | SetValuedMap::SubgradAbsSum { .. } => {
                Ok(x.map(|v| soft_threshold(v, gamma)))
            }
            SetValuedMap::PowerGradient { power, .. } => {
                let coords = x
                    .coords()
                    .iter()
                    .map(|&v| power_resolvent_1d(*power, gamma, v))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Point::new(coords)?)
            }
            SetValuedMap::PiecewiseGraph1D(pieces) => {
                Ok(Point::scalar(graph_resolvent(pieces, gamma, x[0])?))
            }
            SetValuedMap::Scaled(f, m) => {
                if *f == 0.0 {
                    Ok(x.clone())
                } else {
                    m.resolvent_unchecked(gamma * f, x)
                }
            }
            SetValuedMap::InverseOf(m) => match m.as_ref() {
                // Normal cone of the unit box: the resolvent is the projection.
                SetValuedMap::SignComponentwise { .. } | SetValuedMap::SubgradAbsSum { .. } => {
                    Ok(x.map(|v| v.clamp(-1.0, 1.0)))
                }
                SetValuedMap::PiecewiseGraph1D(pieces) => {
                    let reflected: Vec<GraphPiece> = pieces.iter().map(|p| p.reflected()).collect();
                    Ok(Point::scalar(graph_resolvent(&reflected, gamma, x[0])?))
                }
                SetValuedMap::Identity { .. } => m.resolvent_unchecked(gamma, x),
                _ => {
                    // Moreau: J_{gamma A^{-1}}(x) = x - gamma J_{A/gamma}(x/gamma)
                    let inner = m.resolvent_unchecked(1.0 / gamma, &(x * (1.0 / gamma)))?;
                    Ok(x - &(&inner * gamma))
                }
            },
            SetValuedMap::Sum(_) | SetValuedMap::Composed { .. } | SetValuedMap::Elementwise(_) => {
                if let Some((a, c)) = self.as_affine() {
                    return solve_affine(&a, &c, gamma, x);
                }
                if x.dim() == 1 {
                    return Ok(Point::scalar(self.resolvent_by_bisection(gamma, x[0])?));
                }
                let coords = (0..x.dim())
                    .map(|i| {
                        let comp = self.component(i).ok_or_else(|| {
                            OperatorError::Unsupported(
                                "resolvent of a non-separable composite model".into(),
                            )
                        })?;
                        Ok(comp.resolvent_unchecked(gamma, &Point::scalar(x[i]))?[0])
                    })
                    .collect::<Result<Vec<_>, OperatorError>>()?;
                Ok(Point::new(coords)?)
            }
        }
    }

    fn resolvent_by_bisection(&self, gamma: f64, x: f64) -> Result<f64, OperatorError> {
        let side = |z: f64| -> Result<Side, OperatorError> {
            let img = self.image(&Point::scalar(z))?;
            let ivs = img.to_intervals_1d().unwrap_or_default();
            let (Some(first), Some(last)) = (ivs.first(), ivs.last()) else {
                return Err(OperatorError::OutsideDomain(Point::scalar(z)));
            };
            let (lo, hi) = (z + gamma * first.lo, z + gamma * last.hi);
            Ok(if x < lo {
                Side::Above
            } else if x > hi {
                Side::Below
            } else {
                Side::Hit
            })
        };
        let mut candidates = vec![0.0];
        self.collect_breakpoints(&mut candidates);
        let z = bisect_inclusion(side, x, &candidates)?;
        let residual = distance(
            &Point::scalar((x - z) / gamma),
            &self.image(&Point::scalar(z))?,
        )?;
        if residual * gamma > 1e-6 * (1.0 + x.abs()) {
            return Err(OperatorError::NotMaximal(format!(
                "no z with {x} in z + {gamma}·A(z); closest residual {residual}"
            )));
        }
        Ok(z)
    }

    fn collect_breakpoints(&self, out: &mut Vec<f64>) {
        match self {
            SetValuedMap::PiecewiseGraph1D(pieces) => {
                for piece in pieces {
                    match *piece {
                        GraphPiece::Segment { start, end } => out.extend([start.0, end.0]),
                        GraphPiece::Ray { origin, .. } => out.push(origin.0),
                    }
                }
            }
            SetValuedMap::Sum(ms) => ms.iter().for_each(|m| m.collect_breakpoints(out)),
            SetValuedMap::Scaled(_, m) => m.collect_breakpoints(out),
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        let abs = SetValuedMap::subgrad_abs_sum(1).unwrap();
        assert_eq!(abs.resolvent(1.0, &Point::scalar(2.0)).unwrap()[0], 1.0);
        let id = SetValuedMap::identity(1).unwrap();
        assert_eq!(id.resolvent(1.0, &Point::scalar(6.0)).unwrap()[0], 3.0);
        let cube = SetValuedMap::power_gradient(3, 1).unwrap();
        let z = cube.resolvent(1.0, &Point::scalar(2.0)).unwrap()[0];
        assert!((z - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sum_with_jump_lands_on_breakpoint() {
        let m = SetValuedMap::sum(vec![
            SetValuedMap::sign(1).unwrap(),
            SetValuedMap::identity(1).unwrap(),
        ])
        .unwrap();
        assert_eq!(m.resolvent(1.0, &Point::scalar(0.5)).unwrap()[0], 0.0);
        let z = m.resolvent(1.0, &Point::scalar(3.0)).unwrap()[0];
        assert!((z - 1.0).abs() < 1e-9);
    }

    #[test]
    fn heaviside_gap_is_not_maximal() {
        let h = SetValuedMap::elementwise(vec![crate::operators::ScalarFn::Heaviside]).unwrap();
        assert!(matches!(
            h.resolvent(1.0, &Point::scalar(0.5)),
            Err(OperatorError::NotMaximal(_))
        ));
    }

    #[test]
    fn inverse_uses_moreau() {
        // resolvent of the inverse sign map is the projection onto [-1, 1]
        let inv = SetValuedMap::inverse(SetValuedMap::sign(1).unwrap());
        let z = inv.resolvent(1.0, &Point::scalar(3.0)).unwrap()[0];
        assert!((z - 1.0).abs() < 1e-15);
        let z = inv.resolvent(1.0, &Point::scalar(0.25)).unwrap()[0];
        assert!((z - 0.25).abs() < 1e-15);
    }

    #[test]
    fn non_monotone_linear_rejected() {
        let m = SetValuedMap::linear_from_rows(&[vec![-1.0]]).unwrap();
        assert!(matches!(
            m.resolvent(1.0, &Point::scalar(1.0)),
            Err(OperatorError::NotMonotone(_))
        ));
    }
}
