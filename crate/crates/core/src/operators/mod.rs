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

//! Set-valued operator models, images, resolvents and sampled monotonicity
//! checks.

mod evaluate;
mod function;
mod graph;
mod matrix;
mod model;
mod monotone;
mod resolvent;
pub mod roots;

use thiserror::Error;

use crate::setgeom::{GeomError, Point};

pub use function::{ConvexFunctionModel, ConvexKind};
pub use matrix::{matched_preimage, matrix_r_lipschitz, MatrixCertificate, EIGEN_THRESHOLD};
pub use model::{matrix_from_rows, GraphPiece, RayDirection, ScalarFn, SetValuedMap};
pub use monotone::{
    check_coercive, check_monotone, check_pair_monotone, sample_pairs, CoercivityReport,
    MonotonicityReport, OperatorPair, PairReport,
};
pub use resolvent::power_resolvent_1d;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point {0} is outside the domain")]
    OutsideDomain(Point),
    #[error("operator is not monotone: {0}")]
    NotMonotone(String),
    #[error("operator is not maximal: {0}")]
    NotMaximal(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("root finding failed: {0}")]
    Root(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no usable sample pairs")]
    NoData,
}

/// The graph of the branch map `A` with `A^{-1} = Sign`: a downward ray at
/// `x = -1`, the segment `[-1, 1] × {0}` and an upward ray at `x = 1`.
pub fn sign_inverse_graph() -> SetValuedMap {
    SetValuedMap::PiecewiseGraph1D(vec![
        GraphPiece::Ray {
            origin: (-1.0, 0.0),
            direction: RayDirection::Down,
        },
        GraphPiece::Segment {
            start: (-1.0, 0.0),
            end: (1.0, 0.0),
        },
        GraphPiece::Ray {
            origin: (1.0, 0.0),
            direction: RayDirection::Up,
        },
    ])
}

/// `B` of the strongly monotone pair: `B(x) = (Sign(x2) + 3x2 + sin|x1|,
/// Sign(x1) + 3x1 + cos|x2|)`.
pub fn strong_pair_b() -> SetValuedMap {
    let swap = matrix_from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).expect("static matrix");
    SetValuedMap::Sum(vec![
        SetValuedMap::Composed {
            outer: Box::new(SetValuedMap::SignComponentwise { dim: 2 }),
            inner: swap.clone(),
        },
        SetValuedMap::Linear(swap * 3.0),
        SetValuedMap::Elementwise(vec![ScalarFn::SinAbs, ScalarFn::CosAbs]),
    ])
}

/// `C(x) = (3x2, 3x1)`.
pub fn strong_pair_c() -> SetValuedMap {
    SetValuedMap::Linear(
        matrix_from_rows(&[vec![0.0, 3.0], vec![3.0, 0.0]]).expect("static matrix"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setgeom::{Direction, ValueSet};

    #[test]
    fn image_examples() {
        let sign = SetValuedMap::sign(1).unwrap();
        assert_eq!(
            sign.evaluate(&Point::scalar(0.0)).unwrap(),
            ValueSet::interval(-1.0, 1.0).unwrap()
        );
        let g = sign_inverse_graph();
        assert_eq!(
            g.evaluate(&Point::scalar(1.0)).unwrap(),
            ValueSet::HalfLine1D {
                anchor: 0.0,
                direction: Direction::Up
            }
        );
        let id = SetValuedMap::identity(2).unwrap();
        let x = Point::from_slice(&[3.0, -1.0]).unwrap();
        assert_eq!(id.evaluate(&x).unwrap(), ValueSet::Singleton(x));
        assert!(matches!(
            g.evaluate(&Point::scalar(2.0)),
            Err(OperatorError::OutsideDomain(_))
        ));
    }

    #[test]
    fn graph_inverse_is_sign() {
        let inv = SetValuedMap::inverse(sign_inverse_graph());
        let sign = SetValuedMap::sign(1).unwrap();
        for y in [-2.0, -1.0, -0.3, 0.0, 0.4, 1.0, 5.0] {
            let p = Point::scalar(y);
            assert_eq!(
                inv.evaluate(&p).unwrap(),
                sign.evaluate(&p).unwrap(),
                "y = {y}"
            );
        }
        assert!(sign_inverse_graph().ensure_monotone().is_ok());
    }

    #[test]
    fn decreasing_graph_rejected() {
        let g = SetValuedMap::piecewise_graph(vec![GraphPiece::Segment {
            start: (0.0, 1.0),
            end: (1.0, 0.0),
        }])
        .unwrap();
        assert!(g.ensure_monotone().is_err());
        let crossing = SetValuedMap::piecewise_graph(vec![
            GraphPiece::Segment {
                start: (0.0, 0.0),
                end: (2.0, 2.0),
            },
            GraphPiece::Segment {
                start: (1.2, 0.8),
                end: (1.2, 0.8),
            },
        ])
        .unwrap();
        assert!(crossing.ensure_monotone().is_err());
    }

    #[test]
    fn strong_pair_parts_not_monotone() {
        let samples = sample_pairs(2, 5.0, 1000, 42);
        assert!(!check_monotone(&strong_pair_b(), &samples).unwrap().monotone);
        assert!(!check_monotone(&strong_pair_c(), &samples).unwrap().monotone);
        let pair = OperatorPair::new(strong_pair_b(), strong_pair_c(), 6.0).unwrap();
        let r = check_pair_monotone(&pair, &samples).unwrap();
        assert!(r.modulus_estimate >= 6.0 - 1e-6, "{}", r.modulus_estimate);
    }

    #[test]
    fn singular_linear_preimage_is_slab() {
        let m = SetValuedMap::linear_from_rows(&[vec![2.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let pre = m
            .inverse_image(&Point::from_slice(&[4.0, 0.0]).unwrap())
            .unwrap();
        assert_eq!(
            pre,
            ValueSet::boxed(vec![2.0, f64::NEG_INFINITY], vec![2.0, f64::INFINITY]).unwrap()
        );
        assert_eq!(
            m.inverse_image(&Point::from_slice(&[4.0, 1.0]).unwrap())
                .unwrap(),
            ValueSet::Empty
        );
    }
}
