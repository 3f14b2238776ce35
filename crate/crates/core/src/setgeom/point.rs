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

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::GeomError;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 4;

/// A point of `R^d`, `1 <= d <= 4`.
///
/// [`Point::new`] rejects non-finite coordinates. Arithmetic on points does not
/// re-validate, so overflow can only enter through the caller's data.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeomError> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(GeomError::UnsupportedDimension(coords.len()));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite(*bad));
        }
        Ok(Point(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self, GeomError> {
        Self::new(coords.to_vec())
    }

    /// One-dimensional point.
    pub fn scalar(value: f64) -> Self {
        Point(vec![value])
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    /// `scale * e_axis` in `R^dim`.
    pub fn axis(dim: usize, axis: usize, scale: f64) -> Self {
        let mut coords = vec![0.0; dim];
        coords[axis] = scale;
        Point(coords)
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn distance_to(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Point {
        Point(self.0.iter().map(|&c| f(c)).collect())
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<(), GeomError> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(GeomError::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

impl Add for &Point {
    type Output = Point;

    fn add(self, rhs: &Point) -> Point {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;

    fn sub(self, rhs: &Point) -> Point {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Point {
    type Output = Point;

    fn neg(self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<f64> for &Point {
    type Output = Point;

    fn mul(self, rhs: f64) -> Point {
        Point(self.0.iter().map(|a| a * rhs).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_dimensions_and_values() {
        assert!(Point::new(vec![]).is_err());
        assert!(Point::new(vec![0.0; 5]).is_err());
        assert!(matches!(
            Point::new(vec![f64::NAN]),
            Err(GeomError::NonFinite(_))
        ));
        assert!(Point::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(Point::new(vec![1.0, 2.0, 3.0, 4.0]).is_ok());
    }

    #[test]
    fn arithmetic() {
        let a = Point::new(vec![3.0, -1.0]).unwrap();
        let b = Point::new(vec![1.0, 1.0]).unwrap();
        assert_eq!((&a - &b).coords(), &[2.0, -2.0]);
        assert_eq!((&a * 2.0).coords(), &[6.0, -2.0]);
        assert_eq!(a.dot(&b), 2.0);
        assert!((a.distance_to(&b) - 8f64.sqrt()).abs() < 1e-15);
    }
}
