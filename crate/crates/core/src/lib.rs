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

//! Numerical workbench for the proximal point algorithm on set-valued
//! monotone operators.
//!
//! The crate is split into four layers:
//!
//! * [`setgeom`]: points, finitely representable sets, distance, projection
//!   and the one-sided excess `ex(C, D) = sup_{c ∈ C} d(c, D)`.
//! * [`operators`]: set-valued operator models, their images, resolvents,
//!   monotonicity checks and the matrix R-Lipschitz certificate.
//! * [`regularity`]: sampled estimators of the continuity modulus, and
//!   comparators for calmness, metric regularity and metric subregularity.
//! * [`ppa`]: the proximal point iteration and certification of its rate
//!   guarantees on recorded trajectories.

pub mod operators;
pub mod ppa;
pub mod regularity;
pub mod serde_ext;
pub mod setgeom;

pub use operators::{ConvexFunctionModel, GraphPiece, OperatorError, ScalarFn, SetValuedMap};
pub use ppa::{PpaConfig, PpaTrajectory, Problem};
pub use regularity::{ModulusFunction, RegularityProbe, RegularityVerdict};
pub use setgeom::{Point, SolutionSet, ValueSet};
