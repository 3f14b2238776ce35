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
//! Scenario-driven front end for proximal point experiments.
//!
//! A scenario file names an operator or convex function, an optional
//! solution set and modulus, a PPA configuration and a list of probes.
//! Running it produces a trajectory CSV, a JSON report and two SVG charts.

pub mod batch;
pub mod error;
pub mod matrices;
pub mod output;
pub mod run;
pub mod scenario;
pub mod spec;

pub use batch::{batch_run, BatchOptions, BatchResult, EXIT_CONFIG, EXIT_FAILURE, EXIT_OK};
pub use error::ConfigError;
pub use run::{run_scenario, RunReport, ScenarioRun, Stages};
pub use scenario::{parse_scenario, ParseOptions, Scenario};
