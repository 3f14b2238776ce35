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
//! Parsing and validation of scenario files.
//!
//! Everything a run needs is resolved here, so a scenario that parses
//! cannot fail later for configuration reasons.

use std::path::PathBuf;

use nalgebra::DMatrix;

use ppa_core::operators::{matrix_from_rows, sample_pairs, OperatorPair};
use ppa_core::ppa::square_indexed_sequence;
use ppa_core::regularity::{GraphSequence, ModulusFunction, RegularityProbe};
use ppa_core::setgeom::GeomError;
use ppa_core::{Point, PpaConfig, Problem, SetValuedMap, SolutionSet};

use crate::error::ConfigError;
use crate::spec::{
    pair_points, point, Built, CheckSpec, Expect, ModulusSpec, OperatorSpec, ScenarioDoc,
    SequenceSource, SolutionSpec,
};

/// Schema version written into every report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Reject unknown keys (default). Lenient mode reports them as warnings.
    pub lenient: bool,
    /// Replaces the scenario seed.
    pub seed: Option<u64>,
    /// Replaces `ppaConfig.maxIterations`.
    pub max_iterations: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum ModulusPlan {
    Explicit(ModulusFunction),
    Estimate {
        radii: Vec<f64>,
        sample_count: usize,
        seed: u64,
        fit: bool,
    },
    MatrixCertificate {
        matrix: DMatrix<f64>,
        radius: f64,
    },
}

#[derive(Clone, Debug)]
pub enum HoffmanModulus {
    Explicit(ModulusFunction),
    /// Whatever the scenario's modulus stage produces.
    Scenario,
}

#[derive(Clone, Debug)]
pub enum PreparedCheck {
    Calm {
        map: SetValuedMap,
        probe: RegularityProbe,
    },
    MetricRegularity {
        map: SetValuedMap,
        probe: RegularityProbe,
    },
    MetricSubregularity {
        map: SetValuedMap,
        probe: RegularityProbe,
    },
    Modulus {
        map: SetValuedMap,
        base: Point,
        radii: Vec<f64>,
        probe: RegularityProbe,
        fit: bool,
    },
    Monotone {
        map: SetValuedMap,
        samples: Vec<(Point, Point)>,
    },
    PairMonotone {
        pair: OperatorPair,
        samples: Vec<(Point, Point)>,
    },
    Coercive {
        map: SetValuedMap,
        gamma: f64,
        samples: Vec<(Point, Point)>,
    },
    Hoffman {
        map: SetValuedMap,
        modulus: HoffmanModulus,
        sigma: f64,
        witnesses: Vec<(Point, Point)>,
    },
    MatrixCertificate {
        matrices: Vec<DMatrix<f64>>,
        random_count: usize,
        max_dim: usize,
        trials: usize,
        seed: u64,
    },
    SequenceRate {
        values: Vec<f64>,
    },
    ClosedGraph {
        map: SetValuedMap,
        sequences: Vec<GraphSequence>,
        tol: f64,
    },
}

#[derive(Clone, Debug)]
pub struct PreparedProbe {
    pub label: String,
    pub kind: &'static str,
    pub expect: Expect,
    pub check: PreparedCheck,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: Option<String>,
    pub seed: u64,
    /// Variant tag and resolved model.
    pub operator: Option<(String, Built)>,
    pub solution: Option<SolutionSet>,
    /// Why no solution set is available, when the model has none.
    pub solution_note: Option<String>,
    pub modulus: Option<ModulusPlan>,
    pub ppa: Option<PpaConfig>,
    pub probes: Vec<PreparedProbe>,
    pub output_dir: Option<PathBuf>,
    /// Unknown keys ignored in lenient mode.
    pub warnings: Vec<String>,
}

impl Scenario {
    pub fn problem(&self) -> Option<Problem> {
        self.operator.as_ref().map(|(_, b)| match b {
            Built::Map(m) => Problem::Operator(m.clone()),
            Built::Function(f) => Problem::Function(f.clone()),
        })
    }
}

fn seed_from_env() -> Option<u64> {
    std::env::var("PPA_LAB_SEED").ok()?.trim().parse().ok()
}

/// Parses and validates one scenario document.
pub fn parse_scenario(text: &str, opts: &ParseOptions) -> Result<Scenario, ConfigError> {
    let mut unknown = Vec::new();
    let mut de = serde_json::Deserializer::from_str(text);
    let mut track = serde_path_to_error::Track::new();
    let doc: Result<ScenarioDoc, serde_json::Error> = {
        let tracked = serde_path_to_error::Deserializer::new(&mut de, &mut track);
        serde_ignored::deserialize(tracked, |p| unknown.push(clean_path(&p.to_string())))
    };
    let doc = doc.map_err(|e| ConfigError {
        path: Some(clean_path(&track.path().to_string())),
        message: strip_position(&e),
        line: Some(e.line()),
        column: Some(e.column()),
    })?;
    de.end().map_err(|e| ConfigError {
        path: None,
        message: strip_position(&e),
        line: Some(e.line()),
        column: Some(e.column()),
    })?;
    if !opts.lenient {
        if let Some(first) = unknown.first() {
            return Err(ConfigError::field(
                first.clone(),
                format!("unknown key (all unknown keys: {})", unknown.join(", ")),
            ));
        }
    }
    let mut scenario = validate(doc, opts)?;
    scenario.warnings = unknown
        .into_iter()
        .map(|k| format!("ignored unknown key {k}"))
        .collect();
    Ok(scenario)
}

/// Drops the placeholder segments the path tracker emits for positions it
/// could not name.
fn clean_path(p: &str) -> String {
    p.split('.')
        .filter(|seg| *seg != "?")
        .collect::<Vec<_>>()
        .join(".")
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

fn positive(v: f64, path: impl Into<String>) -> Result<f64, ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError::field(
            path,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn nonzero(v: usize, path: impl Into<String>) -> Result<usize, ConfigError> {
    if v == 0 {
        Err(ConfigError::field(path, "must be at least 1"))
    } else {
        Ok(v)
    }
}

fn check_dim(v: &[f64], dim: usize, path: impl Into<String>) -> Result<Point, ConfigError> {
    let path = path.into();
    if v.len() != dim {
        return Err(ConfigError::field(
            path,
            format!("expected dimension {dim}, found {}", v.len()),
        ));
    }
    point(v, &path)
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "."
        && name != ".."
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

fn validate(doc: ScenarioDoc, opts: &ParseOptions) -> Result<Scenario, ConfigError> {
    if !valid_name(&doc.name) {
        return Err(ConfigError::field(
            "name",
            format!(
                "must be nonempty and use only ASCII letters, digits, '-', '_' or '.', got {:?}",
                doc.name
            ),
        ));
    }
    let seed = opts.seed.or_else(seed_from_env).or(doc.seed).unwrap_or(0);

    let operator = match &doc.operator_spec {
        Some(spec) => Some((spec.tag().to_string(), spec.build("operatorSpec")?)),
        None => None,
    };
    let map = operator.as_ref().map(|(_, b)| b.map());

    let (solution, solution_note) = resolve_solution(&doc, operator.as_ref().map(|o| &o.1))?;

    let modulus = match &doc.modulus_spec {
        None => None,
        Some(spec) => Some(resolve_modulus(spec, map.as_ref(), seed)?),
    };

    let ppa = match &doc.ppa_config {
        None => None,
        Some(p) => {
            let Some(map) = &map else {
                return Err(ConfigError::field(
                    "ppaConfig",
                    "a PPA run needs an operatorSpec",
                ));
            };
            positive(p.gamma, "ppaConfig.gamma")?;
            let start = check_dim(&p.start, map.input_dim(), "ppaConfig.start")?;
            let iters = opts.max_iterations.unwrap_or(p.max_iterations);
            nonzero(iters, "ppaConfig.maxIterations")?;
            if !(p.stop_step_norm >= 0.0) {
                return Err(ConfigError::field(
                    "ppaConfig.stopStepNorm",
                    "must be nonnegative",
                ));
            }
            nonzero(p.record_every, "ppaConfig.recordEvery")?;
            if map.input_dim() != map.output_dim() {
                return Err(ConfigError::field(
                    "operatorSpec",
                    "a PPA run needs a map from a space into itself",
                ));
            }
            map.ensure_monotone().map_err(|e| {
                ConfigError::field(
                    "operatorSpec",
                    format!("a PPA run needs a monotone operator: {e}"),
                )
            })?;
            let cfg = PpaConfig::new(p.gamma, start, iters)
                .and_then(|c| c.with_stop_step_norm(p.stop_step_norm))
                .and_then(|c| c.with_record_every(p.record_every))
                .map_err(|e| ConfigError::field("ppaConfig", e))?;
            Some(cfg)
        }
    };

    let mut probes = Vec::with_capacity(doc.probes.len());
    let mut labels = std::collections::HashSet::new();
    for (i, p) in doc.probes.iter().enumerate() {
        let path = format!("probes[{i}].check.{}", p.check.tag());
        let label = p
            .label
            .clone()
            .unwrap_or_else(|| format!("{}-{i}", p.check.tag()));
        if !labels.insert(label.clone()) {
            return Err(ConfigError::field(
                format!("probes[{i}].label"),
                format!("duplicate label {label:?}"),
            ));
        }
        let check = prepare_check(&p.check, map.as_ref(), seed, &path)?;
        probes.push(PreparedProbe {
            label,
            kind: p.check.tag(),
            expect: p.expect,
            check,
        });
    }

    Ok(Scenario {
        name: doc.name,
        description: doc.description,
        seed,
        operator,
        solution,
        solution_note,
        modulus,
        ppa,
        probes,
        output_dir: doc.output_dir.map(PathBuf::from),
        warnings: Vec::new(),
    })
}

fn resolve_solution(
    doc: &ScenarioDoc,
    built: Option<&Built>,
) -> Result<(Option<SolutionSet>, Option<String>), ConfigError> {
    let geom = |e: GeomError| ConfigError::field("solutionSpec", e);
    match &doc.solution_spec {
        Some(SolutionSpec::Explicit { set, optimal_value }) => {
            let set = set.build("solutionSpec.explicit.set")?;
            if let (Some(b), Some(d)) = (built, set.dim()) {
                let want = b.map().input_dim();
                if d != want {
                    return Err(ConfigError::field(
                        "solutionSpec.explicit.set",
                        format!("expected dimension {want}, found {d}"),
                    ));
                }
            }
            Ok((
                Some(SolutionSet::new(set, *optimal_value).map_err(geom)?),
                None,
            ))
        }
        Some(SolutionSpec::Auto) | None => {
            let explicit = doc.solution_spec.is_some();
            let Some(b) = built else {
                if explicit {
                    return Err(ConfigError::field(
                        "solutionSpec",
                        "\"auto\" needs an operatorSpec",
                    ));
                }
                return Ok((None, None));
            };
            let derived = match b {
                Built::Function(f) => Ok(f.solution_set()),
                Built::Map(m) => m
                    .inverse_image(&Point::zeros(m.output_dim()))
                    .map_err(|e| e.to_string())
                    .and_then(|s| SolutionSet::new(s, None).map_err(|e| e.to_string())),
            };
            match derived {
                Ok(s) => Ok((Some(s), None)),
                Err(e) if explicit => Err(ConfigError::field("solutionSpec", e)),
                Err(e) => Ok((None, Some(format!("solution set unavailable: {e}")))),
            }
        }
    }
}

fn resolve_modulus(
    spec: &ModulusSpec,
    map: Option<&SetValuedMap>,
    seed: u64,
) -> Result<ModulusPlan, ConfigError> {
    let path = format!("modulusSpec.{}", spec.tag());
    if let Some(m) = spec.explicit("modulusSpec")? {
        return Ok(ModulusPlan::Explicit(m));
    }
    let Some(map) = map else {
        return Err(ConfigError::field(path, "needs an operatorSpec"));
    };
    match spec {
        ModulusSpec::Estimate {
            radii,
            sample_count,
            seed: s,
            fit,
        } => {
            check_radii(radii, &format!("{path}.radii"))?;
            Ok(ModulusPlan::Estimate {
                radii: radii.clone(),
                sample_count: *sample_count,
                seed: s.unwrap_or(seed),
                fit: *fit,
            })
        }
        ModulusSpec::MatrixCertificate { radius } => {
            let Some((matrix, _)) = map.as_affine() else {
                return Err(ConfigError::field(path, "operator is not affine"));
            };
            let radius = match radius {
                Some(r) => r.value(&format!("{path}.radius"))?,
                None => f64::INFINITY,
            };
            Ok(ModulusPlan::MatrixCertificate { matrix, radius })
        }
        _ => unreachable!("explicit moduli are handled above"),
    }
}

fn check_radii(radii: &[f64], path: &str) -> Result<(), ConfigError> {
    if radii.is_empty() {
        return Err(ConfigError::field(path, "no radii"));
    }
    for (i, &r) in radii.iter().enumerate() {
        positive(r, format!("{path}[{i}]"))?;
        if i > 0 && !(radii[i - 1] < r) {
            return Err(ConfigError::field(
                format!("{path}[{i}]"),
                "radii must be strictly increasing",
            ));
        }
    }
    Ok(())
}

fn probe_map(
    override_spec: Option<&OperatorSpec>,
    scenario_map: Option<&SetValuedMap>,
    path: &str,
) -> Result<SetValuedMap, ConfigError> {
    match (override_spec, scenario_map) {
        (Some(spec), _) => Ok(spec.build(&format!("{path}.operator"))?.map()),
        (None, Some(m)) => Ok(m.clone()),
        (None, None) => Err(ConfigError::field(
            format!("{path}.operator"),
            "no operator: give one here or an operatorSpec",
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn regularity_probe(
    map: &SetValuedMap,
    base_point: &[f64],
    image_point: Option<&[f64]>,
    sample_radius: f64,
    ball_radius: Option<f64>,
    sample_count: usize,
    seed: u64,
    cap: Option<f64>,
    path: &str,
) -> Result<RegularityProbe, ConfigError> {
    let base = check_dim(base_point, map.input_dim(), format!("{path}.basePoint"))?;
    positive(sample_radius, format!("{path}.sampleRadius"))?;
    nonzero(sample_count, format!("{path}.sampleCount"))?;
    let err = |e| ConfigError::field(path, e);
    let mut probe = RegularityProbe::new(base, sample_radius, sample_count, seed).map_err(err)?;
    if let Some(y) = image_point {
        let y = check_dim(y, map.output_dim(), format!("{path}.baseImagePoint"))?;
        let eps = positive(
            ball_radius.unwrap_or(sample_radius),
            format!("{path}.ballRadius"),
        )?;
        probe = probe.with_image_point(y, eps).map_err(err)?;
    }
    if let Some(cap) = cap {
        positive(cap, format!("{path}.divergenceCap"))?;
        probe = probe.with_cap(cap).map_err(err)?;
    }
    Ok(probe)
}

fn check_pairs(
    pairs: &[(Point, Point)],
    map: &SetValuedMap,
    path: &str,
) -> Result<(), ConfigError> {
    for (i, (x, y)) in pairs.iter().enumerate() {
        if x.dim() != map.input_dim() || y.dim() != map.output_dim() {
            return Err(ConfigError::field(
                format!("{path}[{i}]"),
                format!(
                    "expected dimensions ({}, {}), found ({}, {})",
                    map.input_dim(),
                    map.output_dim(),
                    x.dim(),
                    y.dim()
                ),
            ));
        }
    }
    Ok(())
}

fn sampled(
    map: &SetValuedMap,
    half_width: f64,
    count: usize,
    seed: u64,
    path: &str,
) -> Result<Vec<(Point, Point)>, ConfigError> {
    positive(half_width, format!("{path}.halfWidth"))?;
    nonzero(count, format!("{path}.count"))?;
    Ok(sample_pairs(map.input_dim(), half_width, count, seed))
}

fn prepare_check(
    spec: &CheckSpec,
    scenario_map: Option<&SetValuedMap>,
    seed: u64,
    path: &str,
) -> Result<PreparedCheck, ConfigError> {
    let map = || probe_map(spec.operator(), scenario_map, path);
    Ok(match spec {
        CheckSpec::Calm {
            base_point,
            base_image_point,
            sample_radius,
            ball_radius,
            sample_count,
            seed: s,
            divergence_cap,
            ..
        } => {
            let map = map()?;
            let probe = regularity_probe(
                &map,
                base_point,
                Some(base_image_point),
                *sample_radius,
                *ball_radius,
                *sample_count,
                s.unwrap_or(seed),
                *divergence_cap,
                path,
            )?;
            PreparedCheck::Calm { map, probe }
        }
        CheckSpec::MetricRegularity {
            base_point,
            base_image_point,
            sample_radius,
            ball_radius,
            sample_count,
            seed: s,
            divergence_cap,
            witnesses,
            witness_sequence,
            ..
        } => {
            let map = map()?;
            let mut pairs = pair_points(witnesses, &format!("{path}.witnesses"))?;
            if let Some(seq) = witness_sequence {
                pairs.extend(seq.pairs(&format!("{path}.witnessSequence"))?);
            }
            check_pairs(&pairs, &map, &format!("{path}.witnesses"))?;
            let probe = regularity_probe(
                &map,
                base_point,
                Some(base_image_point),
                *sample_radius,
                *ball_radius,
                *sample_count,
                s.unwrap_or(seed),
                *divergence_cap,
                path,
            )?
            .with_witnesses(pairs);
            PreparedCheck::MetricRegularity { map, probe }
        }
        CheckSpec::MetricSubregularity {
            base_point,
            sample_radius,
            sample_count,
            seed: s,
            divergence_cap,
            witnesses,
            ..
        } => {
            let map = map()?;
            let pairs = pair_points(witnesses, &format!("{path}.witnesses"))?;
            check_pairs(&pairs, &map, &format!("{path}.witnesses"))?;
            let probe = regularity_probe(
                &map,
                base_point,
                None,
                *sample_radius,
                None,
                *sample_count,
                s.unwrap_or(seed),
                *divergence_cap,
                path,
            )?
            .with_witnesses(pairs);
            PreparedCheck::MetricSubregularity { map, probe }
        }
        CheckSpec::Modulus {
            inverse,
            base_point,
            radii,
            sample_count,
            seed: s,
            fit,
            ..
        } => {
            let mut map = map()?;
            if *inverse {
                map = SetValuedMap::inverse(map);
            }
            check_radii(radii, &format!("{path}.radii"))?;
            let top = *radii.last().expect("checked nonempty");
            let probe = regularity_probe(
                &map,
                base_point,
                None,
                top,
                None,
                *sample_count,
                s.unwrap_or(seed),
                None,
                path,
            )?;
            PreparedCheck::Modulus {
                base: probe.base_point.clone(),
                map,
                radii: radii.clone(),
                probe,
                fit: *fit,
            }
        }
        CheckSpec::Monotone {
            half_width,
            count,
            seed: s,
            ..
        } => {
            let map = map()?;
            let samples = sampled(&map, *half_width, *count, s.unwrap_or(seed), path)?;
            PreparedCheck::Monotone { map, samples }
        }
        CheckSpec::PairMonotone {
            second,
            strong_modulus,
            half_width,
            count,
            seed: s,
            ..
        } => {
            let first = map()?;
            let second = second.build(&format!("{path}.second"))?.map();
            let samples = sampled(&first, *half_width, *count, s.unwrap_or(seed), path)?;
            let pair = OperatorPair::new(first, second, *strong_modulus)
                .map_err(|e| ConfigError::field(path, e))?;
            PreparedCheck::PairMonotone { pair, samples }
        }
        CheckSpec::Coercive {
            gamma,
            half_width,
            count,
            seed: s,
            ..
        } => {
            let map = map()?;
            if !(*gamma >= 0.0 && gamma.is_finite()) {
                return Err(ConfigError::field(
                    format!("{path}.gamma"),
                    "must be nonnegative and finite",
                ));
            }
            let samples = sampled(&map, *half_width, *count, s.unwrap_or(seed), path)?;
            PreparedCheck::Coercive {
                map,
                gamma: *gamma,
                samples,
            }
        }
        CheckSpec::Hoffman {
            modulus,
            sigma,
            witnesses,
            ..
        } => {
            let map = map()?;
            positive(*sigma, format!("{path}.sigma"))?;
            let witnesses = pair_points(witnesses, &format!("{path}.witnesses"))?;
            check_pairs(&witnesses, &map, &format!("{path}.witnesses"))?;
            let modulus = match modulus {
                None => HoffmanModulus::Scenario,
                Some(m) => match m.explicit(&format!("{path}.modulus"))? {
                    Some(f) => HoffmanModulus::Explicit(f),
                    None => {
                        return Err(ConfigError::field(
                            format!("{path}.modulus"),
                            "only lipschitz, powerLaw or tabulated moduli are accepted here",
                        ))
                    }
                },
            };
            PreparedCheck::Hoffman {
                map,
                modulus,
                sigma: *sigma,
                witnesses,
            }
        }
        CheckSpec::MatrixCertificate {
            matrices,
            random_count,
            max_dim,
            trials,
            seed: s,
        } => {
            let mut built = Vec::with_capacity(matrices.len());
            for (i, rows) in matrices.iter().enumerate() {
                built.push(
                    matrix_from_rows(rows)
                        .map_err(|e| ConfigError::field(format!("{path}.matrices[{i}]"), e))?,
                );
            }
            nonzero(*max_dim, format!("{path}.maxDim"))?;
            if *max_dim > ppa_core::setgeom::MAX_DIM {
                return Err(ConfigError::field(
                    format!("{path}.maxDim"),
                    format!("at most {}", ppa_core::setgeom::MAX_DIM),
                ));
            }
            nonzero(*trials, format!("{path}.trials"))?;
            if built.is_empty() && *random_count == 0 {
                return Err(ConfigError::field(path, "no matrices and randomCount = 0"));
            }
            PreparedCheck::MatrixCertificate {
                matrices: built,
                random_count: *random_count,
                max_dim: *max_dim,
                trials: *trials,
                seed: s.unwrap_or(seed),
            }
        }
        CheckSpec::SequenceRate { sequence } => {
            let values = match sequence {
                SequenceSource::InverseSquare { len } => {
                    nonzero(*len, format!("{path}.sequence.inverseSquare.len"))?;
                    (1..=*len).map(|n| 1.0 / (n as f64 * n as f64)).collect()
                }
                SequenceSource::SquareIndexed { len } => {
                    nonzero(*len, format!("{path}.sequence.squareIndexed.len"))?;
                    square_indexed_sequence(*len)
                }
                SequenceSource::Values(v) => {
                    if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
                        return Err(ConfigError::field(
                            format!("{path}.sequence.values"),
                            "must be a nonempty list of finite numbers",
                        ));
                    }
                    v.clone()
                }
            };
            PreparedCheck::SequenceRate { values }
        }
        CheckSpec::ClosedGraph { sequences, tol, .. } => {
            let map = map()?;
            positive(*tol, format!("{path}.tol"))?;
            let mut seqs = Vec::with_capacity(sequences.len());
            for (i, s) in sequences.iter().enumerate() {
                let p = format!("{path}.sequences[{i}]");
                let pairs = s.pairs(&p)?;
                check_pairs(&pairs, &map, &p)?;
                let Some(limit) = &s.limit else {
                    return Err(ConfigError::field(format!("{p}.limit"), "missing limit"));
                };
                let limit = check_dim(limit, map.output_dim(), format!("{p}.limit"))?;
                let (xs, ys) = pairs.into_iter().unzip();
                seqs.push(GraphSequence { xs, ys, limit });
            }
            PreparedCheck::ClosedGraph {
                map,
                sequences: seqs,
                tol: *tol,
            }
        }
    })
}
