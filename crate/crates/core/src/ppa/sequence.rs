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

//! Empirical check of `n a_n -> 0` for nonincreasing summable sequences.

use serde::Serialize;

use super::certify::{tail_decreasing, CertStatus, MIN_TAIL_POINTS};

/// Slack on the nonincreasing hypothesis.
pub const MONOTONE_SLACK: f64 = 1e-12;
/// Largest accepted ratio of consecutive dyadic block sums.
pub const BLOCK_RATIO_MAX: f64 = 0.9;
const BLOCKS_TESTED: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Hypothesis {
    Nonincreasing,
    Summable,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SequenceVerdict {
    pub status: CertStatus,
    pub nonincreasing: bool,
    /// First `n` (1-based) with `a_{n+1} > a_n`.
    pub first_increase: Option<usize>,
    /// `None` when too few dyadic blocks are available.
    pub summable: Option<bool>,
    pub block_ratios: Vec<f64>,
    pub failed_hypotheses: Vec<Hypothesis>,
    /// Whether `n a_n` decreases toward zero over the tail window.
    pub conclusion_holds: bool,
    /// `max n a_n` over the tail window.
    pub tail_sup: f64,
    pub detail: String,
}

/// Checks the hypotheses (nonincreasing, summable) and the conclusion
/// `n a_n -> 0` for `a_1, a_2, ...` given as `a[0], a[1], ...`.
pub fn sequence_rate_check(a: &[f64]) -> SequenceVerdict {
    let first_increase = a
        .windows(2)
        .position(|w| w[1] > w[0] + MONOTONE_SLACK)
        .map(|i| i + 1);
    let nonincreasing = first_increase.is_none();

    // Dyadic blocks [2^j, 2^{j+1}) in 1-based indexing, complete ones only.
    let mut blocks = Vec::new();
    let mut start = 1usize;
    while 2 * start - 1 <= a.len() {
        blocks.push(a[start - 1..2 * start - 1].iter().sum::<f64>());
        start *= 2;
    }
    let mut block_ratios = Vec::new();
    let summable = if blocks.len() < BLOCKS_TESTED + 1 {
        None
    } else {
        let last = &blocks[blocks.len() - BLOCKS_TESTED - 1..];
        let mut ok = true;
        for w in last.windows(2) {
            if w[0] == 0.0 && w[1] == 0.0 {
                block_ratios.push(0.0);
                continue;
            }
            let r = if w[0] == 0.0 {
                f64::INFINITY
            } else {
                w[1] / w[0]
            };
            block_ratios.push(r);
            ok &= r <= BLOCK_RATIO_MAX;
        }
        Some(ok)
    };

    let weighted: Vec<f64> = a
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v)
        .collect();
    let window_len = (weighted.len() / 2)
        .max(MIN_TAIL_POINTS)
        .min(weighted.len());
    let window = &weighted[weighted.len() - window_len..];
    let tail_sup = window.iter().copied().fold(0.0, f64::max);
    let conclusion_holds = window.len() >= MIN_TAIL_POINTS && tail_decreasing(window);

    let mut failed = Vec::new();
    if !nonincreasing {
        failed.push(Hypothesis::Nonincreasing);
    }
    if summable == Some(false) {
        failed.push(Hypothesis::Summable);
    }
    let (status, detail) = if !failed.is_empty() {
        (
            CertStatus::Inconclusive,
            format!("hypothesis failed: {failed:?}; tail sup of n a_n = {tail_sup}"),
        )
    } else if summable.is_none() || a.len() < MIN_TAIL_POINTS {
        (
            CertStatus::Inconclusive,
            "sequence too short for the summability test".to_string(),
        )
    } else if conclusion_holds {
        (
            CertStatus::Pass,
            format!("n a_n decreasing, tail sup {tail_sup}"),
        )
    } else {
        (
            CertStatus::Fail,
            format!("n a_n not decreasing, tail sup {tail_sup}"),
        )
    };
    SequenceVerdict {
        status,
        nonincreasing,
        first_increase,
        summable,
        block_ratios,
        failed_hypotheses: failed,
        conclusion_holds,
        tail_sup,
        detail,
    }
}

/// `a_n = 1/n` when `n` is a perfect square and `0` otherwise, `n = 1..=len`.
pub fn square_indexed_sequence(len: usize) -> Vec<f64> {
    (1..=len)
        .map(|n| {
            let k = (n as f64).sqrt().round() as usize;
            if k * k == n {
                1.0 / n as f64
            } else {
                0.0
            }
        })
        .collect()
}
