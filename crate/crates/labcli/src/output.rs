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
//! Trajectory CSV, report file and the two SVG charts.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use ppa_core::PpaTrajectory;

use crate::run::{ModulusSeries, ScenarioRun};

pub const CSV_FILE: &str = "trajectory.csv";
pub const REPORT_FILE: &str = "report.json";
pub const DISTANCE_PLOT: &str = "distance.svg";
pub const MODULUS_PLOT: &str = "modulus.svg";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

/// Columns `n, x1..xd, a_n, f, dist`; one row per recorded step.
pub fn trajectory_csv(traj: &PpaTrajectory) -> io::Result<Vec<u8>> {
    let dim = traj.final_iterate.dim();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n".to_string()];
    header.extend((1..=dim).map(|i| format!("x{i}")));
    header.extend(["a_n", "f", "dist"].map(String::from));
    w.write_record(&header)?;
    for r in &traj.records {
        let mut row = vec![r.n.to_string()];
        row.extend(r.iterate.coords().iter().map(|&c| fmt_num(c)));
        row.push(fmt_num(r.step_norm));
        row.push(fmt_opt(r.value));
        row.push(fmt_opt(r.distance));
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

/// Writes every output file and returns their paths.
pub fn write_outputs(dir: &Path, run: &ScenarioRun, plots: bool) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut put = |name: &str, bytes: &[u8]| -> io::Result<()> {
        let p = dir.join(name);
        fs::write(&p, bytes)?;
        written.push(p);
        Ok(())
    };
    if let Some(t) = &run.trajectory {
        put(CSV_FILE, &trajectory_csv(t)?)?;
        if plots {
            put(DISTANCE_PLOT, distance_chart(t).as_bytes())?;
        }
    }
    if plots && !run.modulus_series.is_empty() {
        put(MODULUS_PLOT, modulus_chart(&run.modulus_series).as_bytes())?;
    }
    let json = serde_json::to_string_pretty(&run.report).map_err(io::Error::other)?;
    put(REPORT_FILE, format!("{json}\n").as_bytes())?;
    Ok(written)
}

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 56.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Axis {
    log: bool,
    lo: f64,
    hi: f64,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            let t = if log { v.log10() } else { v };
            lo = lo.min(t);
            hi = hi.max(t);
        }
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if log {
            lo = lo.floor();
            hi = hi.ceil();
        }
        if hi - lo < 1e-12 {
            hi = lo + 1.0;
        }
        Self { log, lo, hi }
    }

    fn frac(&self, v: f64) -> f64 {
        let t = if self.log { v.log10() } else { v };
        (t - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let (lo, hi) = (self.lo as i32, self.hi as i32);
            let step = ((hi - lo) / 8).max(1);
            (lo..=hi)
                .step_by(step as usize)
                .map(|e| (10f64.powi(e), format!("1e{e}")))
                .collect()
        } else {
            (0..=5)
                .map(|i| {
                    let v = self.lo + (self.hi - self.lo) * i as f64 / 5.0;
                    (v, format!("{v:.3}"))
                })
                .collect()
        }
    }
}

/// A scatter-with-lines chart. Points not representable on a log axis are
/// dropped and counted in the description. Each marker carries its exact
/// data values in `data-x` / `data-y`.
pub fn chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series],
    log_x: bool,
    log_y: bool,
) -> String {
    let keep = |&(x, y): &(f64, f64)| {
        x.is_finite() && y.is_finite() && (!log_x || x > 0.0) && (!log_y || y > 0.0)
    };
    let kept: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| s.points.iter().copied().filter(keep).collect())
        .collect();
    let dropped: usize = series
        .iter()
        .zip(&kept)
        .map(|(s, k)| s.points.len() - k.len())
        .sum();
    let ax = Axis::fit(kept.iter().flatten().map(|p| p.0), log_x);
    let ay = Axis::fit(kept.iter().flatten().map(|p| p.1), log_y);
    let pw = WIDTH - MARGIN_L - MARGIN_R;
    let ph = HEIGHT - MARGIN_T - MARGIN_B;
    let px = |x: f64| MARGIN_L + ax.frac(x) * pw;
    let py = |y: f64| MARGIN_T + (1.0 - ay.frac(y)) * ph;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    out.push_str(&format!("<title>{}</title>\n", escape(title)));
    out.push_str(&format!(
        "<desc>{} point(s) omitted (non-finite or not positive on a log axis)</desc>\n",
        dropped
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));
    out.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"#444\"/>\n"
    ));
    for (v, label) in ax.ticks() {
        let x = px(v);
        out.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#ddd\"/>\n<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            MARGIN_T,
            MARGIN_T + ph,
            MARGIN_T + ph + 16.0,
            escape(&label)
        ));
    }
    for (v, label) in ay.ticks() {
        let y = py(v);
        out.push_str(&format!(
            "<line x1=\"{MARGIN_L}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#ddd\"/>\n<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            MARGIN_L + pw,
            MARGIN_L - 6.0,
            y + 4.0,
            escape(&label)
        ));
    }
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_L + pw / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    ));
    out.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">{}</text>\n",
        MARGIN_T + ph / 2.0,
        MARGIN_T + ph / 2.0,
        escape(y_label)
    ));
    for (i, (s, pts)) in series.iter().zip(&kept).enumerate() {
        let color = COLORS[i % COLORS.len()];
        out.push_str(&format!(
            "<g class=\"series\" data-label=\"{}\" stroke=\"{color}\" fill=\"{color}\">\n",
            escape(&s.label)
        ));
        if pts.len() > 1 {
            let path: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            out.push_str(&format!(
                "<polyline fill=\"none\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                path.join(" ")
            ));
        }
        for &(x, y) in pts {
            out.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" data-x=\"{}\" data-y=\"{}\"/>\n",
                px(x),
                py(y),
                fmt_num(x),
                fmt_num(y)
            ));
        }
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" stroke=\"none\">{}</text>\n</g>\n",
            MARGIN_L + 8.0,
            MARGIN_T + 16.0 + 14.0 * i as f64,
            escape(&s.label)
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// `d(x_n, S)` against `n` on a log scale: the `dist` column of the CSV.
pub fn distance_chart(traj: &PpaTrajectory) -> String {
    let points = traj
        .records
        .iter()
        .filter_map(|r| r.distance.map(|d| (r.n as f64, d)))
        .collect();
    chart(
        "distance to the solution set",
        "n",
        "d(x_n, S)",
        &[Series {
            label: "d(x_n, S)".into(),
            points,
        }],
        false,
        true,
    )
}

/// `rho_hat(r)` against `r`, both on log scales.
pub fn modulus_chart(series: &[ModulusSeries]) -> String {
    let s: Vec<Series> = series
        .iter()
        .map(|m| Series {
            label: m.label.clone(),
            points: m.table.clone(),
        })
        .collect();
    chart("estimated modulus", "r", "rho_hat(r)", &s, true, true)
}
