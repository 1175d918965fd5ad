use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    bound_from_rates, check_rate, latency, logical_error_rate, time_to_solution, DistanceConfig,
    ErrorModelParams,
};
use crate::error::{Error, Result};
use crate::fault::SensitivityProfile;
use crate::render::{escape, svg_footer, svg_header, PALETTE};
use crate::sim::Circuit;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default = "yes")]
    pub log: bool,
}

fn yes() -> bool {
    true
}

impl Default for PGrid {
    fn default() -> Self {
        Self { min: 1e-5, max: 1e-2, points: 50, log: true }
    }
}

impl PGrid {
    /// Grid values with the endpoints reproduced exactly.
    pub fn values(&self) -> Result<Vec<f64>> {
        check_rate(self.min)?;
        check_rate(self.max)?;
        if self.points == 0 {
            return Err(Error::InvalidArgument("p grid needs at least one point".into()));
        }
        if self.points == 1 {
            return Ok(vec![self.min]);
        }
        if self.min >= self.max {
            return Err(Error::InvalidArgument(format!(
                "p grid min {} must be below max {}",
                self.min, self.max
            )));
        }
        let n = self.points - 1;
        let (a, b) = if self.log { (self.min.ln(), self.max.ln()) } else { (self.min, self.max) };
        Ok((0..=n)
            .map(|i| match i {
                0 => self.min,
                i if i == n => self.max,
                i => {
                    let v = a + (b - a) * i as f64 / n as f64;
                    if self.log {
                        v.exp()
                    } else {
                        v
                    }
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSettings {
    pub params: ErrorModelParams,
    pub tau: f64,
    pub include_resize: bool,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self { params: ErrorModelParams::default(), tau: 0.9, include_resize: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TtsPoint {
    pub p: f64,
    pub config: String,
    pub latency_cycles: u64,
    pub pst_bound: f64,
    pub tts: f64,
}

/// Uniform 3, 5, 7 and two-distance (3,5), (5,7).
pub fn default_configs() -> Vec<DistanceConfig> {
    use DistanceConfig::*;
    vec![Uniform(3), Uniform(5), Uniform(7), TwoDistance(3, 5), TwoDistance(5, 7)]
}

/// One point per (config, p), in config-major order.
pub fn sweep_tts(
    profile: &SensitivityProfile,
    circuit: &Circuit,
    configs: &[DistanceConfig],
    p_grid: &[f64],
    settings: &SweepSettings,
) -> Result<Vec<TtsPoint>> {
    profile.check_circuit(circuit)?;
    settings.params.validate()?;
    for &p in p_grid {
        check_rate(p)?;
    }
    if p_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("p grid must be strictly increasing".into()));
    }
    let sites = profile.gate_means();

    struct Prepared {
        label: String,
        latency: u64,
        // Distances protecting each qubit of each site, in site order.
        site_distances: Vec<Vec<u32>>,
    }
    let prepared = configs
        .iter()
        .map(|cfg| {
            cfg.validate()?;
            let a = cfg.assignment(profile, circuit, settings.tau)?;
            let site_distances = sites
                .iter()
                .map(|&(g, _)| {
                    let op = &circuit.ops()[g];
                    op.qubits.iter().map(|&q| a.distance_at(q, op.timestep)).collect()
                })
                .collect::<Result<Vec<Vec<u32>>>>()?;
            Ok(Prepared {
                label: a.label().to_string(),
                latency: latency(circuit, &a, settings.include_resize)?,
                site_distances,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(usize, f64)> = (0..prepared.len())
        .flat_map(|c| p_grid.iter().map(move |&p| (c, p)))
        .collect();
    jobs.par_iter()
        .map(|&(c, p)| {
            let prep = &prepared[c];
            let q = prep
                .site_distances
                .iter()
                .map(|ds| {
                    let mut clean = 1.0;
                    for &d in ds {
                        clean *= 1.0 - logical_error_rate(p, d, &settings.params)?;
                    }
                    Ok(1.0 - clean)
                })
                .collect::<Result<Vec<f64>>>()?;
            let bound = bound_from_rates(profile.pst_ideal, &sites, &q);
            Ok(TtsPoint {
                p,
                config: prep.label.clone(),
                latency_cycles: prep.latency,
                pst_bound: bound,
                tts: time_to_solution(prep.latency as f64, bound),
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: std::io::Write>(points: &[TtsPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["config", "p", "latency_cycles", "pst_bound", "tts"])?;
    for pt in points {
        w.write_record([
            pt.config.clone(),
            pt.p.to_string(),
            pt.latency_cycles.to_string(),
            pt.pst_bound.to_string(),
            pt.tts.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Log-log plot of time to solution against p, one polyline per config.
/// Points with infinite time are left out of their line.
pub fn render_curves_svg(points: &[TtsPoint]) -> String {
    let mut labels: Vec<&str> = Vec::new();
    for pt in points {
        if !labels.contains(&pt.config.as_str()) {
            labels.push(&pt.config);
        }
    }
    let finite = || points.iter().filter(|pt| pt.tts.is_finite() && pt.tts > 0.0);
    let bounds = |f: &dyn Fn(&TtsPoint) -> f64| {
        finite().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), pt| {
            let v = f(pt).log10();
            (lo.min(v), hi.max(v))
        })
    };
    let (mut x0, mut x1) = bounds(&|pt| pt.p);
    let (mut y0, mut y1) = bounds(&|pt| pt.tts);
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-5.0, -2.0, 0.0, 1.0);
    }
    if x1 - x0 < 1e-9 {
        (x0, x1) = (x0 - 0.5, x1 + 0.5);
    }
    if y1 - y0 < 1e-9 {
        (y0, y1) = (y0 - 0.5, y1 + 0.5);
    }

    let (w, h) = (720.0, 480.0);
    let (left, right, top, bottom) = (80.0, 160.0, 30.0, 60.0);
    let sx = |v: f64| left + (v.log10() - x0) / (x1 - x0) * (w - left - right);
    let sy = |v: f64| h - bottom - (v.log10() - y0) / (y1 - y0) * (h - top - bottom);

    let mut svg = svg_header(w, h);
    let _ = writeln!(
        svg,
        "<rect x=\"{left:.2}\" y=\"{top:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#000\"/>",
        w - left - right,
        h - top - bottom
    );
    for e in x0.ceil() as i32..=x1.floor() as i32 {
        let x = sx(10f64.powi(e));
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#000\"/><text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">1e{e}</text>",
            h - bottom,
            h - bottom + 5.0,
            h - bottom + 18.0
        );
    }
    for e in y0.ceil() as i32..=y1.floor() as i32 {
        let y = sy(10f64.powi(e));
        let _ = writeln!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{left:.2}\" y2=\"{y:.2}\" stroke=\"#000\"/><text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\">1e{e}</text>",
            left - 5.0,
            left - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">physical error rate p</text>",
        (left + w - right) / 2.0,
        h - 15.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"15\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 15 {:.2})\">time to solution (cycles)</text>",
        h / 2.0,
        h / 2.0
    );

    for (i, label) in labels.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = finite()
            .filter(|pt| pt.config == *label)
            .map(|pt| format!("{:.2},{:.2}", sx(pt.p), sy(pt.tts)))
            .collect();
        let _ = writeln!(
            svg,
            "<polyline class=\"curve\" data-config=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            escape(label),
            coords.join(" ")
        );
        let ly = top + 10.0 + 20.0 * i as f64;
        let lx = w - right + 15.0;
        let _ = writeln!(
            svg,
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/><text class=\"legend\" x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>",
            lx + 25.0,
            lx + 30.0,
            ly + 4.0,
            escape(label)
        );
    }
    svg.push_str(&svg_footer());
    svg
}
