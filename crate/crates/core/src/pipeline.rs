//! End-to-end runs driven by a JSON configuration: build the benchmark,
//! optionally compile it to Clifford+T, profile it by fault injection, assign
//! code distances, sweep time to solution, and write every artifact.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result, StageContext};
use crate::fault::{render_heatmap_svg, run_campaign, write_heatmap_csv, InjectionMode, SensitivityProfile};
use crate::qecc::{
    default_configs, render_curves_svg, sweep_tts, write_sweep_csv, CodeAssignment, DistanceConfig,
    ErrorModelParams, PGrid, SweepSettings,
};
use crate::qpe::{build_qpe, QpeSpec};
use crate::sim::{output_distribution, simulate, Circuit, StateVector};
use crate::synth::compile_circuit;

pub const SCHEMA_VERSION: u32 = 1;

pub const CIRCUIT_FILE: &str = "circuit.json";
pub const PROFILE_FILE: &str = "profile.json";
pub const HEATMAP_CSV_FILE: &str = "heatmap.csv";
pub const HEATMAP_SVG_FILE: &str = "heatmap.svg";
pub const ASSIGNMENT_FILE: &str = "assignment.json";
pub const SWEEP_CSV_FILE: &str = "sweep.csv";
pub const CURVES_SVG_FILE: &str = "curves.svg";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Benchmark {
    Qpe(QpeSpec),
}

impl Default for Benchmark {
    fn default() -> Self {
        Benchmark::Qpe(QpeSpec::default())
    }
}

impl Benchmark {
    pub fn build(&self) -> Result<(Circuit, String)> {
        match self {
            Benchmark::Qpe(spec) => build_qpe(spec),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub benchmark: Benchmark,
    /// `None` profiles the exact-gate circuit.
    pub synthesis_epsilon: Option<f64>,
    pub injection_mode: InjectionMode,
    pub error_model: ErrorModelParams,
    pub distance_configs: Vec<DistanceConfig>,
    pub p_grid: PGrid,
    pub tau: f64,
    pub include_resize: bool,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION,
            benchmark: Benchmark::default(),
            synthesis_epsilon: Some(0.01),
            injection_mode: InjectionMode::Mirrored,
            error_model: ErrorModelParams::default(),
            distance_configs: default_configs(),
            p_grid: PGrid::default(),
            tau: 0.9,
            include_resize: true,
            output_dir: PathBuf::from("vsqec-out"),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read_input(path, "config")?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks every field before any work starts.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        match &self.benchmark {
            Benchmark::Qpe(spec) => spec.validate()?,
        }
        if let Some(eps) = self.synthesis_epsilon {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "synthesis_epsilon must be positive, got {eps}"
                )));
            }
        }
        self.error_model.validate()?;
        if self.distance_configs.is_empty() {
            return Err(Error::InvalidArgument("distance_configs is empty".into()));
        }
        for cfg in &self.distance_configs {
            cfg.validate()?;
        }
        self.p_grid.values()?;
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(Error::InvalidArgument(format!("tau must lie in [0, 1], got {}", self.tau)));
        }
        Ok(())
    }

    pub fn sweep_settings(&self) -> SweepSettings {
        SweepSettings {
            params: self.error_model,
            tau: self.tau,
            include_resize: self.include_resize,
        }
    }
}

/// Run record written next to the artifacts. It echoes the configuration
/// (minus the output directory) and the SHA-256 of every artifact, and
/// deliberately omits timestamps and thread counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config: serde_json::Value,
    pub correct_bitstring: String,
    pub circuit_digest: String,
    pub artifacts: BTreeMap<String, String>,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

/// Reads a text input, mapping a missing file to [`Error::Missing`].
pub fn read_input(path: &Path, what: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => {
            Error::Missing(format!("{what} file {} does not exist", path.display()))
        }
        _ => Error::Io(e),
    })
}

pub fn load_circuit(path: &Path) -> Result<Circuit> {
    Circuit::from_json(&read_input(path, "circuit")?)
}

pub fn load_profile(path: &Path) -> Result<SensitivityProfile> {
    SensitivityProfile::from_json(&read_input(path, "profile")?)
}

/// The most probable measured outcome of the ideal circuit; ties go to the
/// lexicographically smallest bitstring.
pub fn most_likely_outcome(circuit: &Circuit) -> Result<String> {
    let state = simulate(circuit, &StateVector::zero(circuit.num_qubits()))?;
    let dist = output_distribution(&state, circuit.measured_qubits())?;
    let mut best: Option<(&String, f64)> = None;
    for (bits, &p) in &dist {
        if best.map_or(true, |(_, bp)| p > bp + 1e-12) {
            best = Some((bits, p));
        }
    }
    Ok(best.map(|(b, _)| b.clone()).unwrap_or_default())
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Collects artifacts as `<name>.partial` and renames them all once every
/// stage has succeeded, so a failed run leaves only `.partial` files behind.
struct Staging {
    dir: PathBuf,
    written: Vec<(String, String)>,
}

impl Staging {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Staging { dir: dir.to_path_buf(), written: Vec::new() })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        fs::write(self.dir.join(format!("{name}.partial")), bytes)?;
        self.written.push((name.to_string(), sha256_hex(bytes)));
        Ok(())
    }

    fn commit(self) -> Result<()> {
        for (name, _) in &self.written {
            fs::rename(self.dir.join(format!("{name}.partial")), self.dir.join(name))?;
        }
        Ok(())
    }
}

/// Runs every stage and writes the artifact set into `config.output_dir`.
pub fn run_pipeline(config: &RunConfig) -> Result<Manifest> {
    config.validate().stage("config")?;
    let mut out = Staging::new(&config.output_dir).stage("output")?;

    let (exact, correct) = config.benchmark.build().stage("benchmark")?;
    let circuit = match config.synthesis_epsilon {
        Some(eps) => compile_circuit(&exact, eps).stage("compile")?,
        None => exact,
    };
    out.write(CIRCUIT_FILE, circuit.to_json().as_bytes()).stage("compile")?;

    let profile = run_campaign(&circuit, &correct, config.injection_mode).stage("inject")?;
    out.write(PROFILE_FILE, profile.to_json().as_bytes()).stage("inject")?;

    let mut csv = Vec::new();
    write_heatmap_csv(&profile, &mut csv).stage("heatmap")?;
    out.write(HEATMAP_CSV_FILE, &csv).stage("heatmap")?;
    let svg = render_heatmap_svg(&profile, &circuit).stage("heatmap")?;
    out.write(HEATMAP_SVG_FILE, svg.as_bytes()).stage("heatmap")?;

    let assignments = config
        .distance_configs
        .iter()
        .map(|cfg| cfg.assignment(&profile, &circuit, config.tau))
        .collect::<Result<Vec<CodeAssignment>>>()
        .stage("assign")?;
    let text = serde_json::to_string_pretty(&assignments).expect("assignments serialize");
    out.write(ASSIGNMENT_FILE, text.as_bytes()).stage("assign")?;

    let grid = config.p_grid.values().stage("sweep")?;
    let points = sweep_tts(&profile, &circuit, &config.distance_configs, &grid, &config.sweep_settings())
        .stage("sweep")?;
    let mut csv = Vec::new();
    write_sweep_csv(&points, &mut csv).stage("sweep")?;
    out.write(SWEEP_CSV_FILE, &csv).stage("sweep")?;
    out.write(CURVES_SVG_FILE, render_curves_svg(&points).as_bytes()).stage("sweep")?;

    let mut echo = serde_json::to_value(config).expect("config serializes");
    if let Some(map) = echo.as_object_mut() {
        map.remove("output_dir");
    }
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: echo,
        correct_bitstring: correct,
        circuit_digest: circuit.digest(),
        artifacts: out.written.iter().cloned().collect(),
    };
    out.write(MANIFEST_FILE, manifest.to_json().as_bytes()).stage("manifest")?;
    out.commit().stage("output")?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(dir: &Path) -> RunConfig {
        RunConfig {
            synthesis_epsilon: None,
            benchmark: Benchmark::Qpe(QpeSpec { counting_qubits: 3, phase_num: 3, phase_den: 8 }),
            p_grid: PGrid { points: 5, ..PGrid::default() },
            output_dir: dir.to_path_buf(),
            ..RunConfig::default()
        }
    }

    #[test]
    fn config_round_trip_and_defaults() {
        let cfg = RunConfig::default();
        assert_eq!(RunConfig::from_json(&cfg.to_json()).unwrap(), cfg);
        let partial = RunConfig::from_json(r#"{"tau": 0.5}"#).unwrap();
        assert_eq!(partial.tau, 0.5);
        assert_eq!(partial.synthesis_epsilon, Some(0.01));
        assert!(RunConfig::from_json(r#"{"tua": 0.5}"#).is_err());
        let exact = RunConfig::from_json(r#"{"synthesis_epsilon": null}"#).unwrap();
        assert_eq!(exact.synthesis_epsilon, None);
    }

    #[test]
    fn validation_catches_each_field() {
        let bad = [
            RunConfig { schema_version: 2, ..RunConfig::default() },
            RunConfig { synthesis_epsilon: Some(0.0), ..RunConfig::default() },
            RunConfig { tau: 1.5, ..RunConfig::default() },
            RunConfig { distance_configs: vec![], ..RunConfig::default() },
            RunConfig { p_grid: PGrid { min: 0.0, ..PGrid::default() }, ..RunConfig::default() },
            RunConfig {
                benchmark: Benchmark::Qpe(QpeSpec { phase_den: 0, ..QpeSpec::default() }),
                ..RunConfig::default()
            },
        ];
        for cfg in bad {
            let err = cfg.validate().unwrap_err();
            assert!(err.is_validation(), "{err}");
        }
    }

    #[test]
    fn pipeline_writes_every_artifact() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = run_pipeline(&small(dir.path())).unwrap();
        for name in [
            CIRCUIT_FILE, PROFILE_FILE, HEATMAP_CSV_FILE, HEATMAP_SVG_FILE, ASSIGNMENT_FILE,
            SWEEP_CSV_FILE, CURVES_SVG_FILE, MANIFEST_FILE,
        ] {
            assert!(dir.path().join(name).exists(), "{name}");
            assert!(!dir.path().join(format!("{name}.partial")).exists());
        }
        assert_eq!(manifest.correct_bitstring, "011");
        let bytes = fs::read(dir.path().join(SWEEP_CSV_FILE)).unwrap();
        assert_eq!(manifest.artifacts[SWEEP_CSV_FILE], sha256_hex(&bytes));
        assert!(manifest.config.get("output_dir").is_none());
    }

    #[test]
    fn failed_stage_is_named_and_leaves_partials() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = small(dir.path());
        // 1e-9 is far below what the bounded search can reach.
        cfg.synthesis_epsilon = Some(1e-9);
        let err = run_pipeline(&cfg).unwrap_err();
        assert!(err.to_string().starts_with("compile stage failed"), "{err}");
        assert!(!dir.path().join(CIRCUIT_FILE).exists());
    }

    #[test]
    fn most_likely_outcome_picks_the_peak() {
        let (c, bits) = build_qpe(&QpeSpec::default()).unwrap();
        assert_eq!(most_likely_outcome(&c).unwrap(), bits);
    }

    #[test]
    fn missing_input_is_reported() {
        let err = load_profile(Path::new("/nonexistent/profile.json")).unwrap_err();
        assert!(matches!(err, Error::Missing(_)));
        assert!(err.to_string().contains("profile"));
    }
}
