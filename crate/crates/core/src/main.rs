use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vsqec::fault::{export_heatmap, render_heatmap_svg, run_campaign, write_heatmap_csv, InjectionMode};
use vsqec::pipeline::{load_circuit, load_profile, most_likely_outcome, run_pipeline, RunConfig};
use vsqec::qecc::{assign_two_distance, default_configs, render_curves_svg, sweep_tts, write_sweep_csv};
use vsqec::qecc::{DistanceConfig, ErrorModelParams, PGrid, SweepSettings};
use vsqec::qpe::{build_qpe, QpeSpec};
use vsqec::sim::{output_distribution, pst, simulate, StateVector};
use vsqec::synth::{approximate_rz, compile_circuit, MAX_SEARCH_LENGTH};
use vsqec::Result;

#[derive(Parser)]
#[command(name = "vsqec", version, about = "Clifford+T simulation, fault injection and variable-distance QEC modeling")]
struct Cli {
    /// Worker threads for campaigns and sweeps.
    #[arg(long, global = true, env = "VSQEC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a phase-estimation circuit.
    Qpe {
        #[arg(long, default_value_t = 5)]
        counting: usize,
        #[arg(long, default_value_t = 5)]
        phase_num: u64,
        #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
        phase_den: u64,
        /// Compile to Clifford+T at this precision.
        #[arg(long, value_name = "EPS")]
        compile: Option<f64>,
        /// Write the circuit here and print only the correct bitstring.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile continuous rotations of a circuit to Clifford+T.
    Compile {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the exact output distribution of a circuit.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        /// Also report the probability of this bitstring.
        #[arg(long)]
        correct: Option<String>,
    },
    /// Run a fault-injection campaign and render its heatmap.
    Inject {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, default_value = "mirrored")]
        mode: InjectionMode,
        /// Correct output; defaults to the most likely ideal outcome.
        #[arg(long)]
        correct: Option<String>,
        #[arg(long)]
        out_profile: Option<PathBuf>,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Render a stored profile as heatmap CSV and SVG.
    Heatmap {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        out_csv: PathBuf,
        #[arg(long)]
        out_svg: PathBuf,
    },
    /// Derive a two-distance code assignment from a profile.
    Assign {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value_t = 3)]
        d_low: u32,
        #[arg(long, default_value_t = 5)]
        d_high: u32,
        #[arg(long, default_value_t = 0.9)]
        tau: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep time to solution over physical error rates.
    Tts {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        /// Distance config such as `3` or `3,5`; repeatable.
        #[arg(long = "config")]
        configs: Vec<DistanceConfig>,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Run every stage from a configuration file.
    Pipeline {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        epsilon: Option<f64>,
        /// Profile the exact-gate circuit instead of compiling it.
        #[arg(long, conflicts_with = "epsilon")]
        exact: bool,
        #[arg(long)]
        mode: Option<InjectionMode>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        no_resize: bool,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Find the shortest Clifford+T word approximating Rz(theta).
    Synth {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = MAX_SEARCH_LENGTH)]
        max_length: usize,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 1e-5)]
    p_min: f64,
    #[arg(long, default_value_t = 1e-2)]
    p_max: f64,
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Space the grid linearly instead of logarithmically.
    #[arg(long)]
    linear: bool,
    #[arg(long, default_value_t = 0.9)]
    tau: f64,
    #[arg(long)]
    no_resize: bool,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Qpe { counting, phase_num, phase_den, compile, out } => {
            let spec = QpeSpec { counting_qubits: counting, phase_num, phase_den };
            let (mut circuit, bits) = build_qpe(&spec)?;
            if let Some(eps) = compile {
                circuit = compile_circuit(&circuit, eps)?;
            }
            match out {
                Some(path) => {
                    std::fs::write(&path, circuit.to_json())?;
                    println!("{bits}");
                }
                None => {
                    let doc = serde_json::json!({ "correct_bitstring": bits, "circuit": circuit });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
            }
        }
        Command::Compile { circuit, epsilon, out } => {
            let compiled = compile_circuit(&load_circuit(&circuit)?, epsilon)?;
            emit(out.as_deref(), &compiled.to_json())?;
        }
        Command::Simulate { circuit, correct } => {
            let c = load_circuit(&circuit)?;
            let state = simulate(&c, &StateVector::zero(c.num_qubits()))?;
            let dist = output_distribution(&state, c.measured_qubits())?;
            let mut doc = serde_json::json!({ "distribution": dist });
            if let Some(bits) = correct {
                doc["pst"] = serde_json::json!(pst(&dist, &bits)?);
            }
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Command::Inject { circuit, mode, correct, out_profile, out_csv, out_svg } => {
            let c = load_circuit(&circuit)?;
            let correct = match correct {
                Some(bits) => bits,
                None => most_likely_outcome(&c)?,
            };
            let profile = run_campaign(&c, &correct, mode)?;
            if let Some(path) = out_profile {
                std::fs::write(path, profile.to_json())?;
            }
            if let Some(path) = out_csv {
                write_heatmap_csv(&profile, std::fs::File::create(path)?)?;
            }
            if let Some(path) = out_svg {
                std::fs::write(path, render_heatmap_svg(&profile, &c)?)?;
            }
            println!(
                "{} sites, {} cells, ideal PST {}",
                profile.records.len(),
                profile.cells.len(),
                profile.pst_ideal
            );
        }
        Command::Heatmap { circuit, profile, out_csv, out_svg } => {
            let c = load_circuit(&circuit)?;
            export_heatmap(&load_profile(&profile)?, &c, &out_csv, &out_svg)?;
        }
        Command::Assign { circuit, profile, d_low, d_high, tau, out } => {
            let c = load_circuit(&circuit)?;
            let a = assign_two_distance(&load_profile(&profile)?, &c, d_low, d_high, tau)?;
            emit(out.as_deref(), &a.to_json())?;
        }
        Command::Tts { circuit, profile, configs, model, out_csv, out_svg } => {
            let profile = load_profile(&profile)?;
            let c = load_circuit(&circuit)?;
            let configs = if configs.is_empty() { default_configs() } else { configs };
            let grid = PGrid { min: model.p_min, max: model.p_max, points: model.points, log: !model.linear };
            let settings = SweepSettings {
                params: ErrorModelParams::default(),
                tau: model.tau,
                include_resize: !model.no_resize,
            };
            let points = sweep_tts(&profile, &c, &configs, &grid.values()?, &settings)?;
            match out_csv {
                Some(path) => write_sweep_csv(&points, std::fs::File::create(path)?)?,
                None => write_sweep_csv(&points, std::io::stdout().lock())?,
            }
            if let Some(path) = out_svg {
                std::fs::write(path, render_curves_svg(&points))?;
            }
        }
        Command::Pipeline { config, out_dir, epsilon, exact, mode, tau, no_resize, points } => {
            let mut cfg = match config {
                Some(path) => RunConfig::load(&path)?,
                None => RunConfig::default(),
            };
            if let Some(dir) = out_dir {
                cfg.output_dir = dir;
            }
            if epsilon.is_some() {
                cfg.synthesis_epsilon = epsilon;
            }
            if exact {
                cfg.synthesis_epsilon = None;
            }
            if let Some(m) = mode {
                cfg.injection_mode = m;
            }
            if let Some(t) = tau {
                cfg.tau = t;
            }
            if no_resize {
                cfg.include_resize = false;
            }
            if let Some(n) = points {
                cfg.p_grid.points = n;
            }
            let manifest = run_pipeline(&cfg)?;
            println!("wrote {} artifacts to {}", manifest.artifacts.len() + 1, cfg.output_dir.display());
        }
        Command::Synth { theta, epsilon, max_length } => {
            let report = approximate_rz(theta, epsilon, max_length)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
