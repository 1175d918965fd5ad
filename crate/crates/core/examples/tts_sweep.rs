//! Surface-code cost model on a compiled QPE profile: logical error rates,
//! a two-distance assignment, and the time-to-solution winner at each p.

use vsqec::fault::{run_campaign, InjectionMode};
use vsqec::qecc::{
    assign_two_distance, default_configs, latency, logical_error_rate, sweep_tts, ErrorModelParams, PGrid,
    SweepSettings,
};
use vsqec::qpe::{build_qpe, QpeSpec};
use vsqec::synth::compile_circuit;

fn main() -> vsqec::Result<()> {
    let model = ErrorModelParams::default();
    for d in [3, 5, 7] {
        println!("P_L(p=1e-3, d={d}) = {:.3e}", logical_error_rate(1e-3, d, &model)?);
    }

    let (exact, bits) = build_qpe(&QpeSpec::default())?;
    let circuit = compile_circuit(&exact, 0.01)?;
    let profile = run_campaign(&circuit, &bits, InjectionMode::Mirrored)?;

    let settings = SweepSettings::default();
    let mixed = assign_two_distance(&profile, &circuit, 3, 5, settings.tau)?;
    println!("{} latency: {} cycles", mixed.label(), latency(&circuit, &mixed, true)?);

    let configs = default_configs();
    let grid = PGrid { points: 10, ..PGrid::default() }.values()?;
    let points = sweep_tts(&profile, &circuit, &configs, &grid, &settings)?;
    for (i, p) in grid.iter().enumerate() {
        let best = (0..configs.len())
            .map(|c| &points[c * grid.len() + i])
            .min_by(|a, b| a.tts.total_cmp(&b.tts))
            .expect("at least one config");
        println!("p = {p:.2e}: fastest {} ({:.4e} cycles, PST bound {:.4})", best.config, best.tts, best.pst_bound);
    }
    Ok(())
}
