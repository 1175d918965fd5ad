//! Fault-injection campaign on the exact QPE circuit: per-qubit sensitivity
//! before and after each qubit first acts as a control, plus heatmap files.
//!
//! Usage: `cargo run --example fault_heatmap [OUT_DIR]`

use std::path::PathBuf;

use vsqec::fault::{export_heatmap, run_campaign, InjectionMode};
use vsqec::qpe::{build_qpe, QpeSpec};

fn main() -> vsqec::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let (circuit, bits) = build_qpe(&QpeSpec::default())?;
    let profile = run_campaign(&circuit, &bits, InjectionMode::Mirrored)?;
    println!("{} fault sites, ideal PST {:.6}", profile.records.len(), profile.pst_ideal);

    for q in 0..circuit.num_qubits() {
        let first_control = circuit
            .ops()
            .iter()
            .find(|op| op.qubits.len() == 2 && op.qubits[0] == q)
            .map(|op| op.timestep);
        let cells: Vec<_> = profile.qubit_cells(q).collect();
        let mean = |keep: &dyn Fn(u64) -> bool| {
            let v: Vec<f64> = cells.iter().filter(|c| keep(c.timestep)).map(|c| c.mean_relative_pst).collect();
            (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
        };
        match first_control {
            Some(t) => println!(
                "q{q}: mean relative PST before control {:?}, after {:?}",
                mean(&|s| s < t),
                mean(&|s| s >= t)
            ),
            None => println!("q{q}: never a control, mean relative PST {:?}", mean(&|_| true)),
        }
    }

    let (csv, svg) = (out.join("heatmap.csv"), out.join("heatmap.svg"));
    export_heatmap(&profile, &circuit, &csv, &svg)?;
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok(())
}
