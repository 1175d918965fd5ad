//! Builds the phase-estimation benchmark, checks it exactly, then compiles it
//! to Clifford+T at two precisions and compares success probabilities.

use vsqec::qpe::{build_qpe, QpeSpec};
use vsqec::sim::{output_distribution, pst, simulate, Circuit, StateVector};
use vsqec::synth::compile_circuit;

fn success(c: &Circuit, bits: &str) -> vsqec::Result<f64> {
    let state = simulate(c, &StateVector::zero(c.num_qubits()))?;
    pst(&output_distribution(&state, c.measured_qubits())?, bits)
}

fn main() -> vsqec::Result<()> {
    let spec = QpeSpec::default();
    let (circuit, bits) = build_qpe(&spec)?;
    println!(
        "phase {}/{} on {} counting qubits -> expect {bits}",
        spec.phase_num, spec.phase_den, spec.counting_qubits
    );
    println!("exact: {} gates, depth {}, PST {:.9}", circuit.len(), circuit.depth(), success(&circuit, &bits)?);

    for eps in [0.1, 0.01] {
        let compiled = compile_circuit(&circuit, eps)?;
        println!(
            "eps {eps}: {} Clifford+T gates, PST {:.4}",
            compiled.len(),
            success(&compiled, &bits)?
        );
    }
    Ok(())
}
