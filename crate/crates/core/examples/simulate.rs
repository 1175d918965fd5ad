//! Exact simulation of a small circuit: prepare a Bell pair, then print the
//! measured distribution and the probability of one outcome.

use vsqec::sim::{output_distribution, pst, simulate, Circuit, GateKind, GateOp, StateVector};

fn main() -> vsqec::Result<()> {
    let circuit = Circuit::new(
        2,
        vec![
            GateOp::new(GateKind::H, &[0], 0),
            GateOp::new(GateKind::Cnot, &[0, 1], 1),
            GateOp::new(GateKind::T, &[1], 2),
        ],
        vec![0, 1],
    )?;
    let state = simulate(&circuit, &StateVector::zero(2))?;
    let dist = output_distribution(&state, circuit.measured_qubits())?;
    for (bits, p) in &dist {
        println!("{bits}: {p:.6}");
    }
    println!("P(11) = {:.6}", pst(&dist, "11")?);
    println!("circuit digest {}", circuit.digest());
    Ok(())
}
