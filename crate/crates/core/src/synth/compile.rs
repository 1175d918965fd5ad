use std::collections::HashMap;

use super::search::{approximate_rz, ApproxReport, MAX_SEARCH_LENGTH};
use crate::error::{Error, Result};
use crate::sim::{Circuit, GateKind, GateOp};

/// Rewrites `circuit` over `{X, Y, Z, H, S, Sdg, T, Tdg, CNOT}`.
///
/// Each `Rz(θ)` becomes its searched approximation. `ControlledPhase(θ)` on
/// `(c, t)` first expands to `Rz(θ/2)@c, Rz(θ/2)@t, CNOT(c,t), Rz(−θ/2)@t,
/// CNOT(c,t)`, equal to the original up to global phase. Op `i` of the
/// output gets timestep `i`. Expanded gates inherit the source's
/// `faultable` flag.
pub fn compile_circuit(circuit: &Circuit, epsilon: f64) -> Result<Circuit> {
    compile_with_limit(circuit, epsilon, MAX_SEARCH_LENGTH)
}

pub fn compile_with_limit(circuit: &Circuit, epsilon: f64, max_length: usize) -> Result<Circuit> {
    let mut cache: HashMap<u64, ApproxReport> = HashMap::new();
    let mut out: Vec<GateOp> = Vec::new();

    let mut emit_rz = |theta: f64, q: usize, src: usize, faultable: bool, out: &mut Vec<GateOp>| {
        let report = match cache.get(&theta.to_bits()) {
            Some(r) => r.clone(),
            None => {
                let r = approximate_rz(theta, epsilon, max_length)?;
                cache.insert(theta.to_bits(), r.clone());
                r
            }
        };
        if !report.converged {
            return Err(Error::Compile(format!(
                "op {src} ({}): Rz({theta}) not within {epsilon} using {max_length} gates (best {:.3e})",
                circuit.ops()[src].kind,
                report.achieved_distance
            )));
        }
        for s in report.sequence.gates() {
            let mut op = GateOp::new(s.gate(), &[q], 0);
            op.faultable = faultable;
            out.push(op);
        }
        Ok(())
    };

    for (i, op) in circuit.ops().iter().enumerate() {
        match op.kind {
            GateKind::Rz(theta) => emit_rz(theta, op.qubits[0], i, op.faultable, &mut out)?,
            GateKind::ControlledPhase(theta) => {
                let (c, t) = (op.qubits[0], op.qubits[1]);
                let cnot = || {
                    let mut g = GateOp::new(GateKind::Cnot, &[c, t], 0);
                    g.faultable = op.faultable;
                    g
                };
                emit_rz(theta / 2.0, c, i, op.faultable, &mut out)?;
                emit_rz(theta / 2.0, t, i, op.faultable, &mut out)?;
                out.push(cnot());
                emit_rz(-theta / 2.0, t, i, op.faultable, &mut out)?;
                out.push(cnot());
            }
            _ => {
                let mut g = op.clone();
                g.timestep = 0;
                out.push(g);
            }
        }
    }
    for (i, op) in out.iter_mut().enumerate() {
        op.timestep = i as u64;
    }
    Circuit::new(circuit.num_qubits(), out, circuit.measured_qubits().to_vec())
}
