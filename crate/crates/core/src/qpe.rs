//! Quantum phase estimation benchmark.
//!
//! The target qubit is prepared in `|1⟩`, an eigenstate of every controlled
//! phase, so counting qubit `k` picks up `e^{2πiφ·2^k}` by phase kickback.
//! The inverse QFT then writes `round(φ·2^n)` into the counting register.
//! Only the `X` that prepares the eigenstate is marked unfaultable.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{Circuit, GateKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpeSpec {
    pub counting_qubits: usize,
    /// Phase fraction `φ = phase_num / phase_den`.
    pub phase_num: u64,
    pub phase_den: u64,
}

impl Default for QpeSpec {
    fn default() -> Self {
        QpeSpec {
            counting_qubits: 5,
            phase_num: 5,
            phase_den: 32,
        }
    }
}

impl QpeSpec {
    pub fn target_qubit(&self) -> usize {
        self.counting_qubits
    }

    pub fn validate(&self) -> Result<()> {
        if self.counting_qubits == 0 || self.counting_qubits > 20 {
            return Err(Error::InvalidArgument(format!(
                "counting qubits must be in 1..=20, got {}",
                self.counting_qubits
            )));
        }
        if self.phase_den == 0 {
            return Err(Error::InvalidArgument("phase denominator must be nonzero".into()));
        }
        if self.phase_num >= self.phase_den {
            return Err(Error::InvalidArgument(format!(
                "phase {}/{} is outside [0, 1)",
                self.phase_num, self.phase_den
            )));
        }
        Ok(())
    }

    /// `round(φ·2^n) mod 2^n`, most significant bit first.
    pub fn correct_bitstring(&self) -> String {
        let n = self.counting_qubits as u32;
        let scaled = (self.phase_num as u128) << n;
        let den = self.phase_den as u128;
        let rounded = ((2 * scaled + den) / (2 * den)) % (1u128 << n);
        format!("{:0width$b}", rounded, width = self.counting_qubits)
    }

    /// Kickback angle for counting qubit `k`, reduced into `[0, 2π)`.
    fn kickback_angle(&self, k: usize) -> f64 {
        let den = self.phase_den as u128;
        let num = ((self.phase_num as u128) << k) % den;
        2.0 * PI * num as f64 / den as f64
    }
}

type GateList = Vec<(GateKind, Vec<usize>, bool)>;

fn inverse_qft_gates(qubits: &[usize]) -> GateList {
    let n = qubits.len();
    let mut gates = Vec::new();
    for j in (0..n).rev() {
        for m in 1..n - j {
            let angle = -PI / (1u64 << m) as f64;
            gates.push((GateKind::ControlledPhase(angle), vec![qubits[j + m], qubits[j]], true));
        }
        gates.push((GateKind::H, vec![qubits[j]], true));
    }
    gates
}

/// QPE circuit and its correct output bitstring.
pub fn build_qpe(spec: &QpeSpec) -> Result<(Circuit, String)> {
    spec.validate()?;
    let n = spec.counting_qubits;
    let target = spec.target_qubit();
    let mut gates: GateList = vec![(GateKind::X, vec![target], false)];
    gates.extend((0..n).map(|k| (GateKind::H, vec![k], true)));
    gates.extend((0..n).map(|k| {
        (GateKind::ControlledPhase(spec.kickback_angle(k)), vec![k, target], true)
    }));
    let counting: Vec<usize> = (0..n).collect();
    gates.extend(inverse_qft_gates(&counting));
    let circuit = Circuit::layered(n + 1, gates, counting)?;
    Ok((circuit, spec.correct_bitstring()))
}

/// Inverse QFT over `qubits` without SWAPs: it maps the Fourier state of `y`
/// to `|y⟩` with the bits reversed, so `qubits[j]` ends holding bit
/// `n − 1 − j` of `y`. Measuring `qubits` in order reads `y` most
/// significant bit first.
pub fn build_inverse_qft(qubits: &[usize]) -> Result<Circuit> {
    if qubits.is_empty() {
        return Err(Error::InvalidArgument("inverse QFT needs at least one qubit".into()));
    }
    let width = qubits.iter().max().map_or(0, |&q| q + 1);
    Circuit::layered(width, inverse_qft_gates(qubits), qubits.to_vec())
}

/// Forward QFT matching [`build_inverse_qft`]: the exact inverse circuit.
pub fn build_qft(qubits: &[usize]) -> Result<Circuit> {
    if qubits.is_empty() {
        return Err(Error::InvalidArgument("QFT needs at least one qubit".into()));
    }
    let width = qubits.iter().max().map_or(0, |&q| q + 1);
    let gates = inverse_qft_gates(qubits)
        .into_iter()
        .rev()
        .map(|(kind, qs, f)| {
            let kind = match kind {
                GateKind::ControlledPhase(t) => GateKind::ControlledPhase(-t),
                other => other,
            };
            (kind, qs, f)
        })
        .collect();
    Circuit::layered(width, gates, qubits.to_vec())
}
