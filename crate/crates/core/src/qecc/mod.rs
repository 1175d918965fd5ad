//! Surface-code cost model: logical error rates, PST lower bounds under a
//! code-distance assignment, latency in code cycles, and time-to-solution
//! sweeps.

mod assignment;
mod sweep;

pub use assignment::{assign_two_distance, CodeAssignment, DistanceConfig, Segment};
pub use sweep::{
    default_configs, render_curves_svg, sweep_tts, write_sweep_csv, PGrid, SweepSettings, TtsPoint,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fault::SensitivityProfile;
use crate::sim::Circuit;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorModelParams {
    pub prefactor: f64,
    pub threshold: f64,
}

impl Default for ErrorModelParams {
    fn default() -> Self {
        Self { prefactor: 0.03, threshold: 0.0057 }
    }
}

impl ErrorModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.prefactor.is_finite() && self.prefactor > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "error-model prefactor must be positive, got {}",
                self.prefactor
            )));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "error-model threshold must lie in (0, 1), got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_distance(d: u32) -> Result<()> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "code distance must be odd and at least 3, got {d}"
        )));
    }
    Ok(())
}

pub(crate) fn check_rate(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "physical error rate must lie in (0, 1), got {p}"
        )));
    }
    Ok(())
}

/// `A · (p / p_th)^((d+1)/2)`, clamped to 1.
pub fn logical_error_rate(p: f64, d: u32, params: &ErrorModelParams) -> Result<f64> {
    check_rate(p)?;
    check_distance(d)?;
    params.validate()?;
    let exponent = ((d + 1) / 2) as i32;
    Ok((params.prefactor * (p / params.threshold).powi(exponent)).min(1.0))
}

/// Probability that the gate at `gate_index` suffers at least one logical
/// error, treating each qubit it touches as an independent opportunity.
pub fn site_error_prob(
    circuit: &Circuit,
    gate_index: usize,
    assignment: &CodeAssignment,
    p: f64,
    params: &ErrorModelParams,
) -> Result<f64> {
    let op = circuit.ops().get(gate_index).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "gate index {gate_index} out of range for a circuit of {} gates",
            circuit.len()
        ))
    })?;
    let mut clean = 1.0;
    for &q in &op.qubits {
        let d = assignment.distance_at(q, op.timestep)?;
        clean *= 1.0 - logical_error_rate(p, d, params)?;
    }
    Ok(1.0 - clean)
}

/// Lower bound on the success probability: the error-free term plus every
/// single-site error weighted by that site's mean noisy PST. Patterns with
/// two or more errors are counted as failures.
pub fn pst_bound(
    profile: &SensitivityProfile,
    circuit: &Circuit,
    assignment: &CodeAssignment,
    p: f64,
    params: &ErrorModelParams,
) -> Result<f64> {
    profile.check_circuit(circuit)?;
    let sites = profile.gate_means();
    let q = sites
        .iter()
        .map(|&(g, _)| site_error_prob(circuit, g, assignment, p, params))
        .collect::<Result<Vec<f64>>>()?;
    Ok(bound_from_rates(profile.pst_ideal, &sites, &q))
}

/// Prefix and suffix products keep the "all other sites clean" factor exact
/// even when some rate saturates at 1.
pub(crate) fn bound_from_rates(pst_ideal: f64, sites: &[(usize, f64)], q: &[f64]) -> f64 {
    let n = q.len();
    let mut suffix = vec![1.0; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] * (1.0 - q[i]);
    }
    let mut prefix = 1.0;
    let mut single = 0.0;
    for i in 0..n {
        single += q[i] * prefix * suffix[i + 1] * sites[i].1;
        prefix *= 1.0 - q[i];
    }
    (pst_ideal * suffix[0] + single).clamp(0.0, 1.0)
}

/// Total cycles: each gate costs the largest distance among its qubits, gates
/// run one after another, and every distance change on a qubit costs the
/// larger of the two distances when `include_resize` is set.
pub fn latency(circuit: &Circuit, assignment: &CodeAssignment, include_resize: bool) -> Result<u64> {
    if assignment.num_qubits() < circuit.num_qubits() {
        return Err(Error::Assignment(format!(
            "assignment covers {} qubits but the circuit has {}",
            assignment.num_qubits(),
            circuit.num_qubits()
        )));
    }
    let mut total = 0u64;
    for op in circuit.ops() {
        let mut d = 0;
        for &q in &op.qubits {
            d = d.max(assignment.distance_at(q, op.timestep)?);
        }
        total += u64::from(d);
    }
    if include_resize {
        total += assignment.resize_cost();
    }
    Ok(total)
}

/// Mean time to a correct answer, `L / PST`; infinite when PST is 0.
pub fn time_to_solution(latency_cycles: f64, pst: f64) -> f64 {
    if pst <= 0.0 {
        f64::INFINITY
    } else {
        latency_cycles / pst
    }
}
