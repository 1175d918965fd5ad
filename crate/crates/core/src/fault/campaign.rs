use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::site::{check_site, enumerate_sites, error_ops, FaultSite, InjectionMode};
use crate::error::{Error, Result};
use crate::sim::{Circuit, StateVector};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensitivityRecord {
    pub site: FaultSite,
    pub pst_noisy: f64,
    pub relative_pst: f64,
}

/// One spacetime location of the heatmap: a faultable gate touching `qubit`
/// at `timestep`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub qubit: usize,
    pub timestep: u64,
    pub gate_index: usize,
    pub mean_relative_pst: f64,
    pub min_relative_pst: f64,
    pub n_records: usize,
}

/// Relative PST of every fault site of a circuit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensitivityProfile {
    /// SHA-256 of the profiled circuit's JSON.
    pub circuit_digest: String,
    pub correct_bitstring: String,
    pub mode: InjectionMode,
    pub pst_ideal: f64,
    pub records: Vec<SensitivityRecord>,
    /// Sorted by `(qubit, timestep)`.
    pub cells: Vec<Cell>,
}

impl SensitivityProfile {
    pub fn cell(&self, qubit: usize, timestep: u64) -> Option<&Cell> {
        self.cells
            .binary_search_by(|c| (c.qubit, c.timestep).cmp(&(qubit, timestep)))
            .ok()
            .map(|i| &self.cells[i])
    }

    pub fn cell_value(&self, qubit: usize, timestep: u64) -> Option<f64> {
        self.cell(qubit, timestep).map(|c| c.mean_relative_pst)
    }

    /// Cells of one qubit in time order.
    pub fn qubit_cells(&self, qubit: usize) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(move |c| c.qubit == qubit)
    }

    /// Mean noisy PST over the error types of each faulted gate, in gate order.
    pub fn gate_means(&self) -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64, usize)> = Vec::new();
        for r in &self.records {
            match out.last_mut() {
                Some((g, sum, n)) if *g == r.site.gate_index => {
                    *sum += r.pst_noisy;
                    *n += 1;
                }
                _ => out.push((r.site.gate_index, r.pst_noisy, 1)),
            }
        }
        out.into_iter().map(|(g, sum, n)| (g, sum / n as f64)).collect()
    }

    pub fn check_circuit(&self, circuit: &Circuit) -> Result<()> {
        let digest = circuit.digest();
        if digest != self.circuit_digest {
            return Err(Error::DigestMismatch(format!(
                "profile was built for circuit {} but circuit is {}",
                short(&self.circuit_digest),
                short(&digest)
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn short(digest: &str) -> &str {
    &digest[..digest.len().min(12)]
}

/// Noisy PST of each site, in the order given. Each site costs one exact
/// simulation resumed from the cached state right after the faulted gate.
pub fn evaluate_sites(circuit: &Circuit, correct: &str, sites: &[FaultSite]) -> Result<Vec<f64>> {
    for site in sites {
        check_site(circuit, site)?;
    }
    let measured = circuit.measured_qubits();
    crate::sim::parse_bitstring(correct, measured.len())?;

    let mut needed = vec![false; circuit.len()];
    for s in sites {
        needed[s.gate_index] = true;
    }
    let mut after: BTreeMap<usize, StateVector> = BTreeMap::new();
    let mut state = StateVector::zero(circuit.num_qubits());
    for (i, op) in circuit.ops().iter().enumerate() {
        state.apply(op)?;
        if needed[i] {
            after.insert(i, state.clone());
        }
    }

    sites
        .par_iter()
        .map(|site| {
            let mut s = after[&site.gate_index].clone();
            for op in error_ops(circuit, site) {
                s.apply(&op)?;
            }
            for op in &circuit.ops()[site.gate_index + 1..] {
                s.apply(op)?;
            }
            s.success_probability(measured, correct)
        })
        .collect()
}

pub fn ideal_pst(circuit: &Circuit, correct: &str) -> Result<f64> {
    let s = crate::sim::simulate(circuit, &StateVector::zero(circuit.num_qubits()))?;
    s.success_probability(circuit.measured_qubits(), correct)
}

/// Runs one fault-injection experiment per site and aggregates the relative
/// PST into per-(qubit, timestep) cells. Results do not depend on the number
/// of worker threads.
pub fn run_campaign(
    circuit: &Circuit,
    correct: &str,
    mode: InjectionMode,
) -> Result<SensitivityProfile> {
    let pst_ideal = ideal_pst(circuit, correct)?;
    if !(pst_ideal > 0.0) {
        return Err(Error::Campaign(format!(
            "noiseless PST of {correct:?} is zero; relative PST is undefined"
        )));
    }
    let sites = enumerate_sites(circuit, mode);
    let noisy = evaluate_sites(circuit, correct, &sites)?;
    let records: Vec<SensitivityRecord> = sites
        .into_iter()
        .zip(noisy)
        .map(|(site, pst_noisy)| SensitivityRecord {
            site,
            pst_noisy,
            relative_pst: pst_noisy / pst_ideal,
        })
        .collect();
    let cells = build_cells(circuit, &records)?;
    Ok(SensitivityProfile {
        circuit_digest: circuit.digest(),
        correct_bitstring: correct.to_string(),
        mode,
        pst_ideal,
        records,
        cells,
    })
}

fn build_cells(circuit: &Circuit, records: &[SensitivityRecord]) -> Result<Vec<Cell>> {
    let mut cells: BTreeMap<(usize, u64), Cell> = BTreeMap::new();
    for group in records.chunk_by(|a, b| a.site.gate_index == b.site.gate_index) {
        let gate_index = group[0].site.gate_index;
        let op = &circuit.ops()[gate_index];
        let n = group.len();
        let mean = group.iter().map(|r| r.relative_pst).sum::<f64>() / n as f64;
        let min = group.iter().map(|r| r.relative_pst).fold(f64::INFINITY, f64::min);
        for &qubit in &op.qubits {
            let cell = Cell {
                qubit,
                timestep: op.timestep,
                gate_index,
                mean_relative_pst: mean,
                min_relative_pst: min,
                n_records: n,
            };
            if cells.insert((qubit, op.timestep), cell).is_some() {
                return Err(Error::Campaign(format!(
                    "two faultable gates touch qubit {qubit} at timestep {}",
                    op.timestep
                )));
            }
        }
    }
    Ok(cells.into_values().collect())
}
