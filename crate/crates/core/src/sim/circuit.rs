use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::gate::{GateKind, GateOp, GateOpRepr};
use crate::error::{Error, Result};

/// Time-ordered logical circuit with the qubits that define its output bitstring.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<GateOp>,
    measured_qubits: Vec<usize>,
}

impl Circuit {
    pub fn new(num_qubits: usize, ops: Vec<GateOp>, measured_qubits: Vec<usize>) -> Result<Self> {
        let c = Circuit {
            num_qubits,
            ops,
            measured_qubits,
        };
        c.validate()?;
        Ok(c)
    }

    /// Builds a circuit from gates listed in program order, assigning each
    /// gate the earliest layer after every earlier gate on its qubits. Gates
    /// are stably reordered by layer, which only swaps gates on disjoint
    /// qubits.
    pub fn layered(
        num_qubits: usize,
        gates: Vec<(GateKind, Vec<usize>, bool)>,
        measured_qubits: Vec<usize>,
    ) -> Result<Self> {
        let mut ready = vec![0u64; num_qubits];
        let mut ops = Vec::with_capacity(gates.len());
        for (kind, qubits, faultable) in gates {
            let mut op = GateOp::new(kind, &qubits, 0);
            op.faultable = faultable;
            op.validate(num_qubits)?;
            let t = qubits.iter().map(|&q| ready[q]).max().unwrap_or(0);
            for &q in &qubits {
                ready[q] = t + 1;
            }
            op.timestep = t;
            ops.push(op);
        }
        ops.sort_by_key(|op| op.timestep);
        Circuit::new(num_qubits, ops, measured_qubits)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_qubits == 0 {
            return Err(Error::InvalidCircuit("circuit has no qubits".into()));
        }
        if self.num_qubits > 24 {
            return Err(Error::InvalidCircuit(format!(
                "{} qubits exceeds the dense simulator limit of 24",
                self.num_qubits
            )));
        }
        let mut last = 0;
        for (i, op) in self.ops.iter().enumerate() {
            op.validate(self.num_qubits)
                .map_err(|e| Error::InvalidCircuit(format!("op {i}: {e}")))?;
            if op.timestep < last {
                return Err(Error::InvalidCircuit(format!(
                    "op {i} has timestep {} after timestep {last}",
                    op.timestep
                )));
            }
            last = op.timestep;
        }
        if self.measured_qubits.is_empty() {
            return Err(Error::InvalidCircuit("no measured qubits".into()));
        }
        let mut seen = BTreeSet::new();
        for &q in &self.measured_qubits {
            if q >= self.num_qubits {
                return Err(Error::InvalidCircuit(format!(
                    "measured qubit {q} out of range"
                )));
            }
            if !seen.insert(q) {
                return Err(Error::InvalidCircuit(format!("measured qubit {q} repeated")));
            }
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn measured_qubits(&self) -> &[usize] {
        &self.measured_qubits
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Index of the last op touching `qubit`.
    pub fn last_op_on(&self, qubit: usize) -> Option<usize> {
        self.ops.iter().rposition(|op| op.qubits.contains(&qubit))
    }

    /// Number of ops that are not Clifford+T primitives.
    pub fn continuous_gate_count(&self) -> usize {
        self.ops.iter().filter(|op| !op.kind.is_discrete()).count()
    }

    /// Circuit depth measured in distinct timesteps.
    pub fn depth(&self) -> usize {
        let mut steps: Vec<u64> = self.ops.iter().map(|op| op.timestep).collect();
        steps.dedup();
        steps.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CircuitRepr::from(self)).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: CircuitRepr = serde_json::from_str(text)?;
        repr.try_into()
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
struct CircuitRepr {
    num_qubits: usize,
    ops: Vec<GateOpRepr>,
    measured_qubits: Vec<usize>,
}

impl From<&Circuit> for CircuitRepr {
    fn from(c: &Circuit) -> Self {
        CircuitRepr {
            num_qubits: c.num_qubits,
            ops: c.ops.iter().map(GateOpRepr::from).collect(),
            measured_qubits: c.measured_qubits.clone(),
        }
    }
}

impl TryFrom<CircuitRepr> for Circuit {
    type Error = Error;

    fn try_from(r: CircuitRepr) -> Result<Self> {
        let ops = r
            .ops
            .into_iter()
            .map(GateOp::try_from)
            .collect::<Result<Vec<_>>>()?;
        Circuit::new(r.num_qubits, ops, r.measured_qubits)
    }
}

impl Serialize for Circuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CircuitRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CircuitRepr::deserialize(d)?;
        Circuit::try_from(repr).map_err(serde::de::Error::custom)
    }
}
