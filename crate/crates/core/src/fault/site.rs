use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{Circuit, GateKind, GateOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ERRORS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    fn gate(self) -> Option<GateKind> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(GateKind::X),
            Pauli::Y => Some(GateKind::Y),
            Pauli::Z => Some(GateKind::Z),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// How errors on two-qubit gates are enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InjectionMode {
    /// The same Pauli on both qubits: 3 error types.
    #[default]
    Mirrored,
    /// Every non-identity two-qubit Pauli: 15 error types.
    FullDepolarizing,
}

impl std::str::FromStr for InjectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mirrored" => Ok(InjectionMode::Mirrored),
            "full" | "full-depolarizing" => Ok(InjectionMode::FullDepolarizing),
            other => Err(Error::InvalidArgument(format!(
                "unknown injection mode {other:?} (expected mirrored or full)"
            ))),
        }
    }
}

/// A logical error placed right after gate `gate_index`. `paulis[i]` acts on
/// the gate's `i`-th qubit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultSite {
    pub gate_index: usize,
    pub paulis: Vec<Pauli>,
}

impl FaultSite {
    pub fn is_identity(&self) -> bool {
        self.paulis.iter().all(|&p| p == Pauli::I)
    }

    pub fn label(&self) -> String {
        self.paulis.iter().map(|p| p.to_string()).collect()
    }
}

/// Error types for a gate of the given arity, in their fixed order.
pub fn error_types(arity: usize, mode: InjectionMode) -> Vec<Vec<Pauli>> {
    match (arity, mode) {
        (1, _) => Pauli::ERRORS.iter().map(|&p| vec![p]).collect(),
        (_, InjectionMode::Mirrored) => Pauli::ERRORS.iter().map(|&p| vec![p, p]).collect(),
        (_, InjectionMode::FullDepolarizing) => Pauli::ALL
            .iter()
            .flat_map(|&a| Pauli::ALL.iter().map(move |&b| vec![a, b]))
            .filter(|pair| pair.iter().any(|&p| p != Pauli::I))
            .collect(),
    }
}

/// Every fault site on a faultable gate, ordered by gate then error type.
pub fn enumerate_sites(circuit: &Circuit, mode: InjectionMode) -> Vec<FaultSite> {
    circuit
        .ops()
        .iter()
        .enumerate()
        .filter(|(_, op)| op.faultable)
        .flat_map(|(gate_index, op)| {
            error_types(op.qubits.len(), mode)
                .into_iter()
                .map(move |paulis| FaultSite { gate_index, paulis })
        })
        .collect()
}

pub(crate) fn check_site(circuit: &Circuit, site: &FaultSite) -> Result<()> {
    let op = circuit.ops().get(site.gate_index).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "fault site gate {} out of range ({} ops)",
            site.gate_index,
            circuit.len()
        ))
    })?;
    if site.paulis.len() != op.qubits.len() {
        return Err(Error::InvalidArgument(format!(
            "fault site has {} Pauli(s) for a {}-qubit gate",
            site.paulis.len(),
            op.qubits.len()
        )));
    }
    Ok(())
}

/// The error gates for `site`, placed at the faulted gate's timestep.
pub(crate) fn error_ops(circuit: &Circuit, site: &FaultSite) -> Vec<GateOp> {
    let op = &circuit.ops()[site.gate_index];
    site.paulis
        .iter()
        .zip(&op.qubits)
        .filter_map(|(p, &q)| p.gate().map(|k| GateOp::new(k, &[q], op.timestep).unfaultable()))
        .collect()
}

/// Copy of `circuit` with the site's Pauli gates inserted immediately after
/// the faulted gate.
pub fn inject(circuit: &Circuit, site: &FaultSite) -> Result<Circuit> {
    check_site(circuit, site)?;
    let mut ops = Vec::with_capacity(circuit.len() + site.paulis.len());
    for (i, op) in circuit.ops().iter().enumerate() {
        ops.push(op.clone());
        if i == site.gate_index {
            ops.extend(error_ops(circuit, site));
        }
    }
    Circuit::new(circuit.num_qubits(), ops, circuit.measured_qubits().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpe::{build_qpe, QpeSpec};
    use crate::sim::{simulate, StateVector};

    fn circuit(ops: Vec<GateOp>, n: usize) -> Circuit {
        Circuit::new(n, ops, (0..n).collect()).unwrap()
    }

    #[test]
    fn site_counts() {
        let c = circuit(vec![GateOp::new(GateKind::H, &[0], 0)], 1);
        assert_eq!(enumerate_sites(&c, InjectionMode::Mirrored).len(), 3);

        let c = circuit(vec![GateOp::new(GateKind::Cnot, &[0, 1], 0)], 2);
        assert_eq!(enumerate_sites(&c, InjectionMode::Mirrored).len(), 3);
        let full = enumerate_sites(&c, InjectionMode::FullDepolarizing);
        assert_eq!(full.len(), 15);
        assert!(full.iter().all(|s| !s.is_identity()));
        assert_eq!(full[0].label(), "IX");
        assert_eq!(full[14].label(), "ZZ");
    }

    #[test]
    fn unfaultable_prep_has_no_sites() {
        let (c, _) = build_qpe(&QpeSpec::default()).unwrap();
        let sites = enumerate_sites(&c, InjectionMode::Mirrored);
        assert!(sites.iter().all(|s| c.ops()[s.gate_index].faultable));
        assert!(!sites.iter().any(|s| s.gate_index == 0));
    }

    #[test]
    fn inject_leaves_original_untouched() {
        let c = circuit(
            vec![
                GateOp::new(GateKind::H, &[0], 0),
                GateOp::new(GateKind::Cnot, &[0, 1], 1),
            ],
            2,
        );
        let before = c.clone();
        let noisy = inject(
            &c,
            &FaultSite {
                gate_index: 0,
                paulis: vec![Pauli::Y],
            },
        )
        .unwrap();
        assert_eq!(c, before);
        assert_eq!(noisy.len(), 3);
        assert_eq!(noisy.ops()[1].kind, GateKind::Y);
        assert_eq!(noisy.ops()[1].timestep, 0);
    }

    #[test]
    fn inject_rejects_bad_sites() {
        let c = circuit(vec![GateOp::new(GateKind::H, &[0], 0)], 1);
        let bad_index = FaultSite {
            gate_index: 4,
            paulis: vec![Pauli::X],
        };
        let bad_arity = FaultSite {
            gate_index: 0,
            paulis: vec![Pauli::X, Pauli::X],
        };
        assert!(inject(&c, &bad_index).is_err());
        assert!(inject(&c, &bad_arity).is_err());
    }

    #[test]
    fn z_before_measurement_is_harmless_and_x_cancels() {
        let c = circuit(vec![GateOp::new(GateKind::X, &[0], 0)], 1);
        let run = |c: &Circuit| {
            simulate(c, &StateVector::zero(1))
                .unwrap()
                .output_distribution(&[0])
                .unwrap()
        };
        let z = inject(&c, &FaultSite { gate_index: 0, paulis: vec![Pauli::Z] }).unwrap();
        assert_eq!(run(&z), run(&c));
        let x = inject(&c, &FaultSite { gate_index: 0, paulis: vec![Pauli::X] }).unwrap();
        assert_eq!(run(&x)["0"], 1.0);
    }

    #[test]
    fn y_matches_x_then_z() {
        let c = circuit(
            vec![
                GateOp::new(GateKind::H, &[0], 0),
                GateOp::new(GateKind::T, &[0], 1),
                GateOp::new(GateKind::H, &[0], 2),
            ],
            1,
        );
        let y = inject(&c, &FaultSite { gate_index: 1, paulis: vec![Pauli::Y] }).unwrap();
        let mut ops = c.ops().to_vec();
        ops.insert(2, GateOp::new(GateKind::X, &[0], 1));
        ops.insert(3, GateOp::new(GateKind::Z, &[0], 1));
        let xz = Circuit::new(1, ops, vec![0]).unwrap();
        let dist = |c: &Circuit| {
            simulate(c, &StateVector::zero(1))
                .unwrap()
                .outcome_probabilities(&[0])
                .unwrap()
        };
        let (a, b) = (dist(&y), dist(&xz));
        assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    }
}
