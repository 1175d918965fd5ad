use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use super::circuit::Circuit;
use super::gate::{GateKind, GateOp};
use crate::error::{Error, Result};

/// Dense amplitude vector. Bit `k` of a basis index is the value of qubit `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// The all-zeros basis state.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![C64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[index] = C64::new(1.0, 0.0);
        StateVector {
            num_qubits,
            amplitudes,
        }
    }

    pub fn from_amplitudes(num_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != 1 << num_qubits {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes for {num_qubits} qubit(s)",
                amplitudes.len()
            )));
        }
        let s = StateVector {
            num_qubits,
            amplitudes,
        };
        if (s.norm_sqr() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "state not normalized (norm² = {})",
                s.norm_sqr()
            )));
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies `op` in place.
    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.num_qubits)?;
        match op.kind {
            GateKind::Cnot => self.apply_cnot(op.qubits[0], op.qubits[1]),
            GateKind::ControlledPhase(theta) => {
                self.apply_cphase(op.qubits[0], op.qubits[1], theta)
            }
            kind => {
                let m = kind.matrix1().expect("single-qubit kind");
                self.apply_mat1(op.qubits[0], &m);
            }
        }
        Ok(())
    }

    fn apply_mat1(&mut self, q: usize, m: &super::gate::Mat2) {
        let bit = 1usize << q;
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                let a0 = self.amplitudes[i];
                let a1 = self.amplitudes[i | bit];
                self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    fn apply_cnot(&mut self, control: usize, target: usize) {
        let (cb, tb) = (1usize << control, 1usize << target);
        for i in 0..self.amplitudes.len() {
            if i & cb != 0 && i & tb == 0 {
                self.amplitudes.swap(i, i | tb);
            }
        }
    }

    fn apply_cphase(&mut self, a: usize, b: usize, theta: f64) {
        let mask = (1usize << a) | (1usize << b);
        let phase = C64::from_polar(1.0, theta);
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *amp *= phase;
            }
        }
    }

    /// Probability of each measured bitstring. Character `i` of a key is the
    /// value of `measured[i]`; unmeasured qubits are summed out.
    pub fn output_distribution(&self, measured: &[usize]) -> Result<BTreeMap<String, f64>> {
        Ok(self
            .outcome_probabilities(measured)?
            .into_iter()
            .enumerate()
            .filter(|(_, p)| *p > 0.0)
            .map(|(outcome, p)| (bitstring(outcome, measured.len()), p))
            .collect())
    }

    /// Marginal probabilities indexed by outcome, where bit `i` of the outcome
    /// (counting from the most significant of `measured.len()` bits) is
    /// `measured[i]`.
    pub fn outcome_probabilities(&self, measured: &[usize]) -> Result<Vec<f64>> {
        if let Some(&q) = measured.iter().find(|&&q| q >= self.num_qubits) {
            return Err(Error::InvalidArgument(format!(
                "measured qubit {q} out of range"
            )));
        }
        let m = measured.len();
        let mut probs = vec![0.0; 1 << m];
        for (i, amp) in self.amplitudes.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut outcome = 0usize;
            for &q in measured {
                outcome = (outcome << 1) | ((i >> q) & 1);
            }
            probs[outcome] += p;
        }
        Ok(probs)
    }

    /// Probability of observing `correct` on `measured`.
    pub fn success_probability(&self, measured: &[usize], correct: &str) -> Result<f64> {
        let outcome = parse_bitstring(correct, measured.len())?;
        Ok(self.outcome_probabilities(measured)?[outcome])
    }
}

fn bitstring(outcome: usize, width: usize) -> String {
    (0..width)
        .map(|i| {
            if (outcome >> (width - 1 - i)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

pub(crate) fn parse_bitstring(s: &str, width: usize) -> Result<usize> {
    if s.len() != width {
        return Err(Error::InvalidArgument(format!(
            "bitstring {s:?} has length {}, expected {width}",
            s.len()
        )));
    }
    s.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::InvalidArgument(format!("bitstring {s:?} is not binary"))),
    })
}

/// Returns a copy of `state` with `op` applied.
pub fn apply_gate(state: &StateVector, op: &GateOp) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(op)?;
    Ok(out)
}

/// Applies every op of `circuit` in order.
pub fn simulate(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if initial.num_qubits() != circuit.num_qubits() {
        return Err(Error::InvalidCircuit(format!(
            "circuit has {} qubit(s) but state has {}",
            circuit.num_qubits(),
            initial.num_qubits()
        )));
    }
    let mut state = initial.clone();
    for op in circuit.ops() {
        state.apply(op)?;
    }
    Ok(state)
}

pub fn output_distribution(
    state: &StateVector,
    measured: &[usize],
) -> Result<BTreeMap<String, f64>> {
    state.output_distribution(measured)
}

/// Probability of a successful trial: the mass on `correct`, or zero if absent.
pub fn pst(distribution: &BTreeMap<String, f64>, correct: &str) -> Result<f64> {
    if let Some(width) = distribution.keys().next().map(String::len) {
        if correct.len() != width {
            return Err(Error::InvalidArgument(format!(
                "bitstring {correct:?} has length {}, distribution keys have length {width}",
                correct.len()
            )));
        }
    }
    Ok(distribution.get(correct).copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn op(kind: GateKind, q: &[usize]) -> GateOp {
        GateOp::new(kind, q, 0)
    }

    #[test]
    fn x_flips_zero() {
        let s = apply_gate(&StateVector::zero(1), &op(GateKind::X, &[0])).unwrap();
        assert_eq!(s.amplitudes()[1], C64::new(1.0, 0.0));
        assert_eq!(s.amplitudes()[0], C64::new(0.0, 0.0));
    }

    #[test]
    fn hadamard_on_zero() {
        let s = apply_gate(&StateVector::zero(1), &op(GateKind::H, &[0])).unwrap();
        for a in s.amplitudes() {
            assert!((a - C64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        // qubit 0 = 1, qubit 1 = 0 → index 1
        let s = apply_gate(&StateVector::basis(2, 1), &op(GateKind::Cnot, &[0, 1])).unwrap();
        assert!((s.amplitudes()[3] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn out_of_range_is_invalid_circuit() {
        let err = apply_gate(&StateVector::zero(2), &op(GateKind::H, &[2])).unwrap_err();
        assert!(matches!(err, Error::InvalidCircuit(_)));
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(2, vec![], vec![0]).unwrap();
        let s = StateVector::basis(2, 3);
        assert_eq!(simulate(&c, &s).unwrap(), s);
    }

    #[test]
    fn double_hadamard_restores_zero() {
        let c = Circuit::new(
            1,
            vec![
                GateOp::new(GateKind::H, &[0], 0),
                GateOp::new(GateKind::H, &[0], 1),
            ],
            vec![0],
        )
        .unwrap();
        let s = simulate(&c, &StateVector::zero(1)).unwrap();
        assert!((s.amplitudes()[0] - C64::new(1.0, 0.0)).norm() <= 1e-12);
        assert!(s.amplitudes()[1].norm() <= 1e-12);
    }

    #[test]
    fn simulate_rejects_width_mismatch() {
        let c = Circuit::new(2, vec![], vec![0]).unwrap();
        assert!(simulate(&c, &StateVector::zero(3)).is_err());
    }

    #[test]
    fn distributions() {
        let zero = StateVector::zero(1);
        let d = zero.output_distribution(&[0]).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d["0"], 1.0);

        let plus = apply_gate(&zero, &op(GateKind::H, &[0])).unwrap();
        let d = plus.output_distribution(&[0]).unwrap();
        assert!((d["0"] - 0.5).abs() < 1e-12 && (d["1"] - 0.5).abs() < 1e-12);

        let mut bell = StateVector::zero(2);
        bell.apply(&op(GateKind::H, &[0])).unwrap();
        bell.apply(&op(GateKind::Cnot, &[0, 1])).unwrap();
        let d = bell.output_distribution(&[0]).unwrap();
        assert!((d["0"] - 0.5).abs() < 1e-12 && (d["1"] - 0.5).abs() < 1e-12);
        let total: f64 = bell.output_distribution(&[1, 0]).unwrap().values().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bitstring_order_follows_measured_list() {
        // qubit 0 = 1, qubit 1 = 0
        let s = StateVector::basis(2, 1);
        assert!(s.output_distribution(&[0, 1]).unwrap().contains_key("10"));
        assert!(s.output_distribution(&[1, 0]).unwrap().contains_key("01"));
        assert_eq!(s.success_probability(&[0, 1], "10").unwrap(), 1.0);
    }

    #[test]
    fn pst_lookup() {
        let mut d = BTreeMap::new();
        d.insert("00".to_string(), 1.0);
        assert_eq!(pst(&d, "00").unwrap(), 1.0);
        assert_eq!(pst(&d, "01").unwrap(), 0.0);
        assert!(matches!(pst(&d, "0"), Err(Error::InvalidArgument(_))));

        let mut d = BTreeMap::new();
        d.insert("00".to_string(), 0.25);
        d.insert("11".to_string(), 0.75);
        assert_eq!(pst(&d, "11").unwrap(), 0.75);
    }
}
