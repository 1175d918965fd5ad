//! Independent reference implementations used by the integration tests.
//! Nothing here calls the library's simulator; gates are rebuilt from their
//! textbook definitions and applied as dense matrices.

#![allow(dead_code)]

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vsqec::sim::{Circuit, GateKind, GateOp};

pub type Dense = Vec<Vec<C>>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn single_matrix(kind: &GateKind) -> [[C; 2]; 2] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let h = c(FRAC_1_SQRT_2, 0.0);
    match *kind {
        GateKind::X => [[z, o], [o, z]],
        GateKind::Y => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        GateKind::Z => [[o, z], [z, -o]],
        GateKind::H => [[h, h], [h, -h]],
        GateKind::S => [[o, z], [z, c(0.0, 1.0)]],
        GateKind::Sdg => [[o, z], [z, c(0.0, -1.0)]],
        GateKind::T => [[o, z], [z, C::from_polar(1.0, PI / 4.0)]],
        GateKind::Tdg => [[o, z], [z, C::from_polar(1.0, -PI / 4.0)]],
        GateKind::Rz(t) => [[C::from_polar(1.0, -t / 2.0), z], [z, C::from_polar(1.0, t / 2.0)]],
        _ => panic!("not a single-qubit kind"),
    }
}

pub fn identity(dim: usize) -> Dense {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect()
}

/// Full 2^n × 2^n matrix of one gate; qubit 0 is the least significant bit.
pub fn embed(n: usize, op: &GateOp) -> Dense {
    let dim = 1 << n;
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    match op.kind {
        GateKind::Cnot => {
            let (a, b) = (op.qubits[0], op.qubits[1]);
            for j in 0..dim {
                let i = if j >> a & 1 == 1 { j ^ (1 << b) } else { j };
                m[i][j] = c(1.0, 0.0);
            }
        }
        GateKind::ControlledPhase(t) => {
            let (a, b) = (op.qubits[0], op.qubits[1]);
            for j in 0..dim {
                m[j][j] = if j >> a & 1 == 1 && j >> b & 1 == 1 { C::from_polar(1.0, t) } else { c(1.0, 0.0) };
            }
        }
        ref k => {
            let g = single_matrix(k);
            let q = op.qubits[0];
            for j in 0..dim {
                for i in 0..dim {
                    if (i ^ j) & !(1 << q) == 0 {
                        m[i][j] = g[i >> q & 1][j >> q & 1];
                    }
                }
            }
        }
    }
    m
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == c(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Dense, v: &[C]) -> Vec<C> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Product of every gate matrix, last gate leftmost.
pub fn circuit_unitary(circuit: &Circuit) -> Dense {
    let n = circuit.num_qubits();
    circuit.ops().iter().fold(identity(1 << n), |acc, op| matmul(&embed(n, op), &acc))
}

/// Global-phase-invariant closeness of two unitaries: 1 − |tr(A†B)| / dim.
pub fn phase_invariant_gap(a: &Dense, b: &Dense) -> f64 {
    let dim = a.len() as f64;
    let mut tr = c(0.0, 0.0);
    for i in 0..a.len() {
        for k in 0..a.len() {
            tr += a[k][i].conj() * b[k][i];
        }
    }
    1.0 - tr.norm() / dim
}

/// Probability of `bits` (character i is `measured[i]`) in state `psi`.
pub fn outcome_probability(psi: &[C], measured: &[usize], bits: &str) -> f64 {
    let want: Vec<bool> = bits.chars().map(|ch| ch == '1').collect();
    psi.iter()
        .enumerate()
        .filter(|(idx, _)| measured.iter().zip(&want).all(|(&q, &w)| (idx >> q & 1 == 1) == w))
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

pub fn random_kind(rng: &mut ChaCha8Rng, two_qubit: bool) -> GateKind {
    let pick = rng.gen_range(0..if two_qubit { 11 } else { 9 });
    let angle = rng.gen_range(-PI..PI);
    match pick {
        0 => GateKind::X,
        1 => GateKind::Y,
        2 => GateKind::Z,
        3 => GateKind::H,
        4 => GateKind::S,
        5 => GateKind::Sdg,
        6 => GateKind::T,
        7 => GateKind::Tdg,
        8 => GateKind::Rz(angle),
        9 => GateKind::ControlledPhase(angle),
        _ => GateKind::Cnot,
    }
}

/// A random circuit with one gate per timestep, measuring every qubit.
pub fn random_circuit(seed: u64, n: usize, gates: usize) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ops = (0..gates)
        .map(|t| {
            let kind = random_kind(&mut rng, n > 1);
            let qubits = if kind.arity() == 2 {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                vec![a, b]
            } else {
                vec![rng.gen_range(0..n)]
            };
            GateOp::new(kind, &qubits, t as u64)
        })
        .collect();
    Circuit::new(n, ops, (0..n).collect()).unwrap()
}

pub fn random_state(seed: u64, n: usize) -> Vec<C> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<C> = (0..1 << n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

const PAULIS: [GateKind; 3] = [GateKind::X, GateKind::Y, GateKind::Z];

/// Exact success probability when gate g independently suffers an error
/// with probability `q[g]`, the error being one of X, Y, Z (on both qubits
/// alike for two-qubit gates) chosen uniformly. Every subset of erring gates
/// and every Pauli choice is enumerated. Returns (success probability,
/// probability mass of patterns with two or more errors).
pub fn exhaustive_success(circuit: &Circuit, correct: &str, q: &[f64]) -> (f64, f64) {
    let n = circuit.num_qubits();
    let mut psi = vec![c(0.0, 0.0); 1 << n];
    psi[0] = c(1.0, 0.0);
    let mut success = 0.0;
    let mut multi = 0.0;
    walk(circuit, correct, q, 0, psi, 1.0, 0, &mut success, &mut multi);
    (success, multi)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    circuit: &Circuit,
    correct: &str,
    q: &[f64],
    g: usize,
    psi: Vec<C>,
    weight: f64,
    errors: usize,
    success: &mut f64,
    multi: &mut f64,
) {
    if weight == 0.0 {
        return;
    }
    let n = circuit.num_qubits();
    if g == circuit.len() {
        *success += weight * outcome_probability(&psi, circuit.measured_qubits(), correct);
        if errors >= 2 {
            *multi += weight;
        }
        return;
    }
    let op = &circuit.ops()[g];
    let after = matvec(&embed(n, op), &psi);
    if !op.faultable {
        walk(circuit, correct, q, g + 1, after, weight, errors, success, multi);
        return;
    }
    walk(circuit, correct, q, g + 1, after.clone(), weight * (1.0 - q[g]), errors, success, multi);
    for p in &PAULIS {
        let mut hit = after.clone();
        for &qb in &op.qubits {
            hit = matvec(&embed(n, &GateOp::new(*p, &[qb], op.timestep)), &hit);
        }
        walk(circuit, correct, q, g + 1, hit, weight * q[g] / 3.0, errors + 1, success, multi);
    }
}
