use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{GateKind, Mat2};

/// Search alphabet, declared in tie-break order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    X,
    H,
    S,
    Sdg,
    T,
    Tdg,
}

impl Symbol {
    pub const ALL: [Symbol; 6] = [
        Symbol::X,
        Symbol::H,
        Symbol::S,
        Symbol::Sdg,
        Symbol::T,
        Symbol::Tdg,
    ];

    pub fn gate(self) -> GateKind {
        match self {
            Symbol::X => GateKind::X,
            Symbol::H => GateKind::H,
            Symbol::S => GateKind::S,
            Symbol::Sdg => GateKind::Sdg,
            Symbol::T => GateKind::T,
            Symbol::Tdg => GateKind::Tdg,
        }
    }

    pub fn matrix(self) -> Mat2 {
        self.gate().matrix1().expect("single-qubit symbol")
    }

    pub fn letter(self) -> char {
        match self {
            Symbol::X => 'X',
            Symbol::H => 'H',
            Symbol::S => 'S',
            Symbol::Sdg => 's',
            Symbol::T => 'T',
            Symbol::Tdg => 't',
        }
    }

    pub fn from_letter(c: char) -> Option<Symbol> {
        Some(match c {
            'X' => Symbol::X,
            'H' => Symbol::H,
            'S' => Symbol::S,
            's' => Symbol::Sdg,
            'T' => Symbol::T,
            't' => Symbol::Tdg,
            _ => return None,
        })
    }


    pub(crate) fn from_index(i: u8) -> Symbol {
        Symbol::ALL[i as usize]
    }
}

/// Whether the adjacent pair `a b` can be shortened or rewritten to a
/// lexicographically smaller pair.
pub(crate) fn reducible_pair(a: Symbol, b: Symbol) -> bool {
    use Symbol::*;
    matches!(
        (a, b),
        (H, H)
            | (X, X)
            | (T, T)
            | (Tdg, Tdg)
            | (S, Sdg)
            | (Sdg, S)
            | (T, Tdg)
            | (Tdg, T)
            | (Sdg, Sdg)
    )
}

/// Clifford+T word, leftmost symbol applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffordTSequence {
    gates: Vec<Symbol>,
}

impl CliffordTSequence {
    pub fn new(gates: Vec<Symbol>) -> Self {
        CliffordTSequence { gates }
    }

    pub fn gates(&self) -> &[Symbol] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn t_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|s| matches!(s, Symbol::T | Symbol::Tdg))
            .count()
    }

    /// The word read in the opposite direction.
    pub fn reversed(&self) -> Self {
        CliffordTSequence::new(self.gates.iter().rev().copied().collect())
    }

    pub fn is_normal_form(&self) -> bool {
        self.gates.windows(2).all(|w| !reducible_pair(w[0], w[1]))
    }

    /// Dense product `G_n ⋯ G_1`.
    pub fn unitary(&self) -> Mat2 {
        self.gates
            .iter()
            .fold(identity2(), |acc, s| mat2_mul(&s.matrix(), &acc))
    }
}

impl fmt::Display for CliffordTSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.gates.iter().try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

impl FromStr for CliffordTSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Symbol::from_letter(c).ok_or_else(|| {
                    Error::InvalidArgument(format!("unknown gate symbol {c:?} in {s:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(CliffordTSequence::new)
    }
}

impl Serialize for CliffordTSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CliffordTSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub fn identity2() -> Mat2 {
    let o = C64::new(1.0, 0.0);
    let z = C64::new(0.0, 0.0);
    [[o, z], [z, o]]
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[C64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for col in 0..2 {
            c[r][col] = a[r][0] * b[0][col] + a[r][1] * b[1][col];
        }
    }
    c
}

pub fn mat2_adjoint(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Global-phase-invariant operator distance `sqrt(max(0, 1 − |tr(U†V)|/2))`.
///
/// Evaluated as `sqrt((Im² a + |b|²) / (1 + |Re a|))` on the `SU(2)` part
/// `[[a, −b*], [b, a*]]` of `U†V`, which equals the trace form for unitary
/// inputs without cancelling near zero.
pub fn distance(u: &Mat2, v: &Mat2) -> f64 {
    let w = mat2_mul(&mat2_adjoint(u), v);
    let det = w[0][0] * w[1][1] - w[0][1] * w[1][0];
    let phase = det.sqrt();
    if phase.norm() == 0.0 {
        return 1.0;
    }
    let a = (w[0][0] / phase + (w[1][1] / phase).conj()) * 0.5;
    let b = (w[1][0] / phase - (w[0][1] / phase).conj()) * 0.5;
    let num = a.im * a.im + b.norm_sqr();
    let den = 1.0 + a.re.abs();
    (num / den).max(0.0).sqrt()
}

/// Direct trace formula; loses precision below about `1e-8`.
pub fn trace_distance(u: &Mat2, v: &Mat2) -> f64 {
    let mut tr = C64::new(0.0, 0.0);
    for r in 0..2 {
        for c in 0..2 {
            tr += u[r][c].conj() * v[r][c];
        }
    }
    (1.0 - tr.norm() / 2.0).max(0.0).sqrt()
}
