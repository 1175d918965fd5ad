use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 2×2 complex matrix in row-major order.
pub type Mat2 = [[C64; 2]; 2];

/// 4×4 complex matrix over the basis `b0 + 2·b1` where `b0` is the bit of the
/// op's first qubit and `b1` of its second.
pub type Mat4 = [[C64; 4]; 4];

/// Logical gate kinds. Angles are radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rz(f64),
    /// Controlled `Rz`-style phase: `diag(1, 1, 1, e^{iθ})`.
    ControlledPhase(f64),
    Cnot,
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::ControlledPhase(_) | GateKind::Cnot => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "Sdg",
            GateKind::T => "T",
            GateKind::Tdg => "Tdg",
            GateKind::Rz(_) => "Rz",
            GateKind::ControlledPhase(_) => "CPhase",
            GateKind::Cnot => "CNOT",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            GateKind::Rz(theta) | GateKind::ControlledPhase(theta) => vec![theta],
            _ => Vec::new(),
        }
    }

    pub fn from_parts(name: &str, params: &[f64]) -> Result<Self> {
        let angle = || -> Result<f64> {
            match params {
                [theta] if theta.is_finite() => Ok(*theta),
                _ => Err(Error::InvalidCircuit(format!(
                    "gate {name} takes exactly one finite angle, got {params:?}"
                ))),
            }
        };
        let plain = |kind: GateKind| -> Result<GateKind> {
            if params.is_empty() {
                Ok(kind)
            } else {
                Err(Error::InvalidCircuit(format!("gate {name} takes no parameters")))
            }
        };
        match name {
            "X" => plain(GateKind::X),
            "Y" => plain(GateKind::Y),
            "Z" => plain(GateKind::Z),
            "H" => plain(GateKind::H),
            "S" => plain(GateKind::S),
            "Sdg" => plain(GateKind::Sdg),
            "T" => plain(GateKind::T),
            "Tdg" => plain(GateKind::Tdg),
            "CNOT" => plain(GateKind::Cnot),
            "Rz" => Ok(GateKind::Rz(angle()?)),
            "CPhase" => Ok(GateKind::ControlledPhase(angle()?)),
            other => Err(Error::InvalidCircuit(format!("unknown gate kind {other:?}"))),
        }
    }

    /// True for the discrete Clifford+T kinds that need no synthesis.
    pub fn is_discrete(&self) -> bool {
        !matches!(self, GateKind::Rz(_) | GateKind::ControlledPhase(_))
    }

    /// Single-qubit matrix, `None` for two-qubit kinds.
    pub fn matrix1(&self) -> Option<Mat2> {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let m = match *self {
            GateKind::X => [[z, o], [o, z]],
            GateKind::Y => [[z, -i], [i, z]],
            GateKind::Z => [[o, z], [z, -o]],
            GateKind::H => [[h, h], [h, -h]],
            GateKind::S => [[o, z], [z, i]],
            GateKind::Sdg => [[o, z], [z, -i]],
            GateKind::T => [[o, z], [z, C64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]],
            GateKind::Tdg => [[o, z], [z, C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)]],
            GateKind::Rz(theta) => rz_matrix(theta),
            GateKind::ControlledPhase(_) | GateKind::Cnot => return None,
        };
        Some(m)
    }

    /// Matrix of the gate as a 4×4 operator. Single-qubit kinds act on the
    /// first basis bit.
    pub fn matrix4(&self) -> Mat4 {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let mut m = [[z; 4]; 4];
        match *self {
            GateKind::Cnot => {
                // control = bit 0, target = bit 1
                m[0][0] = o;
                m[2][2] = o;
                m[3][1] = o;
                m[1][3] = o;
            }
            GateKind::ControlledPhase(theta) => {
                m[0][0] = o;
                m[1][1] = o;
                m[2][2] = o;
                m[3][3] = C64::from_polar(1.0, theta);
            }
            _ => {
                let u = self.matrix1().expect("single-qubit kind");
                for hi in 0..2 {
                    for r in 0..2 {
                        for c in 0..2 {
                            m[2 * hi + r][2 * hi + c] = u[r][c];
                        }
                    }
                }
            }
        }
        m
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::Rz(theta) | GateKind::ControlledPhase(theta) => {
                write!(f, "{}({theta})", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

pub fn rz_matrix(theta: f64) -> Mat2 {
    let z = C64::new(0.0, 0.0);
    [
        [C64::from_polar(1.0, -theta / 2.0), z],
        [z, C64::from_polar(1.0, theta / 2.0)],
    ]
}

/// A gate placed on concrete qubits at a logical timestep.
#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub timestep: u64,
    /// Whether fault injection may place errors on this gate.
    pub faultable: bool,
}

impl GateOp {
    pub fn new(kind: GateKind, qubits: &[usize], timestep: u64) -> Self {
        GateOp {
            kind,
            qubits: qubits.to_vec(),
            timestep,
            faultable: true,
        }
    }

    pub fn unfaultable(mut self) -> Self {
        self.faultable = false;
        self
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if self.qubits.len() != self.kind.arity() {
            return Err(Error::InvalidCircuit(format!(
                "{} expects {} qubit(s), got {:?}",
                self.kind.name(),
                self.kind.arity(),
                self.qubits
            )));
        }
        if let Some(&q) = self.qubits.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::InvalidCircuit(format!(
                "qubit index {q} out of range for {num_qubits} qubit(s)"
            )));
        }
        if self.qubits.len() == 2 && self.qubits[0] == self.qubits[1] {
            return Err(Error::InvalidCircuit(format!(
                "{} on repeated qubit {}",
                self.kind.name(),
                self.qubits[0]
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct GateOpRepr {
    kind: String,
    #[serde(default)]
    params: Vec<f64>,
    qubits: Vec<usize>,
    timestep: u64,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    faultable: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

impl From<&GateOp> for GateOpRepr {
    fn from(op: &GateOp) -> Self {
        GateOpRepr {
            kind: op.kind.name().to_string(),
            params: op.kind.params(),
            qubits: op.qubits.clone(),
            timestep: op.timestep,
            faultable: op.faultable,
        }
    }
}

impl TryFrom<GateOpRepr> for GateOp {
    type Error = Error;

    fn try_from(r: GateOpRepr) -> Result<Self> {
        Ok(GateOp {
            kind: GateKind::from_parts(&r.kind, &r.params)?,
            qubits: r.qubits,
            timestep: r.timestep,
            faultable: r.faultable,
        })
    }
}
