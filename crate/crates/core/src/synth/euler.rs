use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::sequence::{distance, mat2_adjoint, mat2_mul};
use crate::error::{Error, Result};
use crate::sim::{rz_matrix, GateKind, Mat2};

/// Angles of `U = Rz(beta) · H · Rz(gamma) · H · Rz(delta)` up to global phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerAngles {
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl EulerAngles {
    /// Dense product of the five factors.
    pub fn unitary(&self) -> Mat2 {
        let h = GateKind::H.matrix1().expect("H is single-qubit");
        [rz_matrix(self.beta), h, rz_matrix(self.gamma), h, rz_matrix(self.delta)]
            .iter()
            .fold(super::sequence::identity2(), |acc, m| mat2_mul(&acc, m))
    }
}

/// Maps an angle into `(−2π, 2π]`.
fn wrap(theta: f64) -> f64 {
    let mut t = theta % (4.0 * PI);
    if t <= -2.0 * PI {
        t += 4.0 * PI;
    } else if t > 2.0 * PI {
        t -= 4.0 * PI;
    }
    t
}

pub fn euler_decompose(u: &Mat2) -> Result<EulerAngles> {
    let prod = mat2_mul(&mat2_adjoint(u), u);
    let off = (0..2)
        .flat_map(|r| (0..2).map(move |c| (r, c)))
        .map(|(r, c)| (prod[r][c] - if r == c { 1.0 } else { 0.0 }).norm())
        .fold(0.0, f64::max);
    if !(off <= 1e-9) {
        return Err(Error::InvalidArgument(format!(
            "matrix is not unitary (‖U†U − I‖ = {off:e})"
        )));
    }

    // Remove the global phase so U = [[a, −b*], [b, a*]].
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let phase = det.sqrt();
    let a = u[0][0] / phase;
    let b = u[1][0] / phase;

    // Rz(β)Rx(γ)Rz(δ) has a = e^{−i(β+δ)/2} cos(γ/2), b = −i e^{i(β−δ)/2} sin(γ/2).
    let gamma = 2.0 * b.norm().atan2(a.norm());
    let sum = if a.norm() > 1e-12 { -2.0 * a.arg() } else { 0.0 };
    let diff = if b.norm() > 1e-12 {
        2.0 * (b * C64::new(0.0, 1.0)).arg()
    } else {
        0.0
    };
    let angles = EulerAngles {
        beta: wrap((sum + diff) / 2.0),
        gamma: wrap(gamma),
        delta: wrap((sum - diff) / 2.0),
    };
    debug_assert!(distance(&angles.unitary(), u) <= 1e-9);
    Ok(angles)
}
