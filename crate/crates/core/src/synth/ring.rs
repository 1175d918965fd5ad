//! Exact arithmetic for single-qubit Clifford+T unitaries.
//!
//! Every product of `X`, `H`, `S` and `T` has entries in `Z[ω] / √2^k` with
//! `ω = e^{iπ/4}`. Elements of `Z[ω]` are stored as integer coefficients of
//! `1, ω, ω², ω³`; multiplication uses `ω⁴ = −1`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;

use super::sequence::Symbol;

pub(crate) type ZOmega = [i64; 4];

fn zmul(a: &ZOmega, b: &ZOmega) -> ZOmega {
    let mut c = [0i64; 4];
    for i in 0..4 {
        for j in 0..4 {
            let k = i + j;
            if k < 4 {
                c[k] += a[i] * b[j];
            } else {
                c[k - 4] -= a[i] * b[j];
            }
        }
    }
    c
}

fn zadd(a: &ZOmega, b: &ZOmega) -> ZOmega {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Multiplication by ω.
fn zrot(x: &ZOmega) -> ZOmega {
    [-x[3], x[0], x[1], x[2]]
}

/// Exact division by `√2 = ω − ω³`, if the quotient stays in `Z[ω]`.
fn zdiv_sqrt2(x: &ZOmega) -> Option<ZOmega> {
    let [a, b, c, d] = *x;
    if (a - c) % 2 != 0 || (b - d) % 2 != 0 {
        return None;
    }
    Some([(b - d) / 2, (a + c) / 2, (b + d) / 2, (c - a) / 2])
}

fn zcomplex(x: &ZOmega) -> C64 {
    let [a, b, c, d] = x.map(|v| v as f64);
    C64::new(a + (b - d) * FRAC_1_SQRT_2, c + (b + d) * FRAC_1_SQRT_2)
}

/// `entries / √2^k`, row-major, with `k` minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ExactUnitary {
    entries: [ZOmega; 4],
    k: i32,
}

/// Phase-invariant identity of an [`ExactUnitary`].
pub(crate) type CanonicalKey = [i32; 17];

impl ExactUnitary {
    pub fn identity() -> Self {
        ExactUnitary {
            entries: [[1, 0, 0, 0], [0; 4], [0; 4], [1, 0, 0, 0]],
            k: 0,
        }
    }

    pub fn of(symbol: Symbol) -> Self {
        let o = [0; 4];
        let one = [1, 0, 0, 0];
        let (entries, k) = match symbol {
            Symbol::X => ([o, one, one, o], 0),
            Symbol::H => ([one, one, one, [-1, 0, 0, 0]], 1),
            Symbol::S => ([one, o, o, [0, 0, 1, 0]], 0),
            Symbol::Sdg => ([one, o, o, [0, 0, -1, 0]], 0),
            Symbol::T => ([one, o, o, [0, 1, 0, 0]], 0),
            Symbol::Tdg => ([one, o, o, [0, 0, 0, -1]], 0),
        };
        ExactUnitary { entries, k }
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &ExactUnitary) -> ExactUnitary {
        let a = &self.entries;
        let b = &rhs.entries;
        let entries = [
            zadd(&zmul(&a[0], &b[0]), &zmul(&a[1], &b[2])),
            zadd(&zmul(&a[0], &b[1]), &zmul(&a[1], &b[3])),
            zadd(&zmul(&a[2], &b[0]), &zmul(&a[3], &b[2])),
            zadd(&zmul(&a[2], &b[1]), &zmul(&a[3], &b[3])),
        ];
        ExactUnitary {
            entries,
            k: self.k + rhs.k,
        }
        .reduced()
    }

    fn reduced(mut self) -> Self {
        while self.k > 0 {
            let divided: Option<Vec<ZOmega>> = self.entries.iter().map(zdiv_sqrt2).collect();
            match divided {
                Some(v) => {
                    self.entries = [v[0], v[1], v[2], v[3]];
                    self.k -= 1;
                }
                None => break,
            }
        }
        self
    }

    /// Key shared by exactly the unitaries equal to this one up to a power of
    /// ω, the only unit-modulus scalars of the ring.
    pub fn canonical_key(&self) -> CanonicalKey {
        let mut best: Option<CanonicalKey> = None;
        let mut e = self.entries;
        for _ in 0..8 {
            let mut key = [0i32; 17];
            key[0] = self.k;
            for (i, z) in e.iter().enumerate() {
                for (j, c) in z.iter().enumerate() {
                    key[1 + 4 * i + j] =
                        i32::try_from(*c).expect("Clifford+T coefficient exceeds i32");
                }
            }
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
            e = e.map(|z| zrot(&z));
        }
        best.expect("eight phases examined")
    }

    pub fn to_complex(&self) -> [[C64; 2]; 2] {
        let scale = FRAC_1_SQRT_2.powi(self.k);
        let e = self.entries.map(|z| zcomplex(&z) * scale);
        [[e[0], e[1]], [e[2], e[3]]]
    }
}
