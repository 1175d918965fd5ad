use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::sequence::{distance, CliffordTSequence};
use super::table::{Su2, WordTable, MAX_TABLE_DEPTH};
use crate::error::{Error, Result};
use crate::sim::rz_matrix;

/// Absolute slack when comparing a candidate's distance with `epsilon`, so a
/// word sitting exactly at the requested precision is not lost to rounding.
pub const MATCH_TOLERANCE: f64 = 1e-12;

/// Longest word the search can return.
pub const MAX_SEARCH_LENGTH: usize = 2 * MAX_TABLE_DEPTH;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub sequence: CliffordTSequence,
    pub target_theta: f64,
    pub achieved_distance: f64,
    pub length: usize,
    /// False when no word within `max_length` reached `epsilon`; `sequence` is
    /// then the closest word found.
    pub converged: bool,
}

fn table() -> &'static Mutex<WordTable> {
    static TABLE: OnceLock<Mutex<WordTable>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(WordTable::new()))
}

/// Shortest Clifford+T word within `epsilon` of `Rz(theta)`, ties broken
/// lexicographically in the order `X < H < S < Sdg < T < Tdg`.
///
/// Every word of length `ℓ` is split into a prefix of length `⌈ℓ/2⌉` and a
/// suffix of length `⌊ℓ/2⌋`. The lexicographically first shortest solution
/// has a canonical prefix and a canonical suffix, so joining the canonical
/// tables with a radius query is exhaustive.
pub fn approximate_rz(theta: f64, epsilon: f64, max_length: usize) -> Result<ApproxReport> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if max_length == 0 {
        return Err(Error::InvalidArgument("max_length must be at least 1".into()));
    }
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("angle {theta} is not finite")));
    }
    let max_length = max_length.min(MAX_SEARCH_LENGTH);
    let mut table = table().lock().unwrap_or_else(|e| e.into_inner());
    let target = Su2::rz(theta);

    let (sequence, converged) = match shortest_within(&mut table, &target, epsilon, max_length) {
        Some(seq) => (seq, true),
        None => (closest(&mut table, &target, max_length), false),
    };
    let achieved_distance = distance(&sequence.unitary(), &rz_matrix(theta));
    Ok(ApproxReport {
        length: sequence.len(),
        sequence,
        target_theta: theta,
        achieved_distance,
        converged,
    })
}

/// `sqrt(1 − |⟨p, q⟩|)` for unit quaternions, via `‖p ∓ q‖² / 2`.
fn quaternion_distance(p: &[f64; 4], q: &[f64; 4]) -> f64 {
    let minus: f64 = (0..4).map(|i| (p[i] - q[i]).powi(2)).sum();
    let plus: f64 = (0..4).map(|i| (p[i] + q[i]).powi(2)).sum();
    (minus.min(plus) / 2.0).sqrt()
}

fn query_point(target: &Su2, prefix: &Su2) -> [f64; 4] {
    // word = prefix then suffix, unitary U_s·U_p ≈ R  ⇔  U_s ≈ R·U_p†
    target.mul(&prefix.adjoint()).coords()
}

fn shortest_within(
    table: &mut WordTable,
    target: &Su2,
    epsilon: f64,
    max_length: usize,
) -> Option<CliffordTSequence> {
    let eps = epsilon + MATCH_TOLERANCE;
    let radius_sq = 2.0 * eps * eps * (1.0 + 1e-9);
    for len in 0..=max_length {
        let b = len / 2;
        let a = len - b;
        table.ensure(a);
        let prefixes = table.level(a);
        let suffixes = table.level(b);
        let tree = suffixes.index();
        for (pi, p) in prefixes.su2.iter().enumerate() {
            let v = query_point(target, p);
            let neg = v.map(|x| -x);
            let mut best: Option<u32> = None;
            let mut consider = |si: u32| {
                let d = quaternion_distance(&suffixes.su2[si as usize].coords(), &v);
                if d <= eps && best.map_or(true, |b| si < b) {
                    best = Some(si);
                }
            };
            tree.within(&v, radius_sq, &mut consider);
            tree.within(&neg, radius_sq, &mut consider);
            if let Some(si) = best {
                let mut word = table.word(a, pi as u32);
                word.extend(table.word(b, si));
                return Some(CliffordTSequence::new(word));
            }
        }
    }
    None
}

fn closest(table: &mut WordTable, target: &Su2, max_length: usize) -> CliffordTSequence {
    // (distance, length, prefix index, suffix index)
    let mut best: Option<(f64, usize, u32, u32)> = None;
    for len in 0..=max_length {
        let b = len / 2;
        let a = len - b;
        table.ensure(a);
        let prefixes = table.level(a);
        let suffixes = table.level(b);
        let tree = suffixes.index();
        for (pi, p) in prefixes.su2.iter().enumerate() {
            let v = query_point(target, p);
            for q in [v, v.map(|x| -x)] {
                if let Some((_, si)) = tree.nearest(&q) {
                    let d = quaternion_distance(&suffixes.su2[si as usize].coords(), &v);
                    if best.map_or(true, |(bd, ..)| d < bd) {
                        best = Some((d, len, pi as u32, si));
                    }
                }
            }
        }
    }
    let (_, len, pi, si) = best.expect("length zero always yields a candidate");
    let b = len / 2;
    let mut word = table.word(len - b, pi);
    word.extend(table.word(b, si));
    CliffordTSequence::new(word)
}
