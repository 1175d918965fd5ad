//! Breadth-first tables of canonical Clifford+T words.
//!
//! Level `ℓ` holds, for every single-qubit Clifford+T unitary (up to global
//! phase) whose shortest word has length `ℓ`, the lexicographically smallest
//! such word. Levels are generated in lexicographic order by extending each
//! canonical word of level `ℓ − 1` with every symbol, so the first word to
//! reach a new unitary is its canonical word.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;

use super::ring::{CanonicalKey, ExactUnitary};
use super::sequence::Symbol;
#[cfg(test)]
use super::sequence::CliffordTSequence;
use crate::sim::Mat2;

/// Deepest level the tables are grown to; searches reach twice this length.
pub const MAX_TABLE_DEPTH: usize = 30;

/// Unit quaternion form of an `SU(2)` matrix `[[a, −b*], [b, a*]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Su2 {
    pub a: C64,
    pub b: C64,
}

impl Su2 {
    pub fn from_unitary(m: &Mat2) -> Self {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let phase = det.sqrt();
        Su2 {
            a: m[0][0] / phase,
            b: m[1][0] / phase,
        }
    }

    pub fn rz(theta: f64) -> Self {
        Su2 {
            a: C64::from_polar(1.0, -theta / 2.0),
            b: C64::new(0.0, 0.0),
        }
    }

    pub fn mul(&self, rhs: &Su2) -> Su2 {
        Su2 {
            a: self.a * rhs.a - self.b.conj() * rhs.b,
            b: self.b * rhs.a + self.a.conj() * rhs.b,
        }
    }

    pub fn adjoint(&self) -> Su2 {
        Su2 {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.a.re, self.a.im, self.b.re, self.b.im]
    }

    /// Coordinates with the sign fixed so `q` and `−q` map to one point.
    pub fn signed_coords(&self) -> [f64; 4] {
        let c = self.coords();
        let first = c.iter().copied().find(|x| x.abs() > 1e-12).unwrap_or(0.0);
        if first < 0.0 {
            c.map(|x| -x)
        } else {
            c
        }
    }
}

fn dist_sq(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    (0..4).map(|i| (a[i] - b[i]).powi(2)).sum()
}

const LEAF: usize = 8;

/// Static 4-d k-d tree over a level's points.
pub(crate) struct KdTree {
    order: Vec<u32>,
    pts: Vec<[f64; 4]>,
}

impl KdTree {
    fn build(points: &[[f64; 4]]) -> Self {
        let mut order: Vec<u32> = (0..points.len() as u32).collect();
        split(&mut order, points, 0);
        let pts = order.iter().map(|&i| points[i as usize]).collect();
        KdTree { order, pts }
    }

    /// Calls `visit(index)` for every point within squared radius `r2` of `q`.
    pub fn within(&self, q: &[f64; 4], r2: f64, visit: &mut impl FnMut(u32)) {
        self.within_range(0, self.pts.len(), 0, q, r2, visit);
    }

    fn within_range(
        &self,
        lo: usize,
        hi: usize,
        depth: usize,
        q: &[f64; 4],
        r2: f64,
        visit: &mut impl FnMut(u32),
    ) {
        if hi - lo <= LEAF {
            for i in lo..hi {
                if dist_sq(&self.pts[i], q) <= r2 {
                    visit(self.order[i]);
                }
            }
            return;
        }
        let mid = lo + (hi - lo) / 2;
        let dim = depth % 4;
        if dist_sq(&self.pts[mid], q) <= r2 {
            visit(self.order[mid]);
        }
        let diff = q[dim] - self.pts[mid][dim];
        if diff <= 0.0 || diff * diff <= r2 {
            self.within_range(lo, mid, depth + 1, q, r2, visit);
        }
        if diff >= 0.0 || diff * diff <= r2 {
            self.within_range(mid + 1, hi, depth + 1, q, r2, visit);
        }
    }

    /// Nearest point as `(squared distance, index)`; ties resolve to the
    /// smaller index.
    pub fn nearest(&self, q: &[f64; 4]) -> Option<(f64, u32)> {
        let mut best = None;
        self.nearest_range(0, self.pts.len(), 0, q, &mut best);
        best
    }

    fn nearest_range(
        &self,
        lo: usize,
        hi: usize,
        depth: usize,
        q: &[f64; 4],
        best: &mut Option<(f64, u32)>,
    ) {
        let offer = |d: f64, idx: u32, best: &mut Option<(f64, u32)>| {
            if best.map_or(true, |(bd, bi)| d < bd || (d == bd && idx < bi)) {
                *best = Some((d, idx));
            }
        };
        if hi - lo <= LEAF {
            for i in lo..hi {
                offer(dist_sq(&self.pts[i], q), self.order[i], best);
            }
            return;
        }
        let mid = lo + (hi - lo) / 2;
        let dim = depth % 4;
        offer(dist_sq(&self.pts[mid], q), self.order[mid], best);
        let diff = q[dim] - self.pts[mid][dim];
        let (near, far) = if diff <= 0.0 {
            ((lo, mid), (mid + 1, hi))
        } else {
            ((mid + 1, hi), (lo, mid))
        };
        self.nearest_range(near.0, near.1, depth + 1, q, best);
        if best.map_or(true, |(bd, _)| diff * diff <= bd) {
            self.nearest_range(far.0, far.1, depth + 1, q, best);
        }
    }
}

fn split(order: &mut [u32], points: &[[f64; 4]], depth: usize) {
    if order.len() <= LEAF {
        return;
    }
    let dim = depth % 4;
    let mid = order.len() / 2;
    order.select_nth_unstable_by(mid, |&a, &b| {
        points[a as usize][dim]
            .total_cmp(&points[b as usize][dim])
            .then(a.cmp(&b))
    });
    let (left, rest) = order.split_at_mut(mid);
    split(left, points, depth + 1);
    split(&mut rest[1..], points, depth + 1);
}

pub(crate) struct Level {
    parent: Vec<u32>,
    symbol: Vec<u8>,
    pub su2: Vec<Su2>,
    index: OnceLock<KdTree>,
}

impl Level {
    pub fn index(&self) -> &KdTree {
        self.index.get_or_init(|| {
            let pts: Vec<[f64; 4]> = self.su2.iter().map(Su2::signed_coords).collect();
            KdTree::build(&pts)
        })
    }
}

pub(crate) struct WordTable {
    levels: Vec<Level>,
    seen: HashSet<CanonicalKey>,
    frontier: Vec<ExactUnitary>,
}

impl WordTable {
    pub fn new() -> Self {
        let id = ExactUnitary::identity();
        let mut seen = HashSet::new();
        seen.insert(id.canonical_key());
        WordTable {
            levels: vec![Level {
                parent: vec![0],
                symbol: vec![0],
                su2: vec![Su2::from_unitary(&id.to_complex())],
                index: OnceLock::new(),
            }],
            seen,
            frontier: vec![id],
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, len: usize) -> &Level {
        &self.levels[len]
    }

    /// Grows the table until level `len` exists.
    pub fn ensure(&mut self, len: usize) {
        assert!(len <= MAX_TABLE_DEPTH, "table depth {len} exceeds {MAX_TABLE_DEPTH}");
        while self.depth() < len {
            self.grow();
        }
    }

    fn grow(&mut self) {
        let mut level = Level {
            parent: Vec::new(),
            symbol: Vec::new(),
            su2: Vec::new(),
            index: OnceLock::new(),
        };
        let mut frontier = Vec::new();
        let gates = Symbol::ALL.map(ExactUnitary::of);
        for (pi, u) in self.frontier.iter().enumerate() {
            for (si, g) in gates.iter().enumerate() {
                let next = g.mul(u);
                if self.seen.insert(next.canonical_key()) {
                    level.parent.push(pi as u32);
                    level.symbol.push(si as u8);
                    level.su2.push(Su2::from_unitary(&next.to_complex()));
                    frontier.push(next);
                }
            }
        }
        self.levels.push(level);
        self.frontier = frontier;
    }

    pub fn word(&self, len: usize, index: u32) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(len);
        let mut idx = index;
        for l in (1..=len).rev() {
            let level = &self.levels[l];
            out.push(Symbol::from_index(level.symbol[idx as usize]));
            idx = level.parent[idx as usize];
        }
        out.reverse();
        out
    }

    #[cfg(test)]
    pub fn sequence(&self, len: usize, index: u32) -> CliffordTSequence {
        CliffordTSequence::new(self.word(len, index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::sequence::distance;

    #[test]
    fn level_sizes_are_stable() {
        let mut t = WordTable::new();
        t.ensure(8);
        let sizes: Vec<usize> = (0..=8).map(|l| t.level(l).su2.len()).collect();
        assert_eq!(sizes, vec![1, 6, 17, 34, 40, 62, 84, 132, 160]);
    }

    #[test]
    fn canonical_words_are_normal_and_sorted() {
        let mut t = WordTable::new();
        t.ensure(7);
        for len in 1..=7 {
            let words: Vec<_> = (0..t.level(len).su2.len() as u32)
                .map(|i| t.sequence(len, i))
                .collect();
            assert!(words.windows(2).all(|w| w[0] < w[1]));
            assert!(words.iter().all(|w| w.is_normal_form() && w.len() == len));
        }
    }

    #[test]
    fn stored_points_match_words() {
        let mut t = WordTable::new();
        t.ensure(6);
        for len in 0..=6 {
            for (i, su2) in t.level(len).su2.iter().enumerate() {
                let dense = t.sequence(len, i as u32).unitary();
                let back = [[su2.a, -su2.b.conj()], [su2.b, su2.a.conj()]];
                assert!(distance(&dense, &back) < 1e-12);
            }
        }
    }

    #[test]
    fn kd_tree_agrees_with_scan() {
        let mut t = WordTable::new();
        t.ensure(9);
        let level = t.level(9);
        let pts: Vec<[f64; 4]> = level.su2.iter().map(Su2::signed_coords).collect();
        let tree = level.index();
        for probe in t.level(5).su2.iter() {
            let q = probe.signed_coords();
            let brute = pts
                .iter()
                .enumerate()
                .map(|(i, p)| (dist_sq(p, &q), i as u32))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
                .unwrap();
            assert_eq!(tree.nearest(&q).unwrap(), brute);

            let mut hits = Vec::new();
            tree.within(&q, 0.3, &mut |i| hits.push(i));
            hits.sort_unstable();
            let expect: Vec<u32> = (0..pts.len() as u32)
                .filter(|&i| dist_sq(&pts[i as usize], &q) <= 0.3)
                .collect();
            assert_eq!(hits, expect);
        }
    }
}
