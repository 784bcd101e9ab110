//! Sectors `S(r,k)`: words with exactly `k` middle letters.

use crate::error::Result;
use crate::words::{dimension, middle_count};
use num_integer::binomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceIndex {
    pub r: usize,
    pub k: usize,
    pub words: Vec<usize>,
}

impl SubspaceIndex {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

/// `(2(p−1))^{r−k} · C(r, k)`.
pub fn sector_dimension(n: usize, r: usize, k: usize) -> usize {
    (n - 1).pow((r - k) as u32) * binomial(r, k)
}

/// Sectors in order `k = r, r−1, …, 0`.
pub fn subspace_decomposition(n: usize, r: usize, cap: u128) -> Result<Vec<SubspaceIndex>> {
    let d = dimension(n, r, cap)?;
    let mut out: Vec<SubspaceIndex> = (0..=r).rev().map(|k| SubspaceIndex { r, k, words: Vec::new() }).collect();
    for w in 0..d {
        let k = middle_count(w, n, r);
        out[r - k].words.push(w);
    }
    Ok(out)
}

/// `U_a = (a p)`, `D_a = (ā p)`, `A = (p p)` as `(row, col)` pairs, 1-based:
/// `U_a|p⟩ = |a⟩`, `D_a|p⟩ = |ā⟩`, `A|p⟩ = |p⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderOps {
    pub n: usize,
    pub up: Vec<(usize, usize)>,
    pub down: Vec<(usize, usize)>,
    pub a: (usize, usize),
}

impl LadderOps {
    pub fn new(n: usize) -> Self {
        let p = n.div_ceil(2);
        LadderOps { n, up: (1..p).map(|a| (a, p)).collect(), down: (1..p).map(|a| (n + 1 - a, p)).collect(), a: (p, p) }
    }

    /// Applies a single-entry operator `(row, col)` to basis letter `l`.
    pub fn apply(op: (usize, usize), l: usize) -> Option<usize> {
        (op.1 == l).then_some(op.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let dims = |n, r| subspace_decomposition(n, r, 1 << 20).unwrap().iter().map(|s| s.dim()).collect::<Vec<_>>();
        assert_eq!(dims(3, 3), vec![1, 6, 12, 8]);
        assert_eq!(dims(3, 4), vec![1, 8, 24, 32, 16]);
        assert_eq!(dims(5, 2), vec![1, 8, 16]);
        for (n, r) in [(3, 5), (5, 3), (7, 2)] {
            let s = subspace_decomposition(n, r, 1 << 20).unwrap();
            assert_eq!(s.iter().map(|x| x.dim()).sum::<usize>(), n.pow(r as u32));
            for x in &s {
                assert_eq!(x.dim(), sector_dimension(n, r, x.k));
            }
        }
    }

    #[test]
    fn ladder_action() {
        let l = LadderOps::new(3);
        assert_eq!(LadderOps::apply(l.up[0], 2), Some(1));
        assert_eq!(LadderOps::apply(l.down[0], 2), Some(3));
        assert_eq!(LadderOps::apply(l.a, 2), Some(2));
        assert_eq!(LadderOps::apply(l.up[0], 1), None);
    }
}
