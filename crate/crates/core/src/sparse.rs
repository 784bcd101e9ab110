//! Row-sorted sparse matrices over any [`Ring`].

use crate::ring::Ring;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Ring> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| T::one()).collect())
    }

    pub fn diagonal(d: Vec<T>) -> Self {
        let n = d.len();
        let rows = d.into_iter().enumerate().map(|(i, v)| if v.is_zero() { vec![] } else { vec![(i, v)] }).collect();
        SparseMatrix { nrows: n, ncols: n, rows }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); nrows];
        for (i, j, v) in entries {
            assert!(i < nrows && j < ncols, "entry ({i},{j}) outside {nrows}x{ncols}");
            acc[i].entry(j).or_insert_with(T::zero).add_assign_ref(&v);
        }
        let rows = acc.into_iter().map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<(usize, T)>>) -> Self {
        let nrows = rows.len();
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|(j, _)| *j);
                r.retain(|(_, v)| !v.is_zero());
                r
            })
            .collect();
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<(usize, T)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix::from_rows(self.ncols, self.rows.iter().map(|r| r.iter().map(|(j, v)| (*j, f(v))).collect()).collect())
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<SparseMatrix<U>, E> {
        let mut rows = Vec::with_capacity(self.nrows);
        for r in &self.rows {
            let mut out = Vec::with_capacity(r.len());
            for (j, v) in r {
                out.push((*j, f(v)?));
            }
            rows.push(out);
        }
        Ok(SparseMatrix::from_rows(self.ncols, rows))
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|v| v.mul_ref(k))
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg_ref())
    }

    fn merge(&self, other: &Self, f: impl Fn(Option<&T>, Option<&T>) -> T) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let (col, v) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                        i += 1;
                        (a[i - 1].0, f(Some(&a[i - 1].1), None))
                    } else if i == a.len() || b[j].0 < a[i].0 {
                        j += 1;
                        (b[j - 1].0, f(None, Some(&b[j - 1].1)))
                    } else {
                        i += 1;
                        j += 1;
                        (a[i - 1].0, f(Some(&a[i - 1].1), Some(&b[j - 1].1)))
                    };
                    if !v.is_zero() {
                        out.push((col, v));
                    }
                }
                out
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, |a, b| match (a, b) {
            (Some(x), Some(y)) => x.add_ref(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => T::zero(),
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, |a, b| match (a, b) {
            (Some(x), Some(y)) => x.sub_ref(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.neg_ref(),
            (None, None) => T::zero(),
        })
    }

    fn mul_row(&self, i: usize, other: &Self) -> Vec<(usize, T)> {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (k, a) in &self.rows[i] {
            for (j, b) in &other.rows[*k] {
                let p = a.mul_ref(b);
                match acc.get_mut(j) {
                    Some(slot) => slot.add_assign_ref(&p),
                    None => {
                        acc.insert(*j, p);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in product");
        #[cfg(feature = "parallel")]
        let rows = {
            use rayon::prelude::*;
            (0..self.nrows).into_par_iter().map(|i| self.mul_row(i, other)).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rows = (0..self.nrows).map(|i| self.mul_row(i, other)).collect();
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.ncols, v.len());
        self.rows
            .iter()
            .map(|r| {
                let mut acc = T::zero();
                for (j, a) in r {
                    if !v[*j].is_zero() {
                        acc.add_assign_ref(&a.mul_ref(&v[*j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (other.nrows, other.ncols);
        let mut rows = Vec::with_capacity(self.nrows * p);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut out = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        let v = a.mul_ref(b);
                        if !v.is_zero() {
                            out.push((ja * q + jb, v));
                        }
                    }
                }
                rows.push(out);
            }
        }
        SparseMatrix { nrows: self.nrows * p, ncols: self.ncols * q, rows }
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                rows[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    /// Rows `r0..r0+nr`, columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let rows = self.rows[r0..r0 + nr]
            .iter()
            .map(|r| r.iter().filter(|(j, _)| *j >= c0 && *j < c0 + nc).map(|(j, v)| (j - c0, v.clone())).collect())
            .collect();
        SparseMatrix { nrows: nr, ncols: nc, rows }
    }

    /// Principal submatrix on `idx` (in the given order).
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let rows = idx
            .iter()
            .map(|&i| {
                let mut r: Vec<(usize, T)> =
                    self.rows[i].iter().filter(|(j, _)| pos[*j] != usize::MAX).map(|(j, v)| (pos[*j], v.clone())).collect();
                r.sort_by_key(|(j, _)| *j);
                r
            })
            .collect();
        SparseMatrix { nrows: idx.len(), ncols: idx.len(), rows }
    }

    /// `Q·A·Q^T` where `Q|i⟩ = |perm[i]⟩`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut rows = vec![Vec::new(); self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            let mut out: Vec<(usize, T)> = r.iter().map(|(j, v)| (perm[*j], v.clone())).collect();
            out.sort_by_key(|(j, _)| *j);
            rows[perm[i]] = out;
        }
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.ncols]; self.nrows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.nrows.min(self.ncols) {
            acc.add_assign_ref(&self.get(i, i));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;
    use num_rational::BigRational;

    fn m(entries: &[(usize, usize, i64)], n: usize) -> SparseMatrix<BigRational> {
        SparseMatrix::from_triplets(n, n, entries.iter().map(|&(i, j, v)| (i, j, q(v, 1))))
    }

    #[test]
    fn product_and_identity() {
        let a = m(&[(0, 1, 2), (1, 0, 3), (1, 1, 1)], 2);
        assert_eq!(a.mul(&SparseMatrix::identity(2)), a);
        let sq = a.mul(&a);
        assert_eq!(sq.get(0, 0), q(6, 1));
        assert_eq!(sq.get(0, 1), q(2, 1));
        assert_eq!(sq.get(1, 1), q(7, 1));
    }

    #[test]
    fn kron_matches_definition() {
        let a = m(&[(0, 1, 1), (1, 0, 2)], 2);
        let b = m(&[(0, 0, 3), (1, 1, 5)], 2);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 2), q(3, 1));
        assert_eq!(k.get(3, 1), q(10, 1));
        assert_eq!(k.nnz(), 4);
    }

    #[test]
    fn cancellation_leaves_no_explicit_zeros() {
        let a = m(&[(0, 0, 1)], 2);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.sub(&a).nnz(), 0);
    }

    #[test]
    fn permutation_conjugation() {
        let a = m(&[(0, 1, 7)], 3);
        let p = a.permute(&[2, 0, 1]);
        assert_eq!(p.get(2, 0), q(7, 1));
        assert_eq!(p.nnz(), 1);
    }
}
