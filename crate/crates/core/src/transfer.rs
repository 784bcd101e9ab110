//! Monodromy blocks `t_ij^(r)` and the transfer matrix `T^(r) = Σ_i t_ii^(r)`.

use crate::braid::{assemble_at, yang_baxter_form, Arg};
use crate::error::{Error, Result};
use crate::exp_scalar::{Cyc, ExpScalar, LinForm, NumEnv, ParamSymbol, Sign};
use crate::params::ParamSet;
use crate::ring::{q, Ring};
use crate::sparse::SparseMatrix;
use crate::words::{dimension, middle_count};

/// Default cap on `N^r` for exact matrices.
pub const SYMBOLIC_CAP: u128 = 4096;
/// Default cap on `N^r` for floating-point matrices.
pub const NUMERIC_CAP: u128 = 100_000;

/// `N×N` array of `N^r×N^r` blocks, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyBlocks<T> {
    pub n: usize,
    pub r: usize,
    pub blocks: Vec<SparseMatrix<T>>,
}

impl<T: Ring> MonodromyBlocks<T> {
    /// Block `t_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &SparseMatrix<T> {
        &self.blocks[(i - 1) * self.n + (j - 1)]
    }

    /// Largest number of stored entries in any block.
    pub fn max_block_nnz(&self) -> usize {
        self.blocks.iter().map(SparseMatrix::nnz).max().unwrap_or(0)
    }
}

/// Partition of `R = P R̂` into `N×N` blocks: `t_ij = R[(i,·),(j,·)]`.
pub fn fundamental_blocks<T: Ring>(r_matrix: &SparseMatrix<T>, n: usize) -> MonodromyBlocks<T> {
    let blocks = (0..n * n).map(|k| r_matrix.block((k / n) * n, (k % n) * n, n, n)).collect();
    MonodromyBlocks { n, r: 1, blocks }
}

pub fn fundamental_symbolic(params: &ParamSet) -> Result<MonodromyBlocks<ExpScalar>> {
    let n = params.n();
    Ok(fundamental_blocks(&yang_baxter_form(&assemble_at(params, Arg::THETA)?, n), n))
}

/// Fundamental blocks at a numeric `θ`.
pub fn fundamental_numeric(params: &ParamSet, env: &NumEnv) -> Result<MonodromyBlocks<f64>> {
    let n = params.n();
    let r = yang_baxter_form(&assemble_at(params, Arg::THETA)?, n);
    Ok(fundamental_blocks(&r.try_map(|x| x.eval(env).map(|z| z.re))?, n))
}

/// `t^(r+1)_ij = Σ_k t_ik ⊗ t^(r)_kj`.
pub fn coproduct<T: Ring>(t1: &MonodromyBlocks<T>, tr: &MonodromyBlocks<T>, cap: u128) -> Result<MonodromyBlocks<T>> {
    let n = t1.n;
    dimension(n, tr.r + 1, cap)?;
    let job = |idx: usize| {
        let (i, j) = (idx / n + 1, idx % n + 1);
        let mut acc: Option<SparseMatrix<T>> = None;
        for k in 1..=n {
            let a = t1.get(i, k);
            let b = tr.get(k, j);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term = a.kron(b);
            acc = Some(match acc {
                Some(x) => x.add(&term),
                None => term,
            });
        }
        let d = n.pow(tr.r as u32 + 1);
        acc.unwrap_or_else(|| SparseMatrix::zeros(d, d))
    };
    #[cfg(feature = "parallel")]
    let blocks = {
        use rayon::prelude::*;
        (0..n * n).into_par_iter().map(job).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let blocks = (0..n * n).map(job).collect();
    Ok(MonodromyBlocks { n, r: tr.r + 1, blocks })
}

/// All blocks of order `r`.
pub fn monodromy<T: Ring>(t1: &MonodromyBlocks<T>, r: usize, cap: u128) -> Result<MonodromyBlocks<T>> {
    if r == 0 {
        return Err(Error::Invalid("order r must be at least 1".into()));
    }
    dimension(t1.n, r, cap)?;
    let mut t = t1.clone();
    for _ in 1..r {
        t = coproduct(t1, &t, cap)?;
    }
    Ok(t)
}

/// `Σ_i t_ii`.
pub fn transfer_matrix<T: Ring>(blocks: &MonodromyBlocks<T>) -> SparseMatrix<T> {
    let d = blocks.n.pow(blocks.r as u32);
    (1..=blocks.n).fold(SparseMatrix::zeros(d, d), |acc, i| acc.add(blocks.get(i, i)))
}

/// `T^(r)` directly: only the diagonal blocks of the last coproduct are formed.
pub fn transfer_of_order<T: Ring>(t1: &MonodromyBlocks<T>, r: usize, cap: u128) -> Result<SparseMatrix<T>> {
    let n = t1.n;
    dimension(n, r, cap)?;
    if r == 1 {
        return Ok(transfer_matrix(t1));
    }
    let prev = monodromy(t1, r - 1, cap)?;
    let d = n.pow(r as u32);
    let mut acc = SparseMatrix::zeros(d, d);
    for i in 1..=n {
        for k in 1..=n {
            let (a, b) = (t1.get(i, k), prev.get(k, i));
            if !a.is_zero() && !b.is_zero() {
                acc = acc.add(&a.kron(b));
            }
        }
    }
    Ok(acc)
}

pub fn transfer_symbolic(params: &ParamSet, r: usize) -> Result<SparseMatrix<ExpScalar>> {
    transfer_of_order(&fundamental_symbolic(params)?, r, SYMBOLIC_CAP)
}

pub fn transfer_numeric(params: &ParamSet, env: &NumEnv, r: usize) -> Result<SparseMatrix<f64>> {
    transfer_of_order(&fundamental_numeric(params, env)?, r, NUMERIC_CAP)
}

/// `2 Σ_{i<p} e^{r m_ii^(+) θ} + 1`.
pub fn trace_closed_form(params: &ParamSet, r: usize) -> ExpScalar {
    let p = params.p();
    let mut acc = ExpScalar::one();
    for i in 1..p {
        let m = params.exponent(ParamSymbol::new(i as u16, i as u16, Sign::Plus));
        acc = acc.add_ref(&ExpScalar::exp_term(Cyc::from_int(2), m.scale(&q(r as i64, 1))));
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceCheck {
    pub closed_form: ExpScalar,
    pub computed: ExpScalar,
}

impl TraceCheck {
    pub fn pass(&self) -> bool {
        self.closed_form == self.computed
    }
}

pub fn verify_trace(params: &ParamSet, r: usize) -> Result<TraceCheck> {
    let t = transfer_symbolic(params, r)?;
    Ok(TraceCheck { closed_form: trace_closed_form(params, r), computed: t.trace().canonicalize() })
}

/// Entries of `T` joining words with different numbers of middle letters.
pub fn sector_leaks<T: Ring>(t: &SparseMatrix<T>, n: usize, r: usize) -> usize {
    t.triplets().filter(|(i, j, _)| middle_count(*i, n, r) != middle_count(*j, n, r)).count()
}

/// Whether only the diagonal blocks `t_ii` have diagonal entries.
pub fn only_diagonal_blocks_have_diagonals<T: Ring>(blocks: &MonodromyBlocks<T>) -> bool {
    let n = blocks.n;
    (1..=n).all(|i| (1..=n).filter(|&j| j != i).all(|j| blocks.get(i, j).triplets().all(|(a, b, _)| a != b)))
}

/// `[A, B]` max-abs for real matrices.
pub fn commutator_norm(a: &SparseMatrix<f64>, b: &SparseMatrix<f64>) -> f64 {
    a.commutator(b).triplets().map(|(_, _, v)| v.abs()).fold(0.0, f64::max)
}

/// Linear form `r·m_ii^(+)` for use outside this module.
pub fn trace_exponent(params: &ParamSet, i: usize, r: usize) -> LinForm {
    params.exponent(ParamSymbol::new(i as u16, i as u16, Sign::Plus)).scale(&q(r as i64, 1))
}
