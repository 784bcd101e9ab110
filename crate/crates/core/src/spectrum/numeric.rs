//! Floating-point spectra of `T^(r)(θ)`, sector by sector or in one piece.

use super::subspaces::{subspace_decomposition, SubspaceIndex};
use crate::error::{Error, Result};
use crate::exp_scalar::NumEnv;
use crate::params::ParamSet;
use crate::sparse::SparseMatrix;
use crate::transfer::{sector_leaks, transfer_numeric, NUMERIC_CAP};
use faer::Mat;
use num_complex::Complex64;

/// Eigenvalues of one sector at one `θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSpectrum {
    pub k: usize,
    pub eigenvalues: Vec<Complex64>,
}

/// All sectors at one `θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSpectrum {
    pub theta: f64,
    pub blocks: Vec<BlockSpectrum>,
}

impl SampleSpectrum {
    pub fn all(&self) -> Vec<Complex64> {
        self.blocks.iter().flat_map(|b| b.eigenvalues.iter().copied()).collect()
    }
}

pub fn dense_eigenvalues(m: &SparseMatrix<f64>, what: &str) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = Mat::<f64>::zeros(n, n);
    for (i, j, v) in m.triplets() {
        a[(i, j)] = *v;
    }
    a.eigenvalues().map_err(|e| Error::EigensolverFailure(format!("{what}: {e:?}")))
}

fn env_at(params: &ParamSet, theta: f64) -> Result<NumEnv> {
    let vals = params.numeric().ok_or_else(|| Error::MissingParameter("numeric parameter values are required".into()))?;
    Ok(NumEnv::new(theta, vals))
}

fn par_map<I: Send, O: Send>(items: Vec<I>, f: impl Fn(I) -> O + Send + Sync) -> Vec<O> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Block-wise spectrum: the sector decomposition is checked on `T` first,
/// then each `S(r,k)` block is diagonalized on its own.
pub fn full_spectrum(params: &ParamSet, r: usize, thetas: &[f64]) -> Result<Vec<SampleSpectrum>> {
    let n = params.n();
    let sectors = subspace_decomposition(n, r, NUMERIC_CAP)?;
    thetas
        .iter()
        .map(|&theta| {
            let t = transfer_numeric(params, &env_at(params, theta)?, r)?;
            let leaks = sector_leaks(&t, n, r);
            if leaks > 0 {
                return Err(Error::Invalid(format!("T mixes sectors in {leaks} entries")));
            }
            let jobs: Vec<&SubspaceIndex> = sectors.iter().collect();
            let blocks = par_map(jobs, |s| {
                dense_eigenvalues(&t.submatrix(&s.words), &format!("S({r},{})", s.k))
                    .map(|eigenvalues| BlockSpectrum { k: s.k, eigenvalues })
            });
            Ok(SampleSpectrum { theta, blocks: blocks.into_iter().collect::<Result<_>>()? })
        })
        .collect()
}

/// Spectrum of the whole `N^r × N^r` matrix, with no use of the sectors.
pub fn dense_spectrum(params: &ParamSet, r: usize, theta: f64) -> Result<Vec<Complex64>> {
    let t = transfer_numeric(params, &env_at(params, theta)?, r)?;
    dense_eigenvalues(&t, "full matrix")
}

/// Largest distance in an optimal-by-sorting pairing of two multisets,
/// measured relative to `max(1, |z|)`.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut rest: Vec<Complex64> = b.to_vec();
    let mut worst: f64 = 0.0;
    let mut sorted: Vec<Complex64> = a.to_vec();
    sorted.sort_by(|x, y| y.norm().total_cmp(&x.norm()));
    for z in sorted {
        let (idx, d) = rest.iter().enumerate().map(|(i, w)| (i, (z - w).norm())).min_by(|x, y| x.1.total_cmp(&y.1)).expect("same length");
        worst = worst.max(d / z.norm().max(1.0));
        rest.swap_remove(idx);
    }
    worst
}
