//! Chain Hamiltonians from derivatives of `R̂` at `θ = 0`.

use crate::braid::permutation;
use crate::error::{Error, Result};
use crate::exp_scalar::{ParamSymbol, Sign};
use crate::params::ParamSet;
use crate::projectors::build_nested;
use crate::ring::{q, rational_to_f64};
use crate::sparse::SparseMatrix;
use crate::words::rotate_right;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// `d^l R̂/dθ^l` at 0 for `l = 0..=L`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeStack {
    pub n: usize,
    pub derivatives: Vec<SparseMatrix<BigRational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservedCharge {
    pub order: usize,
    pub r: usize,
    pub matrix: SparseMatrix<BigRational>,
}

fn value(params: &ParamSet, s: ParamSymbol) -> Result<BigRational> {
    params.value(&s).cloned().ok_or_else(|| Error::MissingParameter(s.name()))
}

/// `Σ_α m_α^l P_α`, the `l`-th derivative at 0.
pub fn rhat_derivative(params: &ParamSet, l: usize) -> Result<SparseMatrix<BigRational>> {
    let basis = build_nested(params.n())?;
    let d = params.n() * params.n();
    let mut acc = SparseMatrix::zeros(d, d);
    for (label, p) in basis.projectors() {
        let m = match label.symbol(params.n()) {
            Some(s) => value(params, s)?,
            None => BigRational::zero(),
        };
        let c: BigRational = if l == 0 { BigRational::one() } else { Pow::pow(&m, l as u32) };
        if !Zero::is_zero(&c) {
            acc = acc.add(&p.scale(&c));
        }
    }
    Ok(acc)
}

pub fn rhat_derivatives(params: &ParamSet, max_order: usize) -> Result<DerivativeStack> {
    let derivatives = (0..=max_order).map(|l| rhat_derivative(params, l)).collect::<Result<_>>()?;
    Ok(DerivativeStack { n: params.n(), derivatives })
}

/// The `r` nearest-neighbour copies of a two-site operator `op` on a ring
/// of `r` sites: bonds `(k, k+1)` for `k < r`, then the wrap `(r, 1)`.
pub fn ring_bonds(op: &SparseMatrix<BigRational>, n: usize, r: usize) -> Vec<SparseMatrix<BigRational>> {
    assert!(r >= 2, "a ring needs at least two sites");
    let mut out: Vec<SparseMatrix<BigRational>> = (0..r - 1)
        .map(|k| {
            let left = SparseMatrix::identity(n.pow(k as u32));
            let right = SparseMatrix::identity(n.pow((r - k - 2) as u32));
            left.kron(op).kron(&right)
        })
        .collect();
    // sites (r, 1): move the last site to the front, act, move back
    let perm = rotate_right(n, r);
    let on_front = op.kron(&SparseMatrix::identity(n.pow((r - 2) as u32)));
    let inverse: Vec<usize> = {
        let mut inv = vec![0; perm.len()];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        inv
    };
    out.push(on_front.permute(&inverse));
    out
}

/// Two-site density `P Ṙ̂(0) P` (and `P R̈̂(0) P` for the second order).
fn density(params: &ParamSet, l: usize) -> Result<SparseMatrix<BigRational>> {
    let p = permutation::<BigRational>(params.n());
    Ok(p.mul(&rhat_derivative(params, l)?).mul(&p))
}

/// `H_1 = Σ_k h_{k,k+1}` with periodic wrap; equals `T(0)⁻¹ T'(0)`.
pub fn chain_hamiltonian(params: &ParamSet, r: usize) -> Result<ConservedCharge> {
    if r < 2 {
        return Err(Error::Invalid("chain Hamiltonians need r >= 2".into()));
    }
    let bonds = ring_bonds(&density(params, 1)?, params.n(), r);
    let d = params.n().pow(r as u32);
    let matrix = bonds.iter().fold(SparseMatrix::zeros(d, d), |a, b| a.add(b));
    Ok(ConservedCharge { order: 1, r, matrix })
}

/// `H_2 = Σ_{j≠k} h_j h_k + Σ_k ḧ_k`; equals `T(0)⁻¹ T''(0)`.
pub fn higher_charge(params: &ParamSet, r: usize) -> Result<ConservedCharge> {
    if r < 2 {
        return Err(Error::Invalid("chain Hamiltonians need r >= 2".into()));
    }
    let n = params.n();
    let h1 = ring_bonds(&density(params, 1)?, n, r);
    let h2 = ring_bonds(&density(params, 2)?, n, r);
    let d = n.pow(r as u32);
    let mut acc = SparseMatrix::zeros(d, d);
    for (j, a) in h1.iter().enumerate() {
        for (k, b) in h1.iter().enumerate() {
            if j != k {
                acc = acc.add(&a.mul(b));
            }
        }
    }
    for b in &h2 {
        acc = acc.add(b);
    }
    Ok(ConservedCharge { order: 2, r, matrix: acc })
}

pub fn max_abs(m: &SparseMatrix<BigRational>) -> f64 {
    m.triplets().map(|(_, _, v)| rational_to_f64(&v.abs())).fold(0.0, f64::max)
}

pub fn to_f64(m: &SparseMatrix<BigRational>) -> SparseMatrix<f64> {
    m.map(rational_to_f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReshetikhinResidual {
    pub exact_zero: bool,
    pub max_abs: f64,
}

/// `[H₁₂ + H₂₃, [H₁₂, H₂₃]]` for a two-site `H`.
pub fn double_commutator(h: &SparseMatrix<BigRational>, n: usize) -> ReshetikhinResidual {
    let id = SparseMatrix::identity(n);
    let h12 = h.kron(&id);
    let h23 = id.kron(h);
    let res = h12.add(&h23).commutator(&h12.commutator(&h23));
    ReshetikhinResidual { exact_zero: res.is_zero(), max_abs: max_abs(&res) }
}

/// Double commutator with `H = Ṙ̂(0)`.
pub fn reshetikhin_check(params: &ParamSet) -> Result<ReshetikhinResidual> {
    Ok(double_commutator(&rhat_derivative(params, 1)?, params.n()))
}

/// `Ṙ̂(0)` with one anti-diagonal entry shifted by 1.
pub fn perturbed_generator(params: &ParamSet) -> Result<SparseMatrix<BigRational>> {
    let h = rhat_derivative(params, 1)?;
    let d = h.nrows();
    Ok(h.add(&SparseMatrix::from_triplets(d, d, [(0, d - 1, q(1, 1))])))
}

/// Same values with the `m_pi` and `m_ip` families exchanged.
pub fn swap_pi_ip(params: &ParamSet) -> Result<ParamSet> {
    let p = params.p() as u16;
    let mut out = params.clone();
    for i in 1..p {
        for s in Sign::BOTH {
            let a = ParamSymbol::new(p, i, s);
            let b = ParamSymbol::new(i, p, s);
            match (params.value(&a), params.value(&b)) {
                (Some(x), Some(y)) => {
                    out.set(a, y.clone())?;
                    out.set(b, x.clone())?;
                }
                _ => return Err(Error::MissingParameter(format!("{} / {}", a.name(), b.name()))),
            }
        }
    }
    Ok(out)
}

/// The 9×9 two-site Hamiltonian written out from the half sums
/// `x± = ½(m11+ ± m11-)`, `y± = ½(m12+ ± m12-)`, `z± = ½(m21+ ± m21-)`:
/// diagonal `(2x+, y+ + z+, 2x+, y+ + z+, 0, y+ + z+, 2x+, y+ + z+, 2x+)` and
/// the same pattern with minus signs on the anti-diagonal.
pub fn explicit_two_site(params: &ParamSet) -> Result<SparseMatrix<BigRational>> {
    if params.n() != 3 {
        return Err(Error::UnsupportedN(params.n()));
    }
    let get = |a, b, s| value(params, ParamSymbol::new(a, b, s));
    let half = q(1, 2);
    let pm = |a, b| -> Result<(BigRational, BigRational)> {
        let (p, m) = (get(a, b, Sign::Plus)?, get(a, b, Sign::Minus)?);
        Ok((&half * (&p + &m), &half * (&p - &m)))
    };
    let (xp, xm) = pm(1, 1)?;
    let (yp, ym) = pm(1, 2)?;
    let (zp, zm) = pm(2, 1)?;
    let two = q(2, 1);
    let diag = [&two * &xp, &yp + &zp, &two * &xp, &yp + &zp, BigRational::zero(), &yp + &zp, &two * &xp, &yp + &zp, &two * &xp];
    let anti = [&two * &xm, &ym + &zm, &two * &xm, &ym + &zm, BigRational::zero(), &ym + &zm, &two * &xm, &ym + &zm, &two * &xm];
    let mut t = Vec::new();
    for i in 0..9 {
        t.push((i, i, diag[i].clone()));
        if i != 4 {
            t.push((i, 8 - i, anti[i].clone()));
        }
    }
    Ok(SparseMatrix::from_triplets(9, 9, t))
}
