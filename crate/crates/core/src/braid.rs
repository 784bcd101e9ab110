//! The braid matrix `R̂(θ) = P_pp + Σ e^{m_α θ} P_α` and its checks.

use crate::error::{Error, Result};
use crate::exp_scalar::{Cyc, ExpScalar, Exponent, LinForm, NumEnv, Symbol};
use crate::params::ParamSet;
use crate::projectors::{build_nested, diagonalizer, Label, ProjectorBasis};
use crate::ring::{q, Ring};
use crate::sparse::SparseMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use std::collections::HashMap;

/// Spectral argument `aθ + bθ'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arg {
    pub theta: i64,
    pub theta2: i64,
}

impl Arg {
    pub const THETA: Arg = Arg { theta: 1, theta2: 0 };
    pub const THETA2: Arg = Arg { theta: 0, theta2: 1 };
    pub const DIFF: Arg = Arg { theta: 1, theta2: -1 };

    pub fn exponent(&self, mu: &LinForm) -> Exponent {
        Exponent { theta: mu.scale(&q(self.theta, 1)), theta2: mu.scale(&q(self.theta2, 1)) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BraidMatrix {
    pub params: ParamSet,
    pub matrix: SparseMatrix<ExpScalar>,
}

/// `Σ_α e^{μ_α·arg} P_α` for exponents supplied per label (`None` = 0).
pub fn assemble_with(basis: &ProjectorBasis, arg: Arg, mu: impl Fn(Label) -> Option<LinForm>) -> SparseMatrix<ExpScalar> {
    let dim = basis.n() * basis.n();
    let mut t = Vec::new();
    for (l, p) in basis.projectors() {
        let e = arg.exponent(&mu(*l).unwrap_or_default());
        for (i, j, v) in p.triplets() {
            t.push((i, j, ExpScalar::term(Cyc::from_rational(v.clone()), e.clone())));
        }
    }
    SparseMatrix::from_triplets(dim, dim, t)
}

fn label_exponent(params: &ParamSet, l: Label) -> Option<LinForm> {
    l.symbol(params.n()).map(|s| params.exponent(s))
}

pub fn assemble_braid(params: &ParamSet) -> Result<BraidMatrix> {
    Ok(BraidMatrix { params: params.clone(), matrix: assemble_at(params, Arg::THETA)? })
}

pub fn assemble_at(params: &ParamSet, arg: Arg) -> Result<SparseMatrix<ExpScalar>> {
    let basis = build_nested(params.n()).map_err(|_| Error::InvalidParamSet(format!("N={} must be odd and at least 3", params.n())))?;
    Ok(assemble_with(&basis, arg, |l| label_exponent(params, l)))
}

/// Braid matrix in which `P_{i\bar j}(ε)` carries `m_ij^(ε) + x_k` with a
/// fresh auxiliary exponent per label, so the two identified exponents differ.
pub fn assemble_broken(params: &ParamSet, arg: Arg) -> Result<SparseMatrix<ExpScalar>> {
    let basis = build_nested(params.n())?;
    let aux: HashMap<Label, u32> = basis.labels().filter(|l| matches!(l, Label::Ijb(..))).enumerate().map(|(k, l)| (l, k as u32)).collect();
    Ok(assemble_with(&basis, arg, |l| {
        let m = label_exponent(params, l)?;
        Some(match aux.get(&l) {
            Some(&k) => m.add(&LinForm::symbol(Symbol::Aux(k))),
            None => m,
        })
    }))
}

/// `P = Σ (ij)⊗(ji)`.
pub fn permutation<T: Ring>(n: usize) -> SparseMatrix<T> {
    let dim = n * n;
    SparseMatrix::from_triplets(dim, dim, (0..n).flat_map(|a| (0..n).map(move |b| (a * n + b, b * n + a, T::one()))))
}

/// `R = P R̂`.
pub fn yang_baxter_form<T: Ring>(rhat: &SparseMatrix<T>, n: usize) -> SparseMatrix<T> {
    permutation::<T>(n).mul(rhat)
}

/// `R̂₁₂(θ−θ')R̂₂₃(θ)R̂₁₂(θ') − R̂₂₃(θ')R̂₁₂(θ)R̂₂₃(θ−θ')` for matrices supplied per argument.
pub fn braid_residual<T: Ring>(
    n: usize,
    r_diff: &SparseMatrix<T>,
    r_theta: &SparseMatrix<T>,
    r_theta2: &SparseMatrix<T>,
) -> SparseMatrix<T> {
    let id = SparseMatrix::<T>::identity(n);
    let l = |m: &SparseMatrix<T>| m.kron(&id);
    let r = |m: &SparseMatrix<T>| id.kron(m);
    let lhs = l(r_diff).mul(&r(r_theta)).mul(&l(r_theta2));
    let rhs = r(r_theta2).mul(&l(r_theta)).mul(&r(r_diff));
    lhs.sub(&rhs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicResidual {
    /// Number of nonzero entries of the residual.
    pub nonzero_entries: usize,
    /// Largest number of exponential terms in any residual entry.
    pub max_terms: usize,
}

impl SymbolicResidual {
    pub fn is_zero(&self) -> bool {
        self.nonzero_entries == 0
    }

    fn of(m: &SparseMatrix<ExpScalar>) -> Self {
        SymbolicResidual { nonzero_entries: m.nnz(), max_terms: m.triplets().map(|(_, _, v)| v.len()).max().unwrap_or(0) }
    }
}

/// Exact residual of the braid equation in the two symbols `θ, θ'`.
pub fn check_braid_symbolic(params: &ParamSet) -> Result<SymbolicResidual> {
    let n = params.n();
    let res = braid_residual(n, &assemble_at(params, Arg::DIFF)?, &assemble_at(params, Arg::THETA)?, &assemble_at(params, Arg::THETA2)?);
    Ok(SymbolicResidual::of(&res))
}

/// Same as [`check_braid_symbolic`] for the constraint-breaking matrix.
pub fn check_braid_symbolic_broken(params: &ParamSet) -> Result<SymbolicResidual> {
    let n = params.n();
    let res = braid_residual(
        n,
        &assemble_broken(params, Arg::DIFF)?,
        &assemble_broken(params, Arg::THETA)?,
        &assemble_broken(params, Arg::THETA2)?,
    );
    Ok(SymbolicResidual::of(&res))
}

/// Evaluates a matrix over `ExpScalar`.
pub fn evaluate(m: &SparseMatrix<ExpScalar>, env: &NumEnv) -> Result<SparseMatrix<Complex64>> {
    m.try_map(|x| x.eval(env))
}

pub fn max_abs(m: &SparseMatrix<Complex64>) -> f64 {
    m.triplets().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
}

/// Numeric braid residual: `R̂` is evaluated at `θ−θ'`, `θ`, `θ'` first and
/// the products are formed in floating point.
pub fn check_braid_numeric(params: &ParamSet, theta: f64, theta2: f64, env: &NumEnv) -> Result<f64> {
    check_braid_numeric_with(params.n(), theta, theta2, env, |arg| assemble_at(params, arg))
}

pub fn check_braid_numeric_broken(params: &ParamSet, theta: f64, theta2: f64, env: &NumEnv) -> Result<f64> {
    check_braid_numeric_with(params.n(), theta, theta2, env, |arg| assemble_broken(params, arg))
}

fn check_braid_numeric_with(
    n: usize,
    theta: f64,
    theta2: f64,
    env: &NumEnv,
    build: impl Fn(Arg) -> Result<SparseMatrix<ExpScalar>>,
) -> Result<f64> {
    let at = |t: f64| -> Result<SparseMatrix<Complex64>> {
        let mut e = env.clone();
        e.theta = t;
        e.theta2 = 0.0;
        evaluate(&build(Arg::THETA)?, &e)
    };
    Ok(max_abs(&braid_residual(n, &at(theta - theta2)?, &at(theta)?, &at(theta2)?)))
}

/// `R̂(0) = I` exactly.
pub fn is_regular(b: &BraidMatrix) -> bool {
    let n = b.params.n();
    b.matrix.map(|x| x.at_zero()) == SparseMatrix::identity(n * n)
}

/// `R̂(θ)R̂(θ') = R̂(θ+θ')` exactly.
pub fn check_baxterization(params: &ParamSet) -> Result<bool> {
    let lhs = assemble_at(params, Arg::THETA)?.mul(&assemble_at(params, Arg::THETA2)?);
    Ok(lhs == assemble_at(params, Arg { theta: 1, theta2: 1 })?)
}

/// `M R̂(θ) M` as a matrix over `ExpScalar` with cyclotomic coefficients.
pub fn diagonal_form(params: &ParamSet) -> Result<SparseMatrix<ExpScalar>> {
    let m = diagonalizer(params.n())?.matrix.map(|c| ExpScalar::cyc(c.clone()));
    Ok(m.mul(&assemble_at(params, Arg::THETA)?).mul(&m).map(|x| x.canonicalize()))
}

/// The expected diagonal of `M R̂ M`: `e^{m_α θ}` for the projector that
/// lives at each position of the diagonal frame.
pub fn expected_diagonal(params: &ParamSet) -> Result<Vec<ExpScalar>> {
    let n = params.n();
    let basis = build_nested(n)?;
    let labels = diagonalizer(n)?.diagonal_labels(&basis)?;
    Ok(labels.into_iter().map(|l| ExpScalar::exp(label_exponent(params, l).unwrap_or_default())).collect())
}

/// Constant `m` for every symbol.
pub fn uniform_params(n: usize, m: BigRational) -> Result<ParamSet> {
    ParamSet::with_values(n, crate::params::symbols(n).into_iter().map(|s| (s, m.clone())))
}
