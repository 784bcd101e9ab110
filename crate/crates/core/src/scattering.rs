//! Inverse Cayley transform `−iV = (R − λI)⁻¹(R + λI) = I + 2λX`.

use crate::braid::{assemble_at, evaluate, yang_baxter_form, Arg};
use crate::error::{Error, Result};
use crate::exp_scalar::{Cyc, ExpScalar, LinForm, NumEnv, RationalExp, Sign};
use crate::params::ParamSet;
use crate::projectors::Label;
use crate::ring::{q, Ring};
use crate::sparse::SparseMatrix;
use faer::linalg::solvers::DenseSolveCore;
use faer::Mat;
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaCheck {
    pub admissible_yb: bool,
    pub admissible_braid: bool,
    /// Excluded values that `λ` coincides with.
    pub yb_hits: Vec<String>,
    pub braid_hits: Vec<String>,
}

/// Values of `λ` for which `R − λI` is singular (N=3): the printed list
/// `1, e^{m11±θ}, ±e^{½(m12^ε+m21^ε)θ}` followed by `−e^{m11-θ}`, which the
/// spectrum of `R` also contains.
pub fn yb_exclusions(params: &ParamSet) -> Result<Vec<(String, ExpScalar)>> {
    if params.n() != 3 {
        return Err(Error::UnsupportedN(params.n()));
    }
    let mut out = vec![("1".to_string(), ExpScalar::one())];
    for s in Sign::BOTH {
        out.push((format!("exp(m11{}*theta)", s.as_char()), ExpScalar::exp(params.m(1, 1, s))));
    }
    for s in Sign::BOTH {
        let mu = params.m(1, 2, s).add(&params.m(2, 1, s)).scale(&q(1, 2));
        let e = ExpScalar::exp(mu.clone());
        out.push((format!("exp(({mu})*theta)"), e.clone()));
        out.push((format!("-exp(({mu})*theta)"), e.neg_ref()));
    }
    out.push(("-exp(m11-*theta)".to_string(), ExpScalar::exp(params.m(1, 1, Sign::Minus)).neg_ref()));
    Ok(out)
}

/// Values of `λ'` equal to an eigenvalue of `R̂`: 1 and every `e^{m_α θ}`.
pub fn braid_exclusions(params: &ParamSet) -> Vec<(String, ExpScalar)> {
    let mut out = vec![("1".to_string(), ExpScalar::one())];
    for s in crate::params::symbols(params.n()) {
        out.push((format!("exp({}*theta)", s.name()), ExpScalar::exp(params.exponent(s))));
    }
    out
}

/// Structural admissibility: `λ` is compared with each exclusion exactly.
pub fn check_lambda(params: &ParamSet, lambda: &ExpScalar) -> Result<LambdaCheck> {
    let hits = |list: Vec<(String, ExpScalar)>| -> Vec<String> {
        list.into_iter().filter(|(_, v)| v.canonicalize() == lambda.canonicalize()).map(|(name, _)| name).collect()
    };
    let yb_hits = hits(yb_exclusions(params)?);
    let braid_hits = hits(braid_exclusions(params));
    Ok(LambdaCheck { admissible_yb: yb_hits.is_empty(), admissible_braid: braid_hits.is_empty(), yb_hits, braid_hits })
}

fn relative_gap(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Numeric admissibility at a given `θ` for any odd `N`: `λ` against the
/// eigenvalues of `R(θ)`, `λ'` against the diagonal of `M R̂ M`.
pub fn check_lambda_numeric(params: &ParamSet, lambda: Complex64, env: &NumEnv, tol: f64) -> Result<LambdaCheck> {
    let n = params.n();
    let rhat = evaluate(&assemble_at(params, Arg::THETA)?, env)?;
    let r = yang_baxter_form(&rhat, n);
    let yb_hits = dense(&r)
        .eigenvalues()
        .map_err(|e| Error::EigensolverFailure(format!("{e:?}")))?
        .into_iter()
        .filter(|z| relative_gap(*z, lambda) < tol)
        .map(|z| format!("{z}"))
        .collect::<Vec<_>>();
    let mut braid_hits = Vec::new();
    for (name, v) in braid_exclusions(params) {
        if relative_gap(v.eval(env)?, lambda) < tol {
            braid_hits.push(name);
        }
    }
    Ok(LambdaCheck { admissible_yb: yb_hits.is_empty(), admissible_braid: braid_hits.is_empty(), yb_hits, braid_hits })
}

fn frac(num: ExpScalar, den: ExpScalar) -> Result<RationalExp> {
    RationalExp::new(num, den)
}

/// The closed-form `X = (R − λI)⁻¹` for N=3.
pub fn cayley_inverse(params: &ParamSet, lambda: &ExpScalar) -> Result<SparseMatrix<RationalExp>> {
    let adm = check_lambda(params, lambda)?;
    if !adm.admissible_yb {
        return Err(Error::InadmissibleLambda(adm.yb_hits.join(", ")));
    }
    let e = |a, b, s| ExpScalar::exp(params.m(a, b, s));
    let half = ExpScalar::rational(q(1, 2));
    let one = ExpScalar::one();
    let l = lambda.clone();
    let (ep, em) = (e(1, 1, Sign::Plus), e(1, 1, Sign::Minus));
    let a = e(1, 2, Sign::Plus).mul_ref(&e(2, 1, Sign::Plus)).sub_ref(&l.mul_ref(&l));
    let b = e(1, 2, Sign::Minus).mul_ref(&e(2, 1, Sign::Minus)).sub_ref(&l.mul_ref(&l));
    let inv = |d: &ExpScalar| frac(one.clone(), d.clone());
    let h = RationalExp::from_scalar(half.clone());
    let hl = RationalExp::from_scalar(half.mul_ref(&l));
    let (p1, m1) = (inv(&ep.sub_ref(&l))?, inv(&em.sub_ref(&l))?);
    let m1p = inv(&em.add_ref(&l))?;
    let (ia, ib) = (inv(&a)?, inv(&b)?);
    let over = |num: ExpScalar, d: &ExpScalar| frac(num, d.clone());
    let x: [RationalExp; 12] = [
        RationalExp::from_scalar(ExpScalar::zero()),
        h.mul_ref(&p1.add_ref(&m1)),
        hl.mul_ref(&ia.add_ref(&ib)),
        h.mul_ref(&p1.sub_ref(&m1p)),
        hl.mul_ref(&ia.sub_ref(&ib)),
        inv(&one.sub_ref(&l))?,
        h.mul_ref(&over(e(2, 1, Sign::Plus), &a)?.add_ref(&over(e(2, 1, Sign::Minus), &b)?)),
        h.mul_ref(&over(e(2, 1, Sign::Plus), &a)?.sub_ref(&over(e(2, 1, Sign::Minus), &b)?)),
        h.mul_ref(&p1.sub_ref(&m1)),
        h.mul_ref(&p1.add_ref(&m1p)),
        h.mul_ref(&over(e(1, 2, Sign::Plus), &a)?.add_ref(&over(e(1, 2, Sign::Minus), &b)?)),
        h.mul_ref(&over(e(1, 2, Sign::Plus), &a)?.sub_ref(&over(e(1, 2, Sign::Minus), &b)?)),
    ];
    const LAYOUT: [[usize; 9]; 9] = [
        [1, 0, 0, 0, 0, 0, 0, 0, 8],
        [0, 2, 0, 6, 0, 7, 0, 4, 0],
        [0, 0, 3, 0, 0, 0, 9, 0, 0],
        [0, 10, 0, 2, 0, 4, 0, 11, 0],
        [0, 0, 0, 0, 5, 0, 0, 0, 0],
        [0, 11, 0, 4, 0, 2, 0, 10, 0],
        [0, 0, 9, 0, 0, 0, 3, 0, 0],
        [0, 4, 0, 7, 0, 6, 0, 2, 0],
        [8, 0, 0, 0, 0, 0, 0, 0, 1],
    ];
    let mut t = Vec::new();
    for (i, row) in LAYOUT.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            if k != 0 {
                t.push((i, j, x[k].clone()));
            }
        }
    }
    Ok(SparseMatrix::from_triplets(9, 9, t))
}

/// `R(θ) − λI` over `RationalExp`.
pub fn shifted_r(params: &ParamSet, lambda: &ExpScalar) -> Result<SparseMatrix<RationalExp>> {
    let n = params.n();
    let r = yang_baxter_form(&assemble_at(params, Arg::THETA)?, n);
    let d = n * n;
    Ok(r.sub(&SparseMatrix::diagonal(vec![lambda.clone(); d])).map(|x| RationalExp::from_scalar(x.clone())))
}

/// `(R − λI)X = I` and `X(R − λI) = I`, exactly.
pub fn verify_cayley_inverse(params: &ParamSet, lambda: &ExpScalar) -> Result<bool> {
    let x = cayley_inverse(params, lambda)?;
    let a = shifted_r(params, lambda)?;
    let id = SparseMatrix::identity(9);
    Ok(a.mul(&x) == id && x.mul(&a) == id)
}

/// `−iV = I + 2λX`.
pub fn potential(params: &ParamSet, lambda: &ExpScalar) -> Result<SparseMatrix<RationalExp>> {
    let x = cayley_inverse(params, lambda)?;
    let two_l = RationalExp::from_scalar(lambda.scale(&Cyc::from_int(2)));
    Ok(SparseMatrix::identity(9).add(&x.map(|v| v.mul_ref(&two_l))))
}

/// `(−iV − I)(R − λI) = 2λI`, exactly.
pub fn verify_involution(params: &ParamSet, lambda: &ExpScalar) -> Result<bool> {
    let v = potential(params, lambda)?;
    let lhs = v.sub(&SparseMatrix::identity(9)).mul(&shifted_r(params, lambda)?);
    let two_l = RationalExp::from_scalar(lambda.scale(&Cyc::from_int(2)));
    Ok(lhs == SparseMatrix::diagonal(vec![two_l; 9]))
}

fn dense(m: &SparseMatrix<Complex64>) -> Mat<Complex64> {
    let mut a = Mat::<Complex64>::zeros(m.nrows(), m.ncols());
    for (i, j, v) in m.triplets() {
        a[(i, j)] = *v;
    }
    a
}

fn to_rows(m: &Mat<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

/// Numeric `−iV = I + 2λ(R − λI)⁻¹` by dense inversion, any odd `N`.
/// `SingularMatrix` when `λ` lies within `tol` (relative) of the spectrum of `R`.
pub fn potential_general(params: &ParamSet, lambda: Complex64, env: &NumEnv, tol: f64) -> Result<Vec<Vec<Complex64>>> {
    let adm = check_lambda_numeric(params, lambda, env, tol)?;
    if !adm.admissible_yb {
        return Err(Error::SingularMatrix(format!("lambda = {lambda} is an eigenvalue of R ({})", adm.yb_hits.join(", "))));
    }
    let n = params.n();
    let r = yang_baxter_form(&evaluate(&assemble_at(params, Arg::THETA)?, env)?, n);
    let d = n * n;
    let shifted = dense(&r.sub(&SparseMatrix::diagonal(vec![lambda; d])));
    let inv = shifted.partial_piv_lu().inverse();
    let out = Mat::<Complex64>::from_fn(
        d,
        d,
        |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) } + 2.0 * lambda * inv[(i, j)],
    );
    Ok(to_rows(&out))
}

/// `(R − λI)⁻¹(R + λI)` evaluated directly; oracle for [`potential_general`].
pub fn cayley_direct(params: &ParamSet, lambda: Complex64, env: &NumEnv) -> Result<Vec<Vec<Complex64>>> {
    let n = params.n();
    let r = yang_baxter_form(&evaluate(&assemble_at(params, Arg::THETA)?, env)?, n);
    let d = n * n;
    let minus = dense(&r.sub(&SparseMatrix::diagonal(vec![lambda; d])));
    let plus = dense(&r.add(&SparseMatrix::diagonal(vec![lambda; d])));
    Ok(to_rows(&(minus.partial_piv_lu().inverse() * plus)))
}

/// Numeric values of an exact matrix; `λ` is supplied through `env.lambda`.
pub fn evaluate_rational(m: &SparseMatrix<RationalExp>, env: &NumEnv) -> Result<Vec<Vec<Complex64>>> {
    let mut out = vec![vec![Complex64::new(0.0, 0.0); m.ncols()]; m.nrows()];
    for (i, j, v) in m.triplets() {
        out[i][j] = v.eval(env)?;
    }
    Ok(out)
}

pub fn max_gap(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `e^{m θ}` for the exponent attached to a projector label, handy for
/// building inadmissible values.
pub fn label_value(params: &ParamSet, l: Label) -> ExpScalar {
    ExpScalar::exp(l.symbol(params.n()).map(|s| params.exponent(s)).unwrap_or_else(LinForm::zero))
}
