//! Canonical form of the `R̂tt` algebra: `K = M t̂ M`, `D = M R̂ M` and
//! `D(θ−θ′) K(θ) K(θ′) = K(θ′) K(θ) D(θ−θ′)`.

use crate::braid::{assemble_at, Arg};
use crate::braid::{evaluate, yang_baxter_form};
use crate::error::{Error, Result};
use crate::exp_scalar::{Cyc, ExpScalar, NumEnv};
use crate::params::ParamSet;
use crate::projectors::diagonalizer;
use crate::ring::Ring;
use crate::sparse::SparseMatrix;
use crate::transfer::{fundamental_blocks, monodromy, MonodromyBlocks, NUMERIC_CAP, SYMBOLIC_CAP};
use num_complex::Complex64;
use serde_json::{json, Value};

/// `N²×N²` array of quantum-space operators, row-major over auxiliary
/// pairs `(a,c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KMatrix<T> {
    pub n: usize,
    pub r: usize,
    pub entries: Vec<SparseMatrix<T>>,
}

impl<T: Ring> KMatrix<T> {
    fn dim(&self) -> usize {
        self.n * self.n
    }

    /// Entry at auxiliary positions `(I, J)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &SparseMatrix<T> {
        &self.entries[i * self.dim() + j]
    }

    /// `K_ab`: rows `(a,c)`, columns `(b,d)`, `c,d = 1..N`; 1-based `a,b`.
    pub fn block(&self, a: usize, b: usize) -> Vec<Vec<SparseMatrix<T>>> {
        let n = self.n;
        (0..n).map(|c| (0..n).map(|d| self.get((a - 1) * n + c, (b - 1) * n + d).clone()).collect()).collect()
    }

    /// The whole operator as one `N²·N^r` square matrix.
    pub fn to_matrix(&self) -> SparseMatrix<T> {
        let dim = self.dim();
        let q = self.entries[0].nrows();
        let mut t = Vec::new();
        for (idx, e) in self.entries.iter().enumerate() {
            let (i, j) = (idx / dim, idx % dim);
            t.extend(e.triplets().map(|(x, y, v)| (i * q + x, j * q + y, v.clone())));
        }
        SparseMatrix::from_triplets(dim * q, dim * q, t)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> KMatrix<U> {
        KMatrix { n: self.n, r: self.r, entries: self.entries.iter().map(|m| m.map(&f)).collect() }
    }
}

/// `t̂ = t₁P`: entry `((a,b),(e,f))` is `δ_be t_af`.
pub fn t_hat<T: Ring>(t: &MonodromyBlocks<T>) -> KMatrix<T> {
    let n = t.n;
    let q = t.blocks[0].nrows();
    let mut entries = Vec::with_capacity(n.pow(4));
    for row in 0..n * n {
        let (a, b) = (row / n, row % n);
        for col in 0..n * n {
            let (e, f) = (col / n, col % n);
            entries.push(if b == e { t.get(a + 1, f + 1).clone() } else { SparseMatrix::zeros(q, q) });
        }
    }
    KMatrix { n, r: t.r, entries }
}

/// `M X M` for an operator-valued `X`; `lift` embeds the entries of `M`.
fn conjugate<T: Ring>(x: &KMatrix<T>, m: &SparseMatrix<Cyc>, lift: &impl Fn(&Cyc) -> T) -> KMatrix<T> {
    let dim = x.dim();
    let q = x.entries[0].nrows();
    let mut half = vec![SparseMatrix::zeros(q, q); dim * dim];
    for i in 0..dim {
        for (k, c) in m.row(i) {
            let c = lift(c);
            for j in 0..dim {
                let e = x.get(*k, j);
                if !e.is_zero() {
                    half[i * dim + j] = half[i * dim + j].add(&e.scale(&c));
                }
            }
        }
    }
    let mut out = vec![SparseMatrix::zeros(q, q); dim * dim];
    for i in 0..dim {
        for l in 0..dim {
            let e = &half[i * dim + l];
            if e.is_zero() {
                continue;
            }
            for (j, c) in m.row(l) {
                out[i * dim + j] = out[i * dim + j].add(&e.scale(&lift(c)));
            }
        }
    }
    KMatrix { n: x.n, r: x.r, entries: out }
}

/// `K = M t̂ M` from monodromy blocks, any odd `N`.
pub fn build_k<T: Ring>(t: &MonodromyBlocks<T>, lift: impl Fn(&Cyc) -> T) -> Result<KMatrix<T>> {
    let m = diagonalizer(t.n)?;
    Ok(conjugate(&t_hat(t), &m.matrix, &lift))
}

pub fn build_k_symbolic(t: &MonodromyBlocks<ExpScalar>) -> Result<KMatrix<ExpScalar>> {
    let k = build_k(t, |c| ExpScalar::cyc(c.clone()))?;
    Ok(k.map(|x| x.canonicalize()))
}

/// Monodromy blocks of order `r` at the given argument, exact.
pub fn monodromy_symbolic(params: &ParamSet, arg: Arg, r: usize) -> Result<MonodromyBlocks<ExpScalar>> {
    let n = params.n();
    let t1 = fundamental_blocks(&yang_baxter_form(&assemble_at(params, arg)?, n), n);
    monodromy(&t1, r, SYMBOLIC_CAP)
}

/// Monodromy blocks of order `r` at a numeric `θ` (complex entries).
pub fn monodromy_numeric(params: &ParamSet, env: &NumEnv, r: usize) -> Result<MonodromyBlocks<Complex64>> {
    let n = params.n();
    let rm = yang_baxter_form(&evaluate(&assemble_at(params, Arg::THETA)?, env)?, n);
    monodromy(&fundamental_blocks(&rm, n), r, NUMERIC_CAP)
}

/// One term of a closed-form block: coefficient times `t_ij`.
type Term = (i64, bool, usize, usize);
type Block = (usize, usize, Vec<(usize, usize, Vec<Term>)>);

/// The nine `2K_ab` blocks for N=3, as `(a, b, [(c, d, terms)])` with
/// `3` standing for the barred index. A term `(k, root2, i, j)` is
/// `k·t_ij`, times `√2` when `root2` is set.
fn closed_form_table() -> Vec<Block> {
    let s = |i, j| (1, false, i, j);
    let m = |i, j| (-1, false, i, j);
    let r = |i, j| (1, true, i, j);
    let rm = |i, j| (-1, true, i, j);
    let plus11 = vec![s(1, 1), s(3, 3)];
    let plus12 = vec![s(1, 2), s(3, 2)];
    let plus13 = vec![s(1, 3), s(3, 1)];
    let neg = |v: &Vec<Term>| v.iter().map(|&(k, q, i, j)| (-k, q, i, j)).collect::<Vec<_>>();
    let minus13 = vec![s(1, 3), m(3, 1)];
    let minus12 = vec![s(1, 2), m(3, 2)];
    let minus11 = vec![s(1, 1), m(3, 3)];
    let t2p = vec![s(2, 1), s(2, 3)];
    let t2m = vec![s(2, 1), m(2, 3)];
    let two22 = vec![(2, false, 2, 2)];
    vec![
        (
            1,
            1,
            vec![
                (1, 1, plus11.clone()),
                (1, 2, plus12.clone()),
                (1, 3, plus13.clone()),
                (3, 1, plus13.clone()),
                (3, 2, plus12.clone()),
                (3, 3, plus11.clone()),
            ],
        ),
        (
            3,
            3,
            vec![
                (1, 1, neg(&plus11)),
                (1, 2, neg(&plus12)),
                (1, 3, neg(&plus13)),
                (3, 1, plus13.clone()),
                (3, 2, plus12.clone()),
                (3, 3, plus11.clone()),
            ],
        ),
        (
            1,
            3,
            vec![
                (1, 1, minus13.clone()),
                (1, 2, minus12.clone()),
                (1, 3, minus11.clone()),
                (3, 1, neg(&minus11)),
                (3, 2, neg(&minus12)),
                (3, 3, neg(&minus13)),
            ],
        ),
        (
            3,
            1,
            vec![
                (1, 1, minus13.clone()),
                (1, 2, minus12.clone()),
                (1, 3, minus11.clone()),
                (3, 1, minus11),
                (3, 2, minus12),
                (3, 3, minus13),
            ],
        ),
        (
            1,
            2,
            vec![
                (2, 1, vec![s(1, 1), s(1, 3), s(3, 1), s(3, 3)]),
                (2, 2, vec![r(1, 2), r(3, 2)]),
                (2, 3, vec![s(1, 1), m(1, 3), s(3, 1), m(3, 3)]),
            ],
        ),
        (
            3,
            2,
            vec![
                (2, 1, vec![s(1, 1), s(1, 3), m(3, 1), m(3, 3)]),
                (2, 2, vec![r(1, 2), rm(3, 2)]),
                (2, 3, vec![s(1, 1), m(1, 3), m(3, 1), s(3, 3)]),
            ],
        ),
        (2, 1, vec![(1, 1, t2p.clone()), (1, 2, two22.clone()), (1, 3, t2p.clone()), (3, 1, t2m.clone()), (3, 3, neg(&t2m))]),
        (2, 3, vec![(1, 1, neg(&t2m)), (1, 3, t2m.clone()), (3, 1, t2p.clone()), (3, 2, vec![(2, false, 2, 2)]), (3, 3, t2p.clone())]),
        (2, 2, vec![(2, 1, vec![r(2, 1), r(2, 3)]), (2, 2, two22), (2, 3, vec![r(2, 1), rm(2, 3)])]),
    ]
}

/// `K` assembled block by block from the N=3 closed forms.
pub fn build_k_closed_form(t: &MonodromyBlocks<ExpScalar>) -> Result<KMatrix<ExpScalar>> {
    if t.n != 3 {
        return Err(Error::UnsupportedN(t.n));
    }
    let q = t.blocks[0].nrows();
    let half = Cyc::from_rational(crate::ring::q(1, 2));
    let mut entries = vec![SparseMatrix::zeros(q, q); 81];
    for (a, b, cells) in closed_form_table() {
        for (c, d, terms) in cells {
            let mut acc = SparseMatrix::zeros(q, q);
            for (k, root2, i, j) in terms {
                let mut coef = half.mul_ref(&Cyc::from_int(k));
                if root2 {
                    coef = coef.mul_ref(&Cyc::sqrt2());
                }
                acc = acc.add(&t.get(i, j).scale(&ExpScalar::cyc(coef)));
            }
            entries[((a - 1) * 3 + c - 1) * 9 + (b - 1) * 3 + d - 1] = acc.map(|x| x.canonicalize());
        }
    }
    Ok(KMatrix { n: 3, r: t.r, entries })
}

/// Blocks `K_ab` where the closed form and the conjugation disagree.
pub fn closed_form_mismatches(t: &MonodromyBlocks<ExpScalar>) -> Result<Vec<(usize, usize)>> {
    let generic = build_k_symbolic(t)?;
    let closed = build_k_closed_form(t)?;
    let mut out = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            if generic.block(a, b) != closed.block(a, b) {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// The diagonal of `D = M R̂ M`.
#[derive(Clone, Debug, PartialEq)]
pub struct DMatrix {
    pub n: usize,
    pub diagonal: Vec<ExpScalar>,
}

impl DMatrix {
    /// Diagonal `N×N` blocks `d_aa`.
    pub fn blocks(&self) -> Vec<Vec<ExpScalar>> {
        self.diagonal.chunks(self.n).map(<[ExpScalar]>::to_vec).collect()
    }
}

pub fn build_d(params: &ParamSet, arg: Arg) -> Result<DMatrix> {
    let n = params.n();
    let m = diagonalizer(n)?.matrix.map(|c| ExpScalar::cyc(c.clone()));
    let d = m.mul(&assemble_at(params, arg)?).mul(&m).map(|x| x.canonicalize());
    if d.triplets().any(|(i, j, v)| i != j && !v.is_zero()) {
        return Err(Error::Invalid("M R̂ M is not diagonal".into()));
    }
    Ok(DMatrix { n, diagonal: (0..n * n).map(|i| d.get(i, i)).collect() })
}

/// `D K K′ − K′ K D` entry by entry.
pub fn relation_residual<T: Ring>(d: &[T], k: &KMatrix<T>, k2: &KMatrix<T>) -> Vec<SparseMatrix<T>> {
    let dim = k.dim();
    let job = |idx: usize| {
        let (a, b) = (idx / dim, idx % dim);
        let q = k.entries[0].nrows();
        let mut lhs = SparseMatrix::zeros(q, q);
        let mut rhs = SparseMatrix::zeros(q, q);
        for c in 0..dim {
            let (x, y) = (k.get(a, c), k2.get(c, b));
            if !x.is_zero() && !y.is_zero() {
                lhs = lhs.add(&x.mul(y));
            }
            let (x, y) = (k2.get(a, c), k.get(c, b));
            if !x.is_zero() && !y.is_zero() {
                rhs = rhs.add(&x.mul(y));
            }
        }
        lhs.scale(&d[a]).sub(&rhs.scale(&d[b]))
    };
    par_map((0..dim * dim).collect(), job)
}

fn par_map<O: Send>(items: Vec<usize>, f: impl Fn(usize) -> O + Send + Sync) -> Vec<O> {
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

/// One scalar relation, at auxiliary positions `a = (a₁,a₂)`, `b = (b₁,b₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub holds: bool,
    pub nonzero_entries: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RttReport {
    pub n: usize,
    pub r: usize,
    pub relations: Vec<Relation>,
    /// `None` when no closed form exists (N ≠ 3).
    pub closed_form_mismatches: Option<Vec<(usize, usize)>>,
    pub numeric_residual: Option<f64>,
}

impl RttReport {
    pub fn pass(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
            && self.closed_form_mismatches.as_ref().is_none_or(Vec::is_empty)
            && self.numeric_residual.is_none_or(|x| x < 1e-10)
    }

    pub fn failures(&self) -> usize {
        self.relations.iter().filter(|r| !r.holds).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "r": self.r,
            "relations": self.relations.iter().map(|r| json!({
                "a": [r.a.0, r.a.1],
                "b": [r.b.0, r.b.1],
                "holds": r.holds,
                "nonzero_entries": r.nonzero_entries,
            })).collect::<Vec<_>>(),
            "closed_form_mismatches": self.closed_form_mismatches.as_ref().map(|v| v.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>()),
            "numeric_residual": self.numeric_residual,
            "pass": self.pass(),
        })
    }
}

/// Exact check of the canonical relation with `θ`, `θ′` symbolic.
pub fn check_canonical_rtt(params: &ParamSet, r: usize) -> Result<RttReport> {
    let n = params.n();
    let t = monodromy_symbolic(params, Arg::THETA, r)?;
    let t2 = monodromy_symbolic(params, Arg::THETA2, r)?;
    let k = build_k_symbolic(&t)?;
    let k2 = build_k_symbolic(&t2)?;
    let d = build_d(params, Arg::DIFF)?;
    let res = relation_residual(&d.diagonal, &k, &k2);
    let relations = res
        .iter()
        .enumerate()
        .map(|(idx, m)| {
            let nonzero_entries = m.triplets().filter(|(_, _, v)| !v.canonicalize().is_zero()).count();
            let (a, b) = (idx / (n * n), idx % (n * n));
            Relation { a: (a / n + 1, a % n + 1), b: (b / n + 1, b % n + 1), holds: nonzero_entries == 0, nonzero_entries }
        })
        .collect();
    let closed_form_mismatches = if n == 3 && r == 1 { Some(closed_form_mismatches(&t)?) } else { None };
    Ok(RttReport { n, r, relations, closed_form_mismatches, numeric_residual: None })
}

/// Largest entry of `D″KK′ − K′KD″` at numeric `θ`, `θ′`.
pub fn check_canonical_rtt_numeric(params: &ParamSet, theta: f64, theta2: f64, r: usize) -> Result<f64> {
    let vals = params.numeric().ok_or_else(|| Error::MissingParameter("numeric parameter values are required".into()))?;
    let env = |t: f64| NumEnv::new(t, vals.clone());
    let lift = |c: &Cyc| c.to_complex();
    let k = build_k(&monodromy_numeric(params, &env(theta), r)?, lift)?;
    let k2 = build_k(&monodromy_numeric(params, &env(theta2), r)?, lift)?;
    let d: Vec<Complex64> = build_d(params, Arg::THETA)?.diagonal.iter().map(|x| x.eval(&env(theta - theta2))).collect::<Result<_>>()?;
    let worst =
        relation_residual(&d, &k, &k2).iter().flat_map(|m| m.triplets().map(|(_, _, v)| v.norm()).collect::<Vec<_>>()).fold(0.0, f64::max);
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp_scalar::Sign;

    #[test]
    fn closed_forms_match_conjugation() {
        let params = ParamSet::symbolic(3).unwrap();
        let t = monodromy_symbolic(&params, Arg::THETA, 1).unwrap();
        assert_eq!(closed_form_mismatches(&t).unwrap(), Vec::<(usize, usize)>::new());
    }

    #[test]
    fn d_blocks() {
        let params = ParamSet::symbolic(3).unwrap();
        let d = build_d(&params, Arg::THETA).unwrap().blocks();
        let e = |a, b, s| ExpScalar::exp(params.m(a, b, s));
        assert_eq!(d[0], vec![e(1, 1, Sign::Plus), e(1, 2, Sign::Plus), e(1, 1, Sign::Plus)]);
        assert_eq!(d[1], vec![e(2, 1, Sign::Plus), ExpScalar::one(), e(2, 1, Sign::Minus)]);
        assert_eq!(d[2], vec![e(1, 1, Sign::Minus), e(1, 2, Sign::Minus), e(1, 1, Sign::Minus)]);
    }

    #[test]
    fn theta_zero_gives_conjugated_permutation() {
        let params = crate::braid::uniform_params(3, crate::ring::q(0, 1)).unwrap();
        let t = monodromy_symbolic(&params, Arg::THETA, 1).unwrap();
        let hat = t_hat(&t).to_matrix();
        for i in 0..27 {
            assert_eq!(hat.row(i).len(), 1);
            assert_eq!(hat.row(i)[0].1, ExpScalar::one());
        }
        let m = diagonalizer(3).unwrap().matrix.map(|c| ExpScalar::cyc(c.clone())).kron(&SparseMatrix::identity(3));
        let want = m.mul(&hat).mul(&m).map(|x| x.canonicalize());
        assert_eq!(build_k_symbolic(&t).unwrap().to_matrix(), want);
    }

    #[test]
    fn canonical_relation_exact() {
        let params = ParamSet::symbolic(3).unwrap();
        let rep = check_canonical_rtt(&params, 1).unwrap();
        assert_eq!(rep.relations.len(), 81);
        assert!(rep.pass(), "{} failures", rep.failures());
    }

    #[test]
    fn broken_matrix_violates_relation() {
        let params = ParamSet::symbolic(3).unwrap();
        let blocks = |arg| {
            let r = yang_baxter_form(&crate::braid::assemble_broken(&params, arg).unwrap(), 3);
            build_k_symbolic(&fundamental_blocks(&r, 3)).unwrap()
        };
        let m = diagonalizer(3).unwrap().matrix.map(|c| ExpScalar::cyc(c.clone()));
        let d = m.mul(&crate::braid::assemble_broken(&params, Arg::DIFF).unwrap()).mul(&m).map(|x| x.canonicalize());
        let diag: Vec<ExpScalar> = (0..9).map(|i| d.get(i, i)).collect();
        let res = relation_residual(&diag, &blocks(Arg::THETA), &blocks(Arg::THETA2));
        assert!(res.iter().any(|m| m.triplets().any(|(_, _, v)| !v.canonicalize().is_zero())));
    }

    #[test]
    fn numeric_relation() {
        let p5 = ParamSet::random(5, 3, 1.0).unwrap();
        assert!(check_canonical_rtt_numeric(&p5, 0.9, 0.4, 1).unwrap() < 1e-10);
        let p3 = ParamSet::random(3, 4, 0.5).unwrap();
        assert!(check_canonical_rtt_numeric(&p3, 0.9, 0.4, 2).unwrap() < 1e-10);
    }
}
