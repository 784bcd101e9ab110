//! Nested projector bases on `C^N ⊗ C^N`, their (u,v) deformation and the
//! diagonalizer `M`.

use crate::error::{Error, Result};
use crate::exp_scalar::{Cyc, ParamSymbol, Sign};
use crate::params::check_odd;
use crate::ring::{q, rational_to_f64, Ring};
use crate::sparse::SparseMatrix;
use crate::words::bar;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// Projector label. Indices are 1-based and `i, j < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Pp,
    Pi(usize, Sign),
    Ip(usize, Sign),
    Ij(usize, usize, Sign),
    /// `P_{i\bar j}`
    Ijb(usize, usize, Sign),
}

impl Label {
    /// All `N²` labels in basis order.
    pub fn all(n: usize) -> Vec<Label> {
        let p = n.div_ceil(2);
        let mut out = vec![Label::Pp];
        for i in 1..p {
            for s in Sign::BOTH {
                out.push(Label::Pi(i, s));
            }
        }
        for i in 1..p {
            for s in Sign::BOTH {
                out.push(Label::Ip(i, s));
            }
        }
        for i in 1..p {
            for j in 1..p {
                for s in Sign::BOTH {
                    out.push(Label::Ij(i, j, s));
                }
            }
        }
        for i in 1..p {
            for j in 1..p {
                for s in Sign::BOTH {
                    out.push(Label::Ijb(i, j, s));
                }
            }
        }
        out
    }

    pub fn sign(&self) -> Option<Sign> {
        match *self {
            Label::Pp => None,
            Label::Pi(_, s) | Label::Ip(_, s) | Label::Ij(_, _, s) | Label::Ijb(_, _, s) => Some(s),
        }
    }

    /// The exponent multiplying this projector in the braid matrix;
    /// `None` for `P_pp`, whose coefficient is normalized to 1.
    pub fn symbol(&self, n: usize) -> Option<ParamSymbol> {
        let p = n.div_ceil(2) as u16;
        Some(match *self {
            Label::Pp => return None,
            Label::Pi(i, s) => ParamSymbol::new(p, i as u16, s),
            Label::Ip(i, s) => ParamSymbol::new(i as u16, p, s),
            Label::Ij(i, j, s) | Label::Ijb(i, j, s) => ParamSymbol::new(i as u16, j as u16, s),
        })
    }

    /// The index pair `(a, b)` in `1..=N` that keys the (u,v) deformation.
    pub fn pair(&self, n: usize) -> (usize, usize) {
        let p = n.div_ceil(2);
        match *self {
            Label::Pp => (p, p),
            Label::Pi(i, _) => (p, i),
            Label::Ip(i, _) => (i, p),
            Label::Ij(i, j, _) => (i, j),
            Label::Ijb(i, j, _) => (i, bar(j, n)),
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        let s = s.trim();
        if s == "pp" {
            return Some(Label::Pp);
        }
        let sign = match s.chars().last()? {
            '+' => Sign::Plus,
            '-' => Sign::Minus,
            _ => return None,
        };
        let body = &s[..s.len() - 1];
        let parts: Vec<&str> = if body.contains(',') { body.split(',').collect() } else { split_compact(body)? };
        if parts.len() != 2 {
            return None;
        }
        let idx = |t: &str| -> Option<(usize, bool)> {
            if let Some(x) = t.strip_suffix('\'') {
                Some((x.parse().ok()?, true))
            } else {
                Some((t.parse().ok()?, false))
            }
        };
        match (parts[0], parts[1]) {
            ("p", b) => idx(b).filter(|x| !x.1).map(|x| Label::Pi(x.0, sign)),
            (a, "p") => idx(a).filter(|x| !x.1).map(|x| Label::Ip(x.0, sign)),
            (a, b) => {
                let (a, abar) = idx(a)?;
                let (b, bbar) = idx(b)?;
                match (abar, bbar) {
                    (false, false) => Some(Label::Ij(a, b, sign)),
                    (false, true) => Some(Label::Ijb(a, b, sign)),
                    _ => None,
                }
            }
        }
    }
}

fn split_compact(body: &str) -> Option<Vec<&str>> {
    // "12" / "p1" / "1p" / "12'"
    let first = body.chars().next()?.len_utf8();
    Some(vec![&body[..first], &body[first..]])
}

impl fmt::Display for Label {
    /// `pp`, `p1+`, `1p-`, `12+`, `12'+`; indices ≥ 10 are comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join =
            |a: String, b: String| if a.len() == 1 && b.trim_end_matches('\'').len() == 1 { format!("{a}{b}") } else { format!("{a},{b}") };
        match *self {
            Label::Pp => write!(f, "pp"),
            Label::Pi(i, s) => write!(f, "{}{}", join("p".into(), i.to_string()), s.as_char()),
            Label::Ip(i, s) => write!(f, "{}{}", join(i.to_string(), "p".into()), s.as_char()),
            Label::Ij(i, j, s) => write!(f, "{}{}", join(i.to_string(), j.to_string()), s.as_char()),
            Label::Ijb(i, j, s) => write!(f, "{}{}", join(i.to_string(), format!("{j}'")), s.as_char()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    Nested,
    /// Deformation parameters keyed by [`Label::pair`]; absent pairs use 1.
    Generalized {
        u: BTreeMap<(usize, usize), BigRational>,
        v: BTreeMap<(usize, usize), BigRational>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorBasis {
    n: usize,
    mode: Mode,
    projectors: Vec<(Label, SparseMatrix<BigRational>)>,
}

/// Elementary `(ab)`, 1-based.
fn e(a: usize, b: usize) -> (usize, usize) {
    (a - 1, b - 1)
}

/// `(a1 b1) ⊗ (a2 b2)` as a position in the `N²` space.
fn kron_pos(n: usize, x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
    (x.0 * n + y.0, x.1 * n + y.1)
}

/// The three pieces `A, B, C` with `P(ε) = ½(A + B + ε(C + Cᵀ))`.
fn pieces(n: usize, l: Label) -> [(usize, usize); 3] {
    let p = n.div_ceil(2);
    let b = |i| bar(i, n);
    match l {
        Label::Pp => {
            let x = kron_pos(n, e(p, p), e(p, p));
            [x, x, x]
        }
        Label::Pi(i, _) => [kron_pos(n, e(p, p), e(i, i)), kron_pos(n, e(p, p), e(b(i), b(i))), kron_pos(n, e(p, p), e(i, b(i)))],
        Label::Ip(i, _) => [kron_pos(n, e(i, i), e(p, p)), kron_pos(n, e(b(i), b(i)), e(p, p)), kron_pos(n, e(i, b(i)), e(p, p))],
        Label::Ij(i, j, _) => {
            [kron_pos(n, e(i, i), e(j, j)), kron_pos(n, e(b(i), b(i)), e(b(j), b(j))), kron_pos(n, e(i, b(i)), e(j, b(j)))]
        }
        Label::Ijb(i, j, _) => {
            [kron_pos(n, e(i, i), e(b(j), b(j))), kron_pos(n, e(b(i), b(i)), e(j, j)), kron_pos(n, e(i, b(i)), e(b(j), j))]
        }
    }
}

fn assemble(n: usize, l: Label, u: &BigRational, v: &BigRational) -> SparseMatrix<BigRational> {
    let dim = n * n;
    let [a, b, c] = pieces(n, l);
    let Some(sign) = l.sign() else {
        return SparseMatrix::from_triplets(dim, dim, [(a.0, a.1, <BigRational as One>::one())]);
    };
    let norm = (u + u.recip()).recip();
    let (ua, ub) = match sign {
        Sign::Plus => (u.clone(), u.recip()),
        Sign::Minus => (u.recip(), u.clone()),
    };
    let s = q(sign.as_i64(), 1);
    SparseMatrix::from_triplets(
        dim,
        dim,
        [(a.0, a.1, ua * &norm), (b.0, b.1, ub * &norm), (c.0, c.1, &s * v * &norm), (c.1, c.0, &s * v.recip() * &norm)],
    )
}

/// The `N²` nested projectors for odd `N ≥ 3`.
pub fn build_nested(n: usize) -> Result<ProjectorBasis> {
    check_odd(n)?;
    let one = <BigRational as One>::one();
    let projectors = Label::all(n).into_iter().map(|l| (l, assemble(n, l, &one, &one))).collect();
    Ok(ProjectorBasis { n, mode: Mode::Nested, projectors })
}

/// The (u,v)-deformed family, for odd `N ≥ 3` or `N = 2`. Pairs absent from
/// the maps take the value 1.
pub fn build_generalized(
    n: usize,
    u: &BTreeMap<(usize, usize), BigRational>,
    v: &BTreeMap<(usize, usize), BigRational>,
) -> Result<ProjectorBasis> {
    let labels = if n == 2 {
        vec![Label::Ij(1, 1, Sign::Plus), Label::Ij(1, 1, Sign::Minus), Label::Ijb(1, 1, Sign::Plus), Label::Ijb(1, 1, Sign::Minus)]
    } else {
        check_odd(n)?;
        Label::all(n)
    };
    let pairs: Vec<(usize, usize)> = labels.iter().filter(|l| **l != Label::Pp).map(|l| l.pair(n)).collect();
    for (name, map) in [("u", u), ("v", v)] {
        for (key, val) in map {
            if !pairs.contains(key) {
                return Err(Error::Invalid(format!("{name}{},{} is not a projector pair for N={n}", key.0, key.1)));
            }
            if Zero::is_zero(val) {
                return Err(Error::ZeroParameter(format!("{name}{},{}", key.0, key.1)));
            }
        }
    }
    for (key, val) in u {
        if Zero::is_zero(&(val + val.recip())) {
            return Err(Error::SingularParameter(format!("u{},{}", key.0, key.1)));
        }
    }
    let one = <BigRational as One>::one();
    let projectors = labels
        .into_iter()
        .map(|l| {
            let key = l.pair(n);
            (l, assemble(n, l, u.get(&key).unwrap_or(&one), v.get(&key).unwrap_or(&one)))
        })
        .collect();
    Ok(ProjectorBasis { n, mode: Mode::Generalized { u: u.clone(), v: v.clone() }, projectors })
}

impl ProjectorBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn projectors(&self) -> &[(Label, SparseMatrix<BigRational>)] {
        &self.projectors
    }

    pub fn get(&self, l: Label) -> Option<&SparseMatrix<BigRational>> {
        self.projectors.iter().find(|(k, _)| *k == l).map(|(_, m)| m)
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.projectors.iter().map(|(l, _)| *l)
    }

    /// Replaces one projector, e.g. to build a deliberately broken basis.
    pub fn replace(&mut self, l: Label, m: SparseMatrix<BigRational>) -> Result<()> {
        let slot = self.projectors.iter_mut().find(|(k, _)| *k == l).ok_or_else(|| Error::Invalid(format!("no projector {l}")))?;
        slot.1 = m;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let projectors: Vec<Value> = self
            .projectors
            .iter()
            .map(|(l, m)| {
                let entries: Vec<Value> = m.triplets().map(|(i, j, v)| json!([i, j, v.to_string()])).collect();
                json!({"label": l.to_string(), "entries": entries})
            })
            .collect();
        let mode = match &self.mode {
            Mode::Nested => json!("nested"),
            Mode::Generalized { u, v } => {
                let render = |m: &BTreeMap<(usize, usize), BigRational>| -> Value {
                    m.iter().map(|((a, b), x)| (format!("{a},{b}"), Value::String(x.to_string()))).collect::<serde_json::Map<_, _>>().into()
                };
                json!({"generalized": {"u": render(u), "v": render(v)}})
            }
        };
        json!({"N": self.n, "mode": mode, "projectors": projectors})
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisReport {
    pub count: usize,
    pub count_ok: bool,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complete: bool,
    /// Largest absolute entry of any `P_a P_b − δ_ab P_a` or of `Σ P − I`.
    pub worst_deviation: f64,
    /// Rank of `I − Σ P`.
    pub deficit_rank: usize,
    pub violations: Vec<String>,
}

impl BasisReport {
    pub fn pass(&self) -> bool {
        self.count_ok && self.idempotent && self.orthogonal && self.complete
    }
}

fn max_abs(m: &SparseMatrix<BigRational>) -> f64 {
    m.triplets().map(|(_, _, v)| rational_to_f64(&v.abs())).fold(0.0, f64::max)
}

/// Exact rank by Gaussian elimination.
pub fn rank(m: &SparseMatrix<BigRational>) -> usize {
    let mut a = m.to_dense();
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut r = 0;
    for c in 0..nc {
        let Some(piv) = (r..nr).find(|&i| !Zero::is_zero(&a[i][c])) else { continue };
        a.swap(r, piv);
        let inv = a[r][c].recip();
        for i in r + 1..nr {
            if Zero::is_zero(&a[i][c]) {
                continue;
            }
            let f = &a[i][c] * &inv;
            let (top, bottom) = a.split_at_mut(i);
            for (x, p) in bottom[0][c..nc].iter_mut().zip(&top[r][c..nc]) {
                *x -= &f * p;
            }
        }
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}

/// Exact check of `P_a P_b = δ_ab P_a` and `Σ P_a = I`.
pub fn verify_basis(basis: &ProjectorBasis) -> BasisReport {
    let dim = basis.n * basis.n;
    let mut rep = BasisReport {
        count: basis.projectors.len(),
        count_ok: basis.projectors.len() == dim,
        idempotent: true,
        orthogonal: true,
        complete: true,
        worst_deviation: 0.0,
        deficit_rank: 0,
        violations: Vec::new(),
    };
    for (a, (la, pa)) in basis.projectors.iter().enumerate() {
        for (b, (lb, pb)) in basis.projectors.iter().enumerate() {
            let prod = pa.mul(pb);
            let diff = if a == b { prod.sub(pa) } else { prod };
            if !diff.is_zero() {
                rep.worst_deviation = rep.worst_deviation.max(max_abs(&diff));
                if a == b {
                    rep.idempotent = false;
                    rep.violations.push(format!("P[{la}] is not idempotent"));
                } else {
                    rep.orthogonal = false;
                    rep.violations.push(format!("P[{la}] P[{lb}] != 0"));
                }
            }
        }
    }
    let mut sum = SparseMatrix::zeros(dim, dim);
    for (_, p) in &basis.projectors {
        sum = sum.add(p);
    }
    let deficit = SparseMatrix::identity(dim).sub(&sum);
    if !deficit.is_zero() {
        rep.complete = false;
        rep.worst_deviation = rep.worst_deviation.max(max_abs(&deficit));
        rep.deficit_rank = rank(&deficit);
        rep.violations.push(format!("sum of projectors differs from I (rank {} deficit)", rep.deficit_rank));
    }
    rep
}

/// `M = M⁻¹` with entries `0, ±1/√2, 1`, exact in Q(ζ_8).
#[derive(Clone, Debug, PartialEq)]
pub struct Diagonalizer {
    pub n: usize,
    pub matrix: SparseMatrix<Cyc>,
}

pub fn diagonalizer(n: usize) -> Result<Diagonalizer> {
    let p = check_odd(n)?;
    let dim = n * n;
    let h = Cyc::sqrt2().inverse().expect("sqrt2 is nonzero");
    let mut t = Vec::new();
    for i in 0..dim {
        let (a, b) = (i / n + 1, i % n + 1);
        if a == p && b == p {
            t.push((i, i, Cyc::one()));
            continue;
        }
        let j = (bar(a, n) - 1) * n + bar(b, n) - 1;
        t.push((i, j, h.clone()));
        t.push((i, i, if i < j { h.clone() } else { h.neg_ref() }));
    }
    Ok(Diagonalizer { n, matrix: SparseMatrix::from_triplets(dim, dim, t) })
}

impl Diagonalizer {
    /// `M A M` (= `M A M⁻¹`).
    pub fn conjugate(&self, a: &SparseMatrix<Cyc>) -> SparseMatrix<Cyc> {
        self.matrix.mul(a).mul(&self.matrix)
    }

    /// For each position of the diagonal frame, the projector that is 1 there
    /// after conjugation.
    pub fn diagonal_labels(&self, basis: &ProjectorBasis) -> Result<Vec<Label>> {
        let dim = self.n * self.n;
        let mut out = vec![None; dim];
        for (l, p) in basis.projectors() {
            let d = self.conjugate(&p.map(|x| Cyc::from_rational(x.clone())));
            for (i, j, v) in d.triplets() {
                if i != j || *v != Cyc::one() {
                    return Err(Error::Invalid(format!("M P[{l}] M is not a diagonal 0/1 matrix")));
                }
                out[i] = Some(*l);
            }
        }
        out.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::Invalid("diagonal frame is incomplete".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_names_round_trip() {
        for n in [3, 5] {
            for l in Label::all(n) {
                assert_eq!(Label::parse(&l.to_string()), Some(l), "{l}");
            }
        }
        assert_eq!(Label::Ijb(1, 2, Sign::Minus).to_string(), "12'-");
        assert_eq!(Label::Pi(1, Sign::Plus).to_string(), "p1+");
    }

    #[test]
    fn counts_and_ordering() {
        for n in [3, 5, 7] {
            let labels = Label::all(n);
            assert_eq!(labels.len(), n * n);
            assert!(labels.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn p_pp_is_a_single_entry() {
        let b = build_nested(3).unwrap();
        let pp = b.get(Label::Pp).unwrap();
        assert_eq!(pp.triplets().map(|(i, j, v)| (i, j, v.clone())).collect::<Vec<_>>(), vec![(4, 4, q(1, 1))]);
    }

    #[test]
    fn nested_is_generalized_at_one() {
        let g = build_generalized(3, &BTreeMap::new(), &BTreeMap::new()).unwrap();
        assert_eq!(g.projectors(), build_nested(3).unwrap().projectors());
        assert_eq!(build_nested(4), Err(Error::EvenN(4)));
    }

    #[test]
    fn four_by_four_family() {
        let u = BTreeMap::from([((1, 1), q(2, 1))]);
        let v = BTreeMap::from([((1, 1), q(3, 1))]);
        let b = build_generalized(2, &u, &v).unwrap();
        let norm = q(2, 5);
        let plus = b.get(Label::Ij(1, 1, Sign::Plus)).unwrap();
        assert_eq!(plus.get(0, 0), q(2, 1) * &norm);
        assert_eq!(plus.get(0, 3), q(3, 1) * &norm);
        assert_eq!(plus.get(3, 0), q(1, 3) * &norm);
        assert_eq!(plus.get(3, 3), q(1, 2) * &norm);
        let minus = b.get(Label::Ij(1, 1, Sign::Minus)).unwrap();
        assert_eq!(minus.get(0, 3), q(-3, 1) * &norm);
        assert!(verify_basis(&b).pass());
    }

    #[test]
    fn bad_deformations() {
        let zero = BTreeMap::from([((1, 2), q(0, 1))]);
        assert!(matches!(build_generalized(3, &zero, &BTreeMap::new()), Err(Error::ZeroParameter(_))));
        assert!(matches!(build_generalized(3, &BTreeMap::new(), &zero), Err(Error::ZeroParameter(_))));
    }

    #[test]
    fn zeroed_projector_shows_up_as_deficit() {
        let mut b = build_nested(3).unwrap();
        b.replace(Label::Pp, SparseMatrix::zeros(9, 9)).unwrap();
        let rep = verify_basis(&b);
        assert!(!rep.complete && rep.idempotent && rep.orthogonal);
        assert_eq!(rep.deficit_rank, 1);
    }

    #[test]
    fn diagonalizer_pattern() {
        let m = diagonalizer(3).unwrap();
        let s = Cyc::sqrt2();
        let scaled = m.matrix.map(|x| x.mul_ref(&s));
        let diag = [1, 1, 1, 1, 0, -1, -1, -1, -1];
        for (i, d) in diag.iter().enumerate() {
            let want = if i == 4 { s.clone() } else { Cyc::from_int(*d) };
            assert_eq!(scaled.get(i, i), want);
            if i != 4 {
                assert_eq!(scaled.get(i, 8 - i), Cyc::one());
            }
        }
        assert_eq!(m.matrix.mul(&m.matrix), SparseMatrix::identity(9));
    }
}
