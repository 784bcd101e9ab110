//! Closed-form eigenvectors of `T^(r)` and their exact verification.

use crate::exp_scalar::{Cyc, ExpScalar, LinForm, ParamSymbol, Sign};
use crate::params::ParamSet;
use crate::ring::{q, Ring};
use crate::sparse::SparseMatrix;
use crate::words::{bar, index_of, render};

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticEigen {
    pub name: String,
    /// Sparse coordinates `(word index, coefficient)`.
    pub vector: Vec<(usize, Cyc)>,
    pub eigenvalue: ExpScalar,
}

impl AnalyticEigen {
    /// `T v − λ v` is exactly zero.
    pub fn verify(&self, t: &SparseMatrix<ExpScalar>) -> bool {
        let d = t.ncols();
        let mut v = vec![ExpScalar::zero(); d];
        for (i, c) in &self.vector {
            v[*i] = ExpScalar::cyc(c.clone());
        }
        let tv = t.mul_vec(&v);
        tv.iter().zip(&v).all(|(a, b)| a.sub_ref(&b.mul_ref(&self.eigenvalue)).is_zero())
    }
}

fn m(params: &ParamSet, a: usize, b: usize, s: Sign) -> LinForm {
    params.exponent(ParamSymbol::new(a as u16, b as u16, s))
}

/// `|p p … p⟩` with eigenvalue 1.
pub fn middle_state(n: usize, r: usize) -> AnalyticEigen {
    let p = n.div_ceil(2);
    AnalyticEigen {
        name: format!("|{}>", render(&vec![p; r], n)),
        vector: vec![(index_of(&vec![p; r], n), Cyc::one())],
        eigenvalue: ExpScalar::one(),
    }
}

/// For each `a < p`, the sums over words in `{a, ā}^r` with an even / odd
/// number of letters `a`, both with eigenvalue `e^{r m_aa^(+) θ}`; then `|pp…p⟩`.
pub fn trace_eigenvectors(params: &ParamSet, r: usize) -> Vec<AnalyticEigen> {
    let n = params.n();
    let p = params.p();
    let mut out = Vec::new();
    for a in 1..p {
        let lam = ExpScalar::exp(m(params, a, a, Sign::Plus).scale(&q(r as i64, 1)));
        for (parity, tag) in [(0, "even"), (1, "odd")] {
            let vector = (0..1usize << r)
                .filter(|mask| (mask.count_ones() as usize) % 2 == parity)
                .map(|mask| {
                    let w: Vec<usize> = (0..r).map(|s| if mask >> (r - 1 - s) & 1 == 1 { a } else { bar(a, n) }).collect();
                    (index_of(&w, n), Cyc::one())
                })
                .collect();
            out.push(AnalyticEigen { name: format!("V_{tag}(a={a})"), vector, eigenvalue: lam.clone() });
        }
    }
    out.push(middle_state(n, r));
    out
}

/// States of `S(r, r−1)`:
/// `|ω,ε,a⟩ = Σ_s ω^s |p…p (a + ε ā) p…p⟩` with the excitation `s` sites from
/// the right, eigenvalue `ω^{r−1} e^{(m_ap^(ε) + m_pa^(ε))θ}`, `ω^r = 1`.
/// For `r = 1` the sector is spanned by `|a⟩`, `|ā⟩` with eigenvalue `e^{m_aa^(+)θ}`.
pub fn ladder_eigenvectors(params: &ParamSet, r: usize) -> Vec<AnalyticEigen> {
    let n = params.n();
    let p = params.p();
    let mut out = Vec::new();
    if r == 1 {
        for a in 1..p {
            let lam = ExpScalar::exp(m(params, a, a, Sign::Plus));
            for l in [a, bar(a, n)] {
                out.push(AnalyticEigen {
                    name: format!("|{}>", render(&[l], n)),
                    vector: vec![(l - 1, Cyc::one())],
                    eigenvalue: lam.clone(),
                });
            }
        }
        return out;
    }
    let order = r as u32;
    for a in 1..p {
        for s in Sign::BOTH {
            let mu = m(params, a, p, s).add(&m(params, p, a, s));
            for j in 0..r as i64 {
                let mut vector = Vec::new();
                for site in 0..r {
                    let shift = (r - 1 - site) as i64;
                    let w = Cyc::zeta_pow(order, j * shift);
                    for (letter, coeff) in [(a, w.clone()), (bar(a, n), w.scale(&q(s.as_i64(), 1)))] {
                        let mut word = vec![p; r];
                        word[site] = letter;
                        vector.push((index_of(&word, n), coeff));
                    }
                }
                let eigenvalue = ExpScalar::exp_term(Cyc::zeta_pow(order, j * (r as i64 - 1)), mu.clone());
                out.push(AnalyticEigen { name: format!("|w=z{r}^{j},{},a={a}>", s.as_char()), vector, eigenvalue });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::transfer_symbolic;

    #[test]
    fn closed_form_vectors_three() {
        let params = ParamSet::symbolic(3).unwrap();
        for r in 1..=3 {
            let t = transfer_symbolic(&params, r).unwrap();
            for v in trace_eigenvectors(&params, r).iter().chain(&ladder_eigenvectors(&params, r)) {
                assert!(v.verify(&t), "r={r} {}", v.name);
            }
        }
    }

    #[test]
    fn ladder_count_and_values() {
        let params = ParamSet::symbolic(3).unwrap();
        let l = ladder_eigenvectors(&params, 2);
        assert_eq!(l.len(), 4);
        let neg = l.iter().filter(|v| v.eigenvalue.terms().values().next().unwrap() == &Cyc::from_int(-1)).count();
        assert_eq!(neg, 2);
    }

    #[test]
    fn general_n_vectors() {
        let params = ParamSet::symbolic(5).unwrap();
        for r in 1..=2 {
            let t = transfer_symbolic(&params, r).unwrap();
            for v in trace_eigenvectors(&params, r).iter().chain(&ladder_eigenvectors(&params, r)) {
                assert!(v.verify(&t), "r={r} {}", v.name);
            }
        }
    }
}
