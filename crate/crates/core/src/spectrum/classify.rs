//! Sorting numeric eigenvalues into multiplets `e^{μθ}·(1, ζ_l, …, ζ_l^{l−1})`.

use super::numeric::SampleSpectrum;
use crate::error::{Error, Result};
use crate::exp_scalar::{Cyc, ExpScalar, LinForm, NumEnv, ParamSymbol};
use crate::params::{lattice_candidates, lattice_gap, symbols, ParamSet};
use crate::ring::{q, Ring};
use crate::transfer::trace_closed_form;
use num_complex::Complex64;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Matching tolerance for `ln|λ|/θ` against the exponent lattice.
pub const MU_TOL: f64 = 1e-9;
/// Phase snapping tolerance in radians.
pub const PHASE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Multiplet {
    pub mu: LinForm,
    pub order: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenRecord {
    pub theta: f64,
    pub value: Complex64,
    pub k: usize,
    pub mu: LinForm,
    /// `λ / |λ| = ζ_r^phase_index`.
    pub phase_index: usize,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub n: usize,
    pub r: usize,
    pub total: usize,
    pub multiplets: Vec<Multiplet>,
    /// Multiplets per sector `k`.
    pub sectors: BTreeMap<usize, Vec<Multiplet>>,
    /// Exponents of the order-1 members.
    pub trace_contributors: Vec<LinForm>,
    /// Eigenvalues left over after removing complete multiplets.
    pub anomalies: Vec<String>,
    pub zero_sum: bool,
    /// Exact: sum of all multiplets equals the closed-form trace.
    pub trace_check: bool,
    /// Worst relative gap between the numeric eigenvalue sum and the trace.
    pub numeric_trace_error: f64,
    pub degenerate: bool,
    pub records: Vec<EigenRecord>,
}

impl SpectrumReport {
    pub fn pass(&self) -> bool {
        self.anomalies.is_empty() && self.zero_sum && self.trace_check && self.numeric_trace_error < 1e-9 && !self.degenerate
    }

    /// `(μ, order) → count` within sector `k`, with `μ` rendered as text.
    pub fn sector_table(&self, k: usize) -> BTreeMap<(String, usize), usize> {
        self.sectors.get(&k).into_iter().flatten().map(|m| ((m.mu.to_string(), m.order), m.count)).collect()
    }

    pub fn to_json(&self) -> Value {
        let mult = |v: &[Multiplet]| -> Vec<Value> {
            v.iter().map(|m| json!({"mu": m.mu.to_string(), "order": m.order, "count": m.count})).collect()
        };
        let sectors: serde_json::Map<String, Value> = self.sectors.iter().map(|(k, v)| (k.to_string(), Value::from(mult(v)))).collect();
        json!({
            "N": self.n,
            "r": self.r,
            "total": self.total,
            "multiplets": mult(&self.multiplets),
            "sectors": sectors,
            "trace_contributors": self.trace_contributors.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "anomalies": self.anomalies,
            "zero_sum": self.zero_sum,
            "trace_check": self.trace_check,
            "numeric_trace_error": self.numeric_trace_error,
            "degenerate": self.degenerate,
        })
    }

    /// Rows `theta,re,im,mu,order,phase_index`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["theta", "re", "im", "mu", "order", "phase_index"]).expect("in-memory write");
        for e in &self.records {
            w.write_record([
                e.theta.to_string(),
                format!("{:.15e}", e.value.re),
                format!("{:.15e}", e.value.im),
                e.mu.to_string(),
                e.order.to_string(),
                e.phase_index.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }
}

fn divisors_desc(r: usize) -> Vec<usize> {
    (1..=r).rev().filter(|l| r.is_multiple_of(*l)).collect()
}

/// `Σ_{j<l} ζ_l^j` computed exactly.
pub fn root_sum(l: usize) -> Cyc {
    (0..l as i64).fold(Cyc::zero(), |acc, j| acc.add_ref(&Cyc::zeta_pow(l as u32, j)))
}

pub fn classify_multiplets(params: &ParamSet, r: usize, samples: &[SampleSpectrum]) -> Result<SpectrumReport> {
    let n = params.n();
    let thetas: Vec<f64> = samples.iter().map(|s| s.theta).collect();
    if samples.len() < 2 || thetas.contains(&0.0) {
        return Err(Error::Invalid("classification needs at least two nonzero theta samples".into()));
    }
    let vals = params.numeric().ok_or_else(|| Error::MissingParameter("numeric parameter values are required".into()))?;
    let syms = symbols(n);
    let x: Vec<f64> = syms.iter().map(|s| vals[s]).collect();
    let cands = lattice_candidates(syms.len(), r);
    let degenerate = lattice_gap(&cands, &x) < 2.0 * MU_TOL;
    let mut by_value: Vec<(f64, usize)> =
        cands.iter().enumerate().map(|(i, c)| (c.iter().zip(&x).map(|(&a, b)| a as f64 * b).sum(), i)).collect();
    by_value.sort_by(|a, b| a.0.total_cmp(&b.0));
    let forms: Vec<LinForm> = cands.iter().map(|c| to_form(c, &syms)).collect();

    // key: (k, candidate, phase)
    type Key = (usize, usize, usize);
    let mut per_sample: Vec<Vec<(Key, Complex64)>> = Vec::new();
    for s in samples {
        let mut recs = Vec::new();
        for b in &s.blocks {
            for &z in &b.eigenvalues {
                let what = || format!("{z} at theta={} in S({r},{})", s.theta, b.k);
                if z.norm() < 1e-300 {
                    return Err(Error::UnresolvedEigenvalue(what()));
                }
                let v = z.norm().ln() / s.theta;
                let pos = by_value.partition_point(|(c, _)| *c < v);
                let best = [pos.wrapping_sub(1), pos]
                    .into_iter()
                    .filter_map(|i| by_value.get(i))
                    .min_by(|a, b| (a.0 - v).abs().total_cmp(&(b.0 - v).abs()))
                    .ok_or_else(|| Error::UnresolvedEigenvalue(what()))?;
                if (best.0 - v).abs() > MU_TOL {
                    return Err(Error::UnresolvedEigenvalue(what()));
                }
                let arg = z.arg();
                let step = 2.0 * PI / r as f64;
                let j = (arg / step).round() as i64;
                if (arg - j as f64 * step).abs() > PHASE_TOL {
                    return Err(Error::UnresolvedEigenvalue(format!("{} (phase is not an r-th root of unity)", what())));
                }
                recs.push(((b.k, best.1, j.rem_euclid(r as i64) as usize), z));
            }
        }
        per_sample.push(recs);
    }

    let multiset = |recs: &[(Key, Complex64)]| -> BTreeMap<Key, usize> {
        let mut m = BTreeMap::new();
        for (key, _) in recs {
            *m.entry(*key).or_insert(0) += 1;
        }
        m
    };
    let reference = multiset(&per_sample[0]);
    let mut anomalies = Vec::new();
    for (s, recs) in samples.iter().zip(&per_sample).skip(1) {
        if multiset(recs) != reference {
            anomalies.push(format!("eigenvalue pattern at theta={} differs from theta={}", s.theta, samples[0].theta));
        }
    }

    let mut records = Vec::new();
    let mut sector_counts: BTreeMap<usize, BTreeMap<(usize, usize), usize>> = BTreeMap::new();
    for (si, (s, recs)) in samples.iter().zip(&per_sample).enumerate() {
        let mut pools: BTreeMap<(usize, usize), Vec<Vec<Complex64>>> = BTreeMap::new();
        for ((k, c, j), z) in recs {
            pools.entry((*k, *c)).or_insert_with(|| vec![Vec::new(); r])[*j].push(*z);
        }
        for ((k, c), mut phases) in pools {
            for l in divisors_desc(r) {
                let members: Vec<usize> = (0..l).map(|t| t * (r / l)).collect();
                while members.iter().all(|&j| !phases[j].is_empty()) {
                    for &j in &members {
                        let z = phases[j].pop().expect("checked nonempty");
                        records.push(EigenRecord { theta: s.theta, value: z, k, mu: forms[c].clone(), phase_index: j, order: l });
                    }
                    if si == 0 {
                        *sector_counts.entry(k).or_default().entry((c, l)).or_insert(0) += 1;
                    }
                }
            }
            for (j, left) in phases.iter().enumerate() {
                for z in left {
                    if si == 0 {
                        anomalies
                            .push(format!("{z} (exp({})*theta, zeta_{r}^{j}) in S({r},{k}) is not part of a complete multiplet", forms[c]));
                    }
                    records.push(EigenRecord { theta: s.theta, value: *z, k, mu: forms[c].clone(), phase_index: j, order: 0 });
                }
            }
        }
    }

    let mut sectors: BTreeMap<usize, Vec<Multiplet>> = BTreeMap::new();
    let mut totals: BTreeMap<(LinForm, usize), usize> = BTreeMap::new();
    for (k, counts) in &sector_counts {
        for (&(c, l), &count) in counts {
            sectors.entry(*k).or_default().push(Multiplet { mu: forms[c].clone(), order: l, count });
            *totals.entry((forms[c].clone(), l)).or_insert(0) += count;
        }
    }
    let multiplets: Vec<Multiplet> = totals.into_iter().map(|((mu, order), count)| Multiplet { mu, order, count }).collect();

    let zero_sum = multiplets.iter().filter(|m| m.order > 1).all(|m| root_sum(m.order).is_zero());
    let mut exact_sum = ExpScalar::zero();
    let mut trace_contributors = Vec::new();
    for m in &multiplets {
        let coeff = root_sum(m.order).scale(&q(m.count as i64, 1));
        exact_sum = exact_sum.add_ref(&ExpScalar::exp_term(coeff, m.mu.clone()));
        if m.order == 1 {
            trace_contributors.extend(std::iter::repeat_n(m.mu.clone(), m.count));
        }
    }
    let symbolic = ParamSet::symbolic(n)?;
    let trace_check = exact_sum.canonicalize() == trace_closed_form(&symbolic, r);

    let closed = trace_closed_form(params, r);
    let mut numeric_trace_error: f64 = 0.0;
    for (s, recs) in samples.iter().zip(&per_sample) {
        let sum: Complex64 = recs.iter().map(|(_, z)| z).sum();
        let want = closed.eval(&NumEnv::new(s.theta, vals.clone()))?;
        numeric_trace_error = numeric_trace_error.max((sum - want).norm() / want.norm().max(1.0));
    }

    Ok(SpectrumReport {
        n,
        r,
        total: per_sample[0].len(),
        multiplets,
        sectors,
        trace_contributors,
        anomalies,
        zero_sum,
        trace_check,
        numeric_trace_error,
        degenerate,
        records,
    })
}

fn to_form(c: &[u8], syms: &[ParamSymbol]) -> LinForm {
    let mut f = LinForm::zero();
    for (&k, s) in c.iter().zip(syms) {
        if k != 0 {
            f = f.add(&LinForm::term(*s, q(k as i64, 1)));
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::numeric::full_spectrum;

    #[test]
    fn second_order_tables() {
        let params = ParamSet::random_generic(3, 2, 11, 1.0, 1e-5).unwrap();
        let samples = full_spectrum(&params, 2, &[1.0, 2.0, 3.0]).unwrap();
        let rep = classify_multiplets(&params, 2, &samples).unwrap();
        assert!(rep.pass(), "{:?}", rep.anomalies);
        assert_eq!(rep.total, 9);
        let s0 = rep.sector_table(0);
        assert_eq!(s0.get(&("2*m11-".to_string(), 2)), Some(&1));
        assert_eq!(s0.get(&("2*m11+".to_string(), 1)), Some(&2));
        let s1 = rep.sector_table(1);
        assert_eq!(s1.get(&("m12+ + m21+".to_string(), 2)), Some(&1));
        assert_eq!(s1.get(&("m12- + m21-".to_string(), 2)), Some(&1));
        assert_eq!(rep.sector_table(2).get(&("0".to_string(), 1)), Some(&1));
        assert_eq!(rep.to_csv().lines().count(), 1 + 27);
    }

    #[test]
    fn exact_root_sums() {
        assert_eq!(root_sum(1), Cyc::one());
        for l in 2..=12 {
            assert!(root_sum(l).is_zero(), "l={l}");
        }
    }
}
