//! Fermat census of multiplets for prime `r`, and the free energy.

use super::classify::SpectrumReport;
use crate::error::{Error, Result};
use crate::exp_scalar::{LinForm, ParamSymbol, Sign};
use crate::params::ParamSet;
use crate::ring::q;
use num_bigint::BigUint;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub n: usize,
    pub r: usize,
    /// `(N^r − N)/r`.
    pub m: BigUint,
    /// Present when a classified spectrum was supplied.
    pub observed: Option<Observed>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Observed {
    /// Multiplets outside the `N` trace eigenvalues, by size.
    pub sizes: BTreeMap<usize, usize>,
    pub multiplet_count: usize,
    pub eigenvalue_count: usize,
}

impl Census {
    pub fn pass(&self) -> bool {
        match &self.observed {
            None => true,
            Some(o) => {
                let expected_total = BigUint::from(self.n).pow(self.r as u32) - BigUint::from(self.n);
                o.sizes.keys().all(|s| s % self.r == 0)
                    && BigUint::from(o.eigenvalue_count) == expected_total
                    && BigUint::from(o.sizes.get(&self.r).copied().unwrap_or(0)) == self.m
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"N": self.n, "r": self.r, "M": self.m.to_string(), "pass": self.pass()});
        if let Some(o) = &self.observed {
            v["multipletCount"] = json!(o.multiplet_count);
            v["eigenvalueCount"] = json!(o.eigenvalue_count);
            v["sizes"] = o.sizes.iter().map(|(k, c)| (k.to_string(), json!(c))).collect::<serde_json::Map<_, _>>().into();
        }
        v
    }
}

pub fn is_prime(r: usize) -> bool {
    r >= 2 && (2..).take_while(|d| d * d <= r).all(|d| !r.is_multiple_of(d))
}

/// `M = (N^r − N)/r`; with a spectrum, also counts the non-trace multiplets.
pub fn fermat_census(n: usize, r: usize, spectrum: Option<&SpectrumReport>) -> Result<Census> {
    if !is_prime(r) {
        return Err(Error::NonPrimeOrder(r));
    }
    let total = BigUint::from(n).pow(r as u32) - BigUint::from(n);
    let m = total / BigUint::from(r);
    let observed = spectrum.map(|rep| {
        // the N trace eigenvalues: e^{r m_aa^(+) θ} twice per a, and 1
        let mut skip: BTreeMap<LinForm, usize> = BTreeMap::new();
        let p = n.div_ceil(2);
        for a in 1..p {
            let mu = LinForm::symbol(ParamSymbol::new(a as u16, a as u16, Sign::Plus)).scale(&q(r as i64, 1));
            *skip.entry(mu).or_insert(0) += 2;
        }
        skip.insert(LinForm::zero(), 1);
        let mut sizes = BTreeMap::new();
        let mut eigenvalue_count = 0;
        let mut multiplet_count = 0;
        for mlt in &rep.multiplets {
            let mut count = mlt.count;
            if mlt.order == 1 {
                if let Some(s) = skip.get_mut(&mlt.mu) {
                    let take = (*s).min(count);
                    *s -= take;
                    count -= take;
                }
            }
            if count > 0 {
                *sizes.entry(mlt.order).or_insert(0) += count;
                eigenvalue_count += count * mlt.order;
                multiplet_count += count;
            }
        }
        Observed { sizes, multiplet_count, eigenvalue_count }
    });
    Ok(Census { n, r, m, observed })
}

/// `f = −max_i(m_ii^(+)) θ`.
pub fn free_energy(params: &ParamSet, theta: f64) -> Result<f64> {
    let vals = params.numeric().ok_or_else(|| Error::MissingParameter("numeric parameter values are required".into()))?;
    let best = (1..params.p()).map(|i| vals[&ParamSymbol::new(i as u16, i as u16, Sign::Plus)]).fold(f64::NEG_INFINITY, f64::max);
    Ok(-best * theta)
}
