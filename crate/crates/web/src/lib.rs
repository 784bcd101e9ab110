//! Browser bindings. Every export returns a JSON string; errors come back as
//! `{"error": "..."}` so the page never has to catch.

use braidstat::braid::{check_braid_numeric, check_braid_symbolic};
use braidstat::exp_scalar::NumEnv;
use braidstat::params::ParamSet;
use braidstat::spectrum::{classify_multiplets, fermat_census, full_spectrum};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_STATES: usize = 729;

fn wrap(r: braidstat::Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({"error": e.to_string()}).to_string(),
    }
}

fn draw(n: usize, r: usize, seed: u64) -> braidstat::Result<ParamSet> {
    ParamSet::random_generic(n, r.max(1), seed, 0.5, 1e-8)
}

/// Exact braid residual plus a numeric residual at random parameters.
#[wasm_bindgen]
pub fn braid_check(n: usize, seed: u64, theta: f64, theta_prime: f64) -> String {
    wrap((|| {
        let exact = check_braid_symbolic(&ParamSet::symbolic(n)?)?;
        let params = draw(n, 1, seed)?;
        let env = NumEnv { theta, theta2: theta_prime, params: params.numeric().expect("drawn values"), ..Default::default() };
        let numeric = check_braid_numeric(&params, theta, theta_prime, &env)?;
        Ok(json!({
            "N": n,
            "exact_nonzero_entries": exact.nonzero_entries,
            "numeric_residual": numeric,
            "params": params.to_json(),
        }))
    })())
}

/// Eigenvalues of the transfer matrix at one `theta`, grouped into multiplets.
#[wasm_bindgen]
pub fn spectrum(n: usize, r: usize, seed: u64, theta: f64) -> String {
    wrap((|| {
        if n.checked_pow(r as u32).is_none_or(|d| d > MAX_STATES) {
            return Err(braidstat::Error::OrderOverflow { dim: (n as u128).pow(r as u32), cap: MAX_STATES as u128 });
        }
        if theta == 0.0 || !theta.is_finite() {
            return Err(braidstat::Error::Invalid("theta must be nonzero".into()));
        }
        let params = draw(n, r, seed)?;
        let second = if (theta - 1.3).abs() > 1e-3 { 1.3 } else { 0.7 };
        let samples = full_spectrum(&params, r, &[theta, second])?;
        let rep = classify_multiplets(&params, r, &samples)?;
        let points: Vec<Value> = rep
            .records
            .iter()
            .filter(|e| e.theta == theta)
            .map(|e| json!({"re": e.value.re, "im": e.value.im, "order": e.order, "mu": e.mu.to_string()}))
            .collect();
        Ok(json!({"N": n, "r": r, "points": points, "report": rep.to_json(), "pass": rep.pass()}))
    })())
}

/// `(N^r - N)/r`, optionally checked against a computed spectrum.
#[wasm_bindgen]
pub fn census(n: usize, r: usize, observe: bool, seed: u64) -> String {
    wrap((|| {
        if !observe {
            return Ok(fermat_census(n, r, None)?.to_json());
        }
        if n.checked_pow(r as u32).is_none_or(|d| d > MAX_STATES) {
            return Err(braidstat::Error::OrderOverflow { dim: (n as u128).pow(r as u32), cap: MAX_STATES as u128 });
        }
        let params = draw(n, r, seed)?;
        let rep = classify_multiplets(&params, r, &full_spectrum(&params, r, &[0.7, 1.3])?)?;
        Ok(fermat_census(n, r, Some(&rep))?.to_json())
    })())
}
