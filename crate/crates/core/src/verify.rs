//! The full verification suite for one `(N, r)`.

use crate::braid::{check_braid_numeric, check_braid_symbolic};
use crate::error::Result;
use crate::exp_scalar::{ExpScalar, NumEnv};
use crate::hamiltonian::{chain_hamiltonian, explicit_two_site, higher_charge, reshetikhin_check};
use crate::params::ParamSet;
use crate::projectors::{build_nested, verify_basis};
use crate::rtt::{check_canonical_rtt, check_canonical_rtt_numeric};
use crate::scattering::{verify_cayley_inverse, verify_involution};
use crate::spectrum::{classify_multiplets, fermat_census, full_spectrum, is_prime, ladder_eigenvectors, trace_eigenvectors};
use crate::transfer::{transfer_symbolic, verify_trace, SYMBOLIC_CAP};
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Suite {
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let (pass, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check { name: name.to_string(), pass, detail, seconds: start.elapsed().as_secs_f64() });
    }

    /// Timings are left out unless asked for, so that output is reproducible.
    pub fn to_json(&self, timings: bool) -> Value {
        json!({
            "pass": self.pass(),
            "checks": self.checks.iter().map(|c| {
                let mut v = json!({"name": c.name, "pass": c.pass, "detail": c.detail});
                if timings {
                    v["seconds"] = json!(c.seconds);
                }
                v
            }).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self, timings: bool) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let time = if timings { format!("{:>8.3}s  ", c.seconds) } else { String::new() };
            out.push_str(&format!("{:width$}  {verdict}  {time}{}\n", c.name, c.detail));
        }
        out.push_str(&format!("overall: {}\n", if self.pass() { "PASS" } else { "FAIL" }));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "pass", "detail"]).expect("in-memory write");
        for c in &self.checks {
            w.write_record([c.name.as_str(), if c.pass { "true" } else { "false" }, c.detail.as_str()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }
}

/// Runs every check that applies to `(N, r)`. `numeric` must carry values
/// for all parameters; the exact checks use symbolic parameters.
pub fn verify_all(numeric: &ParamSet, r: usize) -> Result<Suite> {
    let n = numeric.n();
    let symbolic = ParamSet::symbolic(n)?;
    let vals =
        numeric.numeric().ok_or_else(|| crate::Error::MissingParameter("verify-all needs numeric values for every parameter".into()))?;
    let symbolic_ok = (n as u128).pow(r as u32) <= SYMBOLIC_CAP;
    let mut suite = Suite::default();

    suite.run("projectors", || {
        let rep = verify_basis(&build_nested(n)?);
        Ok((rep.pass(), format!("{} projectors, worst deviation {}", rep.count, rep.worst_deviation)))
    });
    suite.run("braid (exact)", || {
        let res = check_braid_symbolic(&symbolic)?;
        Ok((res.is_zero(), format!("{} nonzero residual entries", res.nonzero_entries)))
    });
    suite.run("braid (numeric)", || {
        let env = NumEnv { theta: 0.7, theta2: 0.3, params: vals.clone(), ..Default::default() };
        let res = check_braid_numeric(numeric, 0.7, 0.3, &env)?;
        Ok((res < 1e-10, format!("max residual {res:.3e}")))
    });
    if symbolic_ok {
        suite.run("trace", || {
            let tc = verify_trace(&symbolic, r)?;
            Ok((tc.pass(), format!("trace = {}", tc.closed_form)))
        });
        suite.run("eigenvectors", || {
            let t = transfer_symbolic(&symbolic, r)?;
            let mut vs = trace_eigenvectors(&symbolic, r);
            vs.extend(ladder_eigenvectors(&symbolic, r));
            let bad: Vec<String> = vs.iter().filter(|v| !v.verify(&t)).map(|v| v.name.clone()).collect();
            Ok((bad.is_empty(), if bad.is_empty() { format!("{} vectors exact", vs.len()) } else { format!("failed: {}", bad.join(", ")) }))
        });
    }
    let mut report = None;
    suite.run("spectrum", || {
        let samples = full_spectrum(numeric, r, &[0.6, 1.1])?;
        let rep = classify_multiplets(numeric, r, &samples)?;
        let detail = format!(
            "{} eigenvalues, {} multiplets, zero-sum {}, trace {}, numeric trace error {:.2e}",
            rep.total,
            rep.multiplets.len(),
            rep.zero_sum,
            rep.trace_check,
            rep.numeric_trace_error
        );
        let pass = rep.pass();
        report = Some(rep);
        Ok((pass, detail))
    });
    if is_prime(r) {
        suite.run("fermat census", || {
            let c = fermat_census(n, r, report.as_ref())?;
            let seen = c.observed.as_ref().map(|o| o.multiplet_count.to_string()).unwrap_or_else(|| "-".into());
            Ok((c.pass(), format!("M = {}, observed {seen}", c.m)))
        });
    }
    if r >= 2 && symbolic_ok {
        suite.run("hamiltonian", || {
            let h1 = chain_hamiltonian(numeric, r)?.matrix;
            let h2 = higher_charge(numeric, r)?.matrix;
            let commute = h1.commutator(&h2).is_zero();
            let two_site = if n == 3 { chain_hamiltonian(numeric, 2)?.matrix == explicit_two_site(numeric)? } else { true };
            Ok((commute && two_site, format!("[H1,H2] exact zero: {commute}; two-site form: {two_site}")))
        });
    }
    suite.run("reshetikhin", || {
        let res = reshetikhin_check(numeric)?;
        Ok((res.exact_zero, format!("max entry {:.3e}", res.max_abs)))
    });
    if n == 3 {
        suite.run("cayley potential", || {
            let l = ExpScalar::lambda();
            let inv = verify_cayley_inverse(&symbolic, &l)?;
            let inv2 = verify_involution(&symbolic, &l)?;
            Ok((inv && inv2, format!("(R-lambda)X = I: {inv}; (-iV-I)(R-lambda) = 2lambda: {inv2}")))
        });
        suite.run("rtt (exact)", || {
            let rep = check_canonical_rtt(&symbolic, 1)?;
            Ok((rep.pass(), format!("{} of {} relations hold", rep.relations.len() - rep.failures(), rep.relations.len())))
        });
    } else {
        suite.run("rtt (numeric)", || {
            let res = check_canonical_rtt_numeric(numeric, 0.9, 0.4, 1)?;
            Ok((res < 1e-10, format!("max residual {res:.3e}")))
        });
    }
    Ok(suite)
}
