//! Free exponents of the braid matrix.

use crate::error::{Error, Result};
use crate::exp_scalar::{LinForm, ParamKind, ParamSymbol, Sign};
use crate::ring::{parse_rational, rational_to_f64};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Symbolic,
    Rational(BigRational),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet {
    n: usize,
    values: BTreeMap<ParamSymbol, ParamValue>,
}

/// Denominator of the draws made by [`ParamSet::random_generic`]; large
/// enough that exact coincidences on the exponent lattice are rare.
pub const GENERIC_DENOMINATOR: i64 = 1_000_000_007;

pub fn check_odd(n: usize) -> Result<usize> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::EvenN(n));
    }
    Ok(n.div_ceil(2))
}

/// `(N+3)(N-1)/2`.
pub fn free_parameter_count(n: usize) -> usize {
    (n + 3) * (n - 1) / 2
}

/// All free symbols for odd `N`: the `pi`, `ip` families, then `m_ij`.
pub fn symbols(n: usize) -> Vec<ParamSymbol> {
    let p = n.div_ceil(2) as u16;
    let mut out = Vec::new();
    for a in 1..=p {
        for b in 1..=p {
            if a == p && b == p {
                continue;
            }
            for s in Sign::BOTH {
                out.push(ParamSymbol::new(a, b, s));
            }
        }
    }
    out
}

impl ParamSet {
    pub fn symbolic(n: usize) -> Result<Self> {
        check_odd(n)?;
        Ok(ParamSet { n, values: symbols(n).into_iter().map(|s| (s, ParamValue::Symbolic)).collect() })
    }

    /// Symbols missing from `values` stay symbolic.
    pub fn with_values(n: usize, values: impl IntoIterator<Item = (ParamSymbol, BigRational)>) -> Result<Self> {
        let mut set = Self::symbolic(n)?;
        for (s, v) in values {
            set.set(s, v)?;
        }
        Ok(set)
    }

    pub fn set(&mut self, s: ParamSymbol, v: BigRational) -> Result<()> {
        match self.values.get_mut(&s) {
            Some(slot) => {
                *slot = ParamValue::Rational(v);
                Ok(())
            }
            None => Err(Error::InvalidParamSet(format!("{} is not a parameter for N={}", s.name(), self.n))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.n.div_ceil(2)
    }

    pub fn values(&self) -> &BTreeMap<ParamSymbol, ParamValue> {
        &self.values
    }

    pub fn value(&self, s: &ParamSymbol) -> Option<&BigRational> {
        match self.values.get(s)? {
            ParamValue::Rational(v) => Some(v),
            ParamValue::Symbolic => None,
        }
    }

    pub fn is_fully_numeric(&self) -> bool {
        self.values.values().all(|v| matches!(v, ParamValue::Rational(_)))
    }

    pub fn is_fully_symbolic(&self) -> bool {
        self.values.values().all(|v| matches!(v, ParamValue::Symbolic))
    }

    /// Exponent `m_ab^(s)` as a linear form: a constant when the value is known.
    pub fn exponent(&self, s: ParamSymbol) -> LinForm {
        match self.values.get(&s) {
            Some(ParamValue::Rational(v)) => LinForm::constant(v.clone()),
            Some(ParamValue::Symbolic) => LinForm::symbol(s),
            None => panic!("{} is not a parameter for N={}", s.name(), self.n),
        }
    }

    pub fn m(&self, a: usize, b: usize, sign: Sign) -> LinForm {
        self.exponent(ParamSymbol::canonical(self.n as u16, a as u16, b as u16, sign))
    }

    /// Values as floats; `None` if any symbol is still free.
    pub fn numeric(&self) -> Option<HashMap<ParamSymbol, f64>> {
        self.values
            .iter()
            .map(|(s, v)| match v {
                ParamValue::Rational(q) => Some((*s, rational_to_f64(q))),
                ParamValue::Symbolic => None,
            })
            .collect()
    }

    /// Replaces remaining symbols by the given values.
    pub fn fill(&self, other: &ParamSet) -> ParamSet {
        let mut out = self.clone();
        for (s, v) in out.values.iter_mut() {
            if matches!(v, ParamValue::Symbolic) {
                if let Some(x) = other.value(s) {
                    *v = ParamValue::Rational(x.clone());
                }
            }
        }
        out
    }

    /// `{"N": 3, "m": {"m11+": "2", …}}`; `"m"` may be omitted for a
    /// fully symbolic set. Values are rational strings or JSON numbers.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::InvalidParamSet("expected a JSON object".into()))?;
        for k in obj.keys() {
            if k != "N" && k != "m" {
                return Err(Error::InvalidParamSet(format!("unknown key {k:?}")));
            }
        }
        let n =
            obj.get("N").and_then(Value::as_u64).ok_or_else(|| Error::InvalidParamSet("\"N\" must be a positive integer".into()))? as usize;
        let mut set = Self::symbolic(n)?;
        let Some(m) = obj.get("m") else { return Ok(set) };
        let m = m.as_object().ok_or_else(|| Error::InvalidParamSet("\"m\" must be an object".into()))?;
        let mut seen: BTreeMap<ParamSymbol, BigRational> = BTreeMap::new();
        for (name, val) in m {
            let raw = ParamSymbol::parse(name).ok_or_else(|| Error::InvalidParamSet(format!("bad parameter name {name:?}")))?;
            if raw.a as usize > n || raw.b as usize > n {
                return Err(Error::InvalidParamSet(format!("{name} is out of range for N={n}")));
            }
            let sym = ParamSymbol::canonical(n as u16, raw.a, raw.b, raw.sign);
            let text = match val {
                Value::String(s) => s.clone(),
                Value::Number(x) => x.to_string(),
                _ => return Err(Error::InvalidParamSet(format!("{name}: value must be a string or number"))),
            };
            let q = parse_rational(&text).ok_or_else(|| Error::InvalidParamSet(format!("{name}: cannot parse {text:?}")))?;
            if let Some(prev) = seen.get(&sym) {
                if *prev != q {
                    return Err(Error::InvalidParamSet(format!("{name} conflicts with {}: the two exponents are identified", sym.name())));
                }
            }
            seen.insert(sym, q.clone());
            set.set(sym, q)?;
        }
        Ok(set)
    }

    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> = self
            .values
            .iter()
            .filter_map(|(s, v)| match v {
                ParamValue::Rational(q) => Some((s.name(), Value::String(q.to_string()))),
                ParamValue::Symbolic => None,
            })
            .collect();
        json!({"N": self.n, "m": m})
    }

    /// Uniform rationals `k/1009` in `[-scale, scale]`.
    pub fn random(n: usize, seed: u64, scale: f64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(n, &mut rng, scale, 1009)
    }

    fn random_with(n: usize, rng: &mut ChaCha8Rng, scale: f64, den: i64) -> Result<Self> {
        let top = (scale * den as f64).round().max(1.0) as i64;
        let vals: Vec<(ParamSymbol, BigRational)> =
            symbols(n).into_iter().map(|s| (s, BigRational::new(rng.gen_range(-top..=top).into(), den.into()))).collect();
        Self::with_values(n, vals)
    }

    /// Random values over the denominator `10⁹+7` for which every exponent reachable at order `r`
    /// (non-negative integer combinations of total degree `≤ r`) is at
    /// least `min_gap` away from every other one.
    pub fn random_generic(n: usize, r: usize, seed: u64, scale: f64, min_gap: f64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let syms = symbols(n);
        let cands = lattice_candidates(syms.len(), r);
        for _ in 0..20000 {
            let set = Self::random_with(n, &mut rng, scale, GENERIC_DENOMINATOR)?;
            let vals = set.numeric().expect("all values set");
            let x: Vec<f64> = syms.iter().map(|s| vals[s]).collect();
            if lattice_gap(&cands, &x) >= min_gap {
                return Ok(set);
            }
        }
        Err(Error::InvalidParamSet(format!("no generic draw found for N={n}, r={r}")))
    }

    /// Violations of the positivity condition `m^(+) >= m^(-)` and, for N=3,
    /// of the reference ordering `m11+ > m11- > m12+ > m12- > m21+ > m21-`.
    /// Informational only.
    pub fn sector_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let p = self.p() as u16;
        for s in symbols(self.n).into_iter().filter(|s| s.sign == Sign::Plus) {
            let minus = ParamSymbol::new(s.a, s.b, Sign::Minus);
            if let (Some(a), Some(b)) = (self.value(&s), self.value(&minus)) {
                if a < b {
                    out.push(format!("{} < {}: some Boltzmann weights are negative for theta > 0", s.name(), minus.name()));
                }
            }
        }
        if self.n == 3 {
            let order =
                [(1, 1, Sign::Plus), (1, 1, Sign::Minus), (1, p, Sign::Plus), (1, p, Sign::Minus), (p, 1, Sign::Plus), (p, 1, Sign::Minus)];
            let vals: Vec<Option<&BigRational>> = order.iter().map(|&(a, b, s)| self.value(&ParamSymbol::new(a, b, s))).collect();
            if vals.iter().all(Option::is_some) && !vals.windows(2).all(|w| w[0] > w[1]) {
                out.push("parameters lie outside the reference sector m11+ > m11- > m12+ > m12- > m21+ > m21-".into());
            }
        }
        out
    }

    pub fn kind_of(&self, s: &ParamSymbol) -> ParamKind {
        s.kind(self.p() as u16)
    }
}

/// Non-negative integer vectors of length `k` and total degree `≤ r`.
pub fn lattice_candidates(k: usize, r: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; k];
    fn rec(pos: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[pos] = c as u8;
            rec(pos + 1, left - c, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, r, &mut cur, &mut out);
    out
}

/// Smallest distance between values `c·x` over all candidates `c`.
pub fn lattice_gap(cands: &[Vec<u8>], x: &[f64]) -> f64 {
    let mut v: Vec<f64> = cands.iter().map(|c| c.iter().zip(x).map(|(&a, b)| a as f64 * b).sum()).collect();
    v.sort_by(f64::total_cmp);
    v.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;

    #[test]
    fn parameter_counts() {
        for n in [3, 5, 7, 9] {
            assert_eq!(symbols(n).len(), free_parameter_count(n));
        }
        assert_eq!(free_parameter_count(3), 6);
        assert_eq!(free_parameter_count(7), 30);
    }

    #[test]
    fn json_round_trip() {
        let v: Value = serde_json::from_str(r#"{"N":3,"m":{"m11+":"2","m11-":"1","m12+":"3/4","m21-":0.5}}"#).unwrap();
        let set = ParamSet::from_json(&v).unwrap();
        assert_eq!(set.value(&ParamSymbol::new(1, 2, Sign::Plus)), Some(&q(3, 4)));
        assert_eq!(set.value(&ParamSymbol::new(2, 1, Sign::Minus)), Some(&q(1, 2)));
        assert!(set.value(&ParamSymbol::new(1, 2, Sign::Minus)).is_none());
        assert_eq!(ParamSet::from_json(&set.to_json()).unwrap(), set);
    }

    #[test]
    fn identified_exponents_must_agree() {
        // N=3: m13 is m_{1\bar 1} = m11
        let ok: Value = serde_json::from_str(r#"{"N":3,"m":{"m11+":"2","m13+":"2"}}"#).unwrap();
        assert!(ParamSet::from_json(&ok).is_ok());
        let bad: Value = serde_json::from_str(r#"{"N":3,"m":{"m11+":"2","m13+":"1"}}"#).unwrap();
        assert!(ParamSet::from_json(&bad).is_err());
        let even: Value = serde_json::from_str(r#"{"N":4}"#).unwrap();
        assert_eq!(ParamSet::from_json(&even), Err(Error::EvenN(4)));
    }

    #[test]
    fn generic_draw_is_separated() {
        let set = ParamSet::random_generic(3, 3, 7, 1.0, 1e-5).unwrap();
        let vals = set.numeric().unwrap();
        let x: Vec<f64> = symbols(3).iter().map(|s| vals[s]).collect();
        assert!(lattice_gap(&lattice_candidates(6, 3), &x) >= 1e-5);
        assert_eq!(lattice_candidates(6, 2).len(), 28);
    }

    #[test]
    fn sector_warning_for_reference_order() {
        let set = ParamSet::with_values(
            3,
            [
                (1, 1, Sign::Plus, 6),
                (1, 1, Sign::Minus, 5),
                (1, 2, Sign::Plus, 4),
                (1, 2, Sign::Minus, 3),
                (2, 1, Sign::Plus, 2),
                (2, 1, Sign::Minus, 1),
            ]
            .map(|(a, b, s, v)| (ParamSymbol::new(a, b, s), q(v, 1))),
        )
        .unwrap();
        assert!(set.sector_warnings().is_empty());
        let mut flipped = set.clone();
        flipped.set(ParamSymbol::new(1, 1, Sign::Minus), q(7, 1)).unwrap();
        assert_eq!(flipped.sector_warnings().len(), 2);
    }
}
