//! Rational linear forms in the braid parameters.

use crate::ring::q;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Family of a parameter, as determined by whether an index equals `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ParamKind {
    /// `m_ij` with `i, j < p`
    Mm,
    /// `m_pi`
    Pi,
    /// `m_ip`
    Ip,
}

/// The exponent `m_ab^(sign)` with `1 <= a, b <= p` and not both equal to `p`.
///
/// `m_i\bar{j}` is never a separate symbol: it is the same as `m_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParamSymbol {
    pub a: u16,
    pub b: u16,
    pub sign: Sign,
}

impl ParamSymbol {
    pub fn new(a: u16, b: u16, sign: Sign) -> Self {
        ParamSymbol { a, b, sign }
    }

    pub fn kind(&self, p: u16) -> ParamKind {
        if self.a == p {
            ParamKind::Pi
        } else if self.b == p {
            ParamKind::Ip
        } else {
            ParamKind::Mm
        }
    }

    /// Canonical symbol for `m_ab` where either index may be barred (`> p`).
    pub fn canonical(n: u16, a: u16, b: u16, sign: Sign) -> Self {
        let p = n.div_ceil(2);
        let fold = |x: u16| if x > p { n + 1 - x } else { x };
        ParamSymbol { a: fold(a), b: fold(b), sign }
    }

    /// Text name such as `m12+`; indices are separated by `_` once they
    /// need more than one digit.
    pub fn name(&self) -> String {
        if self.a < 10 && self.b < 10 {
            format!("m{}{}{}", self.a, self.b, self.sign.as_char())
        } else {
            format!("m{}_{}{}", self.a, self.b, self.sign.as_char())
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let body = s.strip_prefix('m')?;
        let sign = match body.chars().last()? {
            '+' => Sign::Plus,
            '-' => Sign::Minus,
            _ => return None,
        };
        let idx = &body[..body.len() - 1];
        let (a, b) = if let Some((a, b)) = idx.split_once('_') {
            (a.parse().ok()?, b.parse().ok()?)
        } else {
            if idx.len() != 2 || !idx.bytes().all(|c| c.is_ascii_digit()) {
                return None;
            }
            ((idx.as_bytes()[0] - b'0') as u16, (idx.as_bytes()[1] - b'0') as u16)
        };
        if a == 0 || b == 0 {
            return None;
        }
        Some(ParamSymbol { a, b, sign })
    }
}

impl fmt::Display for ParamSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Anything that may appear with a rational coefficient in an exponent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Param(ParamSymbol),
    /// `e^{lambda*theta}` is used as a stand-in for the free scalar `λ`,
    /// so integer powers and inverses of `λ` stay monomials.
    Lambda,
    /// Free auxiliary exponent, used to break structural constraints in tests.
    Aux(u32),
}

impl Symbol {
    pub fn name(&self) -> String {
        match self {
            Symbol::Param(p) => p.name(),
            Symbol::Lambda => "lambda".into(),
            Symbol::Aux(k) => format!("x{k}"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s == "lambda" {
            return Some(Symbol::Lambda);
        }
        if let Some(k) = s.strip_prefix('x') {
            return k.parse().ok().map(Symbol::Aux);
        }
        ParamSymbol::parse(s).map(Symbol::Param)
    }
}

impl From<ParamSymbol> for Symbol {
    fn from(p: ParamSymbol) -> Self {
        Symbol::Param(p)
    }
}

/// `Σ c_s·s + c_0`, kept canonical (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinForm {
    coeffs: BTreeMap<Symbol, BigRational>,
    constant: BigRational,
}

impl LinForm {
    pub fn zero() -> Self {
        LinForm::default()
    }

    pub fn constant(c: BigRational) -> Self {
        LinForm { coeffs: BTreeMap::new(), constant: c }
    }

    pub fn symbol(s: impl Into<Symbol>) -> Self {
        Self::term(s, BigRational::one())
    }

    pub fn term(s: impl Into<Symbol>, c: BigRational) -> Self {
        let mut f = LinForm::zero();
        f.add_term(s.into(), c);
        f
    }

    pub fn add_term(&mut self, s: Symbol, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(s.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn constant_part(&self) -> &BigRational {
        &self.constant
    }

    pub fn coeffs(&self) -> &BTreeMap<Symbol, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, s: &Symbol) -> BigRational {
        self.coeffs.get(s).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(s.clone(), c.clone());
        }
        out.constant += &other.constant;
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1, 1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return LinForm::zero();
        }
        LinForm { coeffs: self.coeffs.iter().map(|(s, c)| (s.clone(), c * k)).collect(), constant: &self.constant * k }
    }

    /// Replaces symbols that have a known value by constants.
    pub fn substitute(&self, f: &impl Fn(&Symbol) -> Option<LinForm>) -> Self {
        let mut out = LinForm::constant(self.constant.clone());
        for (s, c) in &self.coeffs {
            match f(s) {
                Some(v) => out = out.add(&v.scale(c)),
                None => out.add_term(s.clone(), c.clone()),
            }
        }
        out
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.coeffs.keys()
    }

    /// Parses the output of `Display`, e.g. `m11+ + 2*m11- - 1/2`.
    pub fn parse(s: &str) -> Option<Self> {
        crate::exp_scalar::text::parse_linform(s)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (s, c) in &self.coeffs {
            let mag = c.abs();
            let body = if mag.is_one() { s.name() } else { format!("{}*{}", mag, s.name()) };
            parts.push((c.is_negative(), body));
        }
        if !self.constant.is_zero() {
            parts.push((self.constant.is_negative(), self.constant.abs().to_string()));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for (a, b) in [(1, 1), (1, 2), (2, 1), (3, 12)] {
            for sign in Sign::BOTH {
                let s = ParamSymbol::new(a, b, sign);
                assert_eq!(ParamSymbol::parse(&s.name()), Some(s));
            }
        }
        assert_eq!(ParamSymbol::parse("m1+"), None);
        assert_eq!(ParamSymbol::parse("m12"), None);
    }

    #[test]
    fn barred_indices_fold() {
        // N=5: 5 is \bar{1}, 4 is \bar{2}
        let s = ParamSymbol::canonical(5, 1, 4, Sign::Plus);
        assert_eq!(s, ParamSymbol::new(1, 2, Sign::Plus));
        assert_eq!(s.kind(3), ParamKind::Mm);
        assert_eq!(ParamSymbol::new(3, 1, Sign::Minus).kind(3), ParamKind::Pi);
    }

    #[test]
    fn cancellation_is_canonical() {
        let m = Symbol::Param(ParamSymbol::new(1, 1, Sign::Plus));
        let mut f = LinForm::symbol(m.clone());
        f.add_term(m, q(-1, 1));
        assert_eq!(f, LinForm::zero());
        assert!(f.coeffs().is_empty());
    }

    #[test]
    fn display() {
        let a = Symbol::Param(ParamSymbol::new(1, 1, Sign::Plus));
        let b = Symbol::Param(ParamSymbol::new(1, 1, Sign::Minus));
        let f = LinForm::symbol(a).add(&LinForm::term(b, q(2, 1)));
        assert_eq!(f.to_string(), "m11+ + 2*m11-");
        assert_eq!(f.neg().to_string(), "-m11+ - 2*m11-");
        assert_eq!(LinForm::constant(q(-1, 2)).to_string(), "-1/2");
    }
}
