//! Finite sums `Σ c·e^{μθ + νθ'}` with cyclotomic coefficients.

use super::cyclotomic::Cyc;
use super::linform::{LinForm, ParamSymbol, Symbol};
use crate::error::{Error, Result};
use crate::ring::{rational_to_f64, Ring};
use num_complex::Complex64;
use num_rational::BigRational;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Exponent of one term: `theta*θ + theta2*θ'`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent {
    pub theta: LinForm,
    pub theta2: LinForm,
}

impl Exponent {
    pub fn zero() -> Self {
        Exponent::default()
    }

    pub fn theta(mu: LinForm) -> Self {
        Exponent { theta: mu, theta2: LinForm::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.theta.is_zero() && self.theta2.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Exponent { theta: self.theta.add(&o.theta), theta2: self.theta2.add(&o.theta2) }
    }

    pub fn neg(&self) -> Self {
        Exponent { theta: self.theta.neg(), theta2: self.theta2.neg() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Exponent { theta: self.theta.scale(k), theta2: self.theta2.scale(k) }
    }
}

/// Values used for numeric evaluation.
#[derive(Clone, Debug, Default)]
pub struct NumEnv {
    pub theta: f64,
    pub theta2: f64,
    pub params: HashMap<ParamSymbol, f64>,
    pub lambda: Option<Complex64>,
    pub aux: HashMap<u32, f64>,
}

impl NumEnv {
    pub fn new(theta: f64, params: HashMap<ParamSymbol, f64>) -> Self {
        NumEnv { theta, params, ..Default::default() }
    }

    /// Evaluates `e^{f·t}` where `t` is the spectral value attached to `f`.
    fn exp_form(&self, f: &LinForm, t: f64) -> Result<Complex64> {
        let mut real = rational_to_f64(f.constant_part()) * t;
        let mut out = Complex64::new(1.0, 0.0);
        for (s, c) in f.coeffs() {
            let c = rational_to_f64(c);
            match s {
                Symbol::Param(p) => {
                    let v = self.params.get(p).ok_or_else(|| Error::MissingParameter(p.name()))?;
                    real += c * v * t;
                }
                Symbol::Aux(k) => {
                    let v = self.aux.get(k).ok_or_else(|| Error::MissingParameter(s.name()))?;
                    real += c * v * t;
                }
                Symbol::Lambda => {
                    // the lambda symbol carries its own value; θ only marks it
                    let l = self.lambda.ok_or_else(|| Error::MissingParameter("lambda".into()))?;
                    out *= l.powf(c);
                }
            }
        }
        Ok(out * real.exp())
    }

    pub fn exp(&self, e: &Exponent) -> Result<Complex64> {
        Ok(self.exp_form(&e.theta, self.theta)? * self.exp_form(&e.theta2, self.theta2)?)
    }
}

#[derive(Clone, Default)]
pub struct ExpScalar {
    terms: BTreeMap<Exponent, Cyc>,
}

impl ExpScalar {
    /// `c·e^{μθ}`; a zero coefficient gives the zero scalar.
    pub fn exp_term(c: Cyc, mu: LinForm) -> Self {
        Self::term(c, Exponent::theta(mu))
    }

    pub fn term(c: Cyc, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        ExpScalar { terms }
    }

    pub fn exp(mu: LinForm) -> Self {
        Self::exp_term(Cyc::one(), mu)
    }

    pub fn rational(r: BigRational) -> Self {
        Self::term(Cyc::from_rational(r), Exponent::zero())
    }

    pub fn cyc(c: Cyc) -> Self {
        Self::term(c, Exponent::zero())
    }

    /// The free scalar `λ`.
    pub fn lambda() -> Self {
        Self::exp(LinForm::symbol(Symbol::Lambda))
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Cyc> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn single_term(&self) -> Option<(&Exponent, &Cyc)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn push(&mut self, e: Exponent, c: Cyc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot = slot.add_ref(&c);
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &Cyc) -> Self {
        let mut out = ExpScalar::zero();
        for (e, x) in &self.terms {
            out.push(e.clone(), x.mul_ref(c));
        }
        out
    }

    /// Multiplies by `e^{e}`.
    pub fn shift(&self, e: &Exponent) -> Self {
        ExpScalar { terms: self.terms.iter().map(|(k, c)| (k.add(e), c.clone())).collect() }
    }

    /// Inverse of a monomial; `None` for sums with more than one term or zero.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.single_term()?;
        Some(ExpScalar::term(c.inverse()?, e.neg()))
    }

    /// Inverse as a ratio: monomials invert exactly, sums become `1/x`.
    pub fn invert(&self) -> Result<super::RationalExp> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        super::RationalExp::new(ExpScalar::one(), self.clone())
    }

    /// Applies a substitution to every exponent.
    pub fn map_exponents(&self, f: impl Fn(&Exponent) -> Exponent) -> Self {
        let mut out = ExpScalar::zero();
        for (e, c) in &self.terms {
            out.push(f(e), c.clone());
        }
        out
    }

    /// Merges equal exponents, drops zeros and stores rational
    /// coefficients at order 1. Values are unchanged.
    pub fn canonicalize(&self) -> Self {
        let mut out = ExpScalar::zero();
        for (e, c) in &self.terms {
            out.push(e.clone(), c.clone());
        }
        for c in out.terms.values_mut() {
            *c = c.normalized();
        }
        out
    }

    pub fn eval(&self, env: &NumEnv) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += c.to_complex() * env.exp(e)?;
        }
        Ok(acc)
    }

    /// Evaluates at `θ = 0` (and `θ' = 0`), where only coefficients remain.
    pub fn at_zero(&self) -> Cyc {
        self.terms.values().fold(Cyc::zero(), |a, c| a.add_ref(c))
    }
}

impl PartialEq for ExpScalar {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len() && self.terms.iter().zip(&other.terms).all(|((e1, c1), (e2, c2))| e1 == e2 && c1 == c2)
    }
}

impl fmt::Debug for ExpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::render(self))
    }
}

impl Ring for ExpScalar {
    fn zero() -> Self {
        ExpScalar::default()
    }
    fn one() -> Self {
        ExpScalar::cyc(Cyc::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.push(e.clone(), c.clone());
        }
        out
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.push(e.clone(), c.clone());
        }
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.push(e.clone(), c.neg_ref());
        }
        out
    }
    fn neg_ref(&self) -> Self {
        ExpScalar { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect() }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = ExpScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.push(e1.add(e2), c1.mul_ref(c2));
            }
        }
        out
    }
    fn from_i64(n: i64) -> Self {
        ExpScalar::cyc(Cyc::from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp_scalar::linform::Sign;
    use crate::ring::q;

    fn m(a: u16, b: u16, s: Sign) -> LinForm {
        LinForm::symbol(ParamSymbol::new(a, b, s))
    }

    fn half_sum(a: u16, b: u16, sign: i64) -> ExpScalar {
        let h = Cyc::from_rational(q(1, 2));
        ExpScalar::exp_term(h.clone(), m(a, b, Sign::Plus)).add_ref(&ExpScalar::exp_term(h.scale(&q(sign, 1)), m(a, b, Sign::Minus)))
    }

    #[test]
    fn zero_coefficient_gives_zero() {
        assert!(ExpScalar::exp_term(Cyc::zero(), m(1, 1, Sign::Plus)).is_zero());
        assert_eq!(ExpScalar::exp_term(Cyc::one(), LinForm::zero()), ExpScalar::one());
    }

    #[test]
    fn a_plus_squared_minus_a_minus_squared() {
        let ap = half_sum(1, 1, 1);
        let am = half_sum(1, 1, -1);
        let got = ap.mul_ref(&ap).sub_ref(&am.mul_ref(&am));
        assert_eq!(got, ExpScalar::exp(m(1, 1, Sign::Plus).add(&m(1, 1, Sign::Minus))));
        assert_eq!(ap.add_ref(&am), ExpScalar::exp(m(1, 1, Sign::Plus)));
    }

    #[test]
    fn monomial_inverse() {
        let x = ExpScalar::exp(m(1, 2, Sign::Plus));
        let inv = x.monomial_inverse().unwrap();
        assert_eq!(x.mul_ref(&inv), ExpScalar::one());
        let r = x.invert().unwrap();
        assert_eq!(r.den(), &ExpScalar::one());
        assert!(ExpScalar::zero().invert().is_err());
    }

    #[test]
    fn numeric_evaluation() {
        let mut params = HashMap::new();
        params.insert(ParamSymbol::new(1, 1, Sign::Plus), 1.0);
        params.insert(ParamSymbol::new(1, 1, Sign::Minus), 0.0);
        let env = NumEnv::new(1.0, params.clone());
        let v = half_sum(1, 1, 1).eval(&env).unwrap();
        assert!((v.re - (std::f64::consts::E + 1.0) / 2.0).abs() < 1e-15);
        let env0 = NumEnv::new(0.0, params);
        assert!((ExpScalar::exp(m(1, 1, Sign::Plus)).eval(&env0).unwrap().re - 1.0).abs() < 1e-15);
        let i = ExpScalar::cyc(Cyc::zeta_pow(4, 1)).eval(&env0).unwrap();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let missing = ExpScalar::exp(m(2, 1, Sign::Plus)).eval(&env0);
        assert!(matches!(missing, Err(Error::MissingParameter(_))));
    }
}
