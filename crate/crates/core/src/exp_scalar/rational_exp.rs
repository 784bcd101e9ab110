//! Ratios of exponential sums.

use super::scalar::{ExpScalar, NumEnv};
use crate::error::{Error, Result};
use crate::ring::Ring;
use num_complex::Complex64;
use std::fmt;

/// `num / den` with `den` nonzero. Never reduced beyond folding monomial
/// denominators into the numerator; equality is by cross-multiplication.
#[derive(Clone)]
pub struct RationalExp {
    num: ExpScalar,
    den: ExpScalar,
}

/// Below this magnitude a numeric denominator counts as zero.
pub const NUMERIC_DEN_TOL: f64 = 1e-300;

impl RationalExp {
    pub fn new(num: ExpScalar, den: ExpScalar) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::fold(num, den))
    }

    pub fn from_scalar(x: ExpScalar) -> Self {
        RationalExp { num: x, den: ExpScalar::one() }
    }

    fn fold(num: ExpScalar, den: ExpScalar) -> Self {
        if let Some(inv) = den.monomial_inverse() {
            return RationalExp { num: num.mul_ref(&inv), den: ExpScalar::one() };
        }
        RationalExp { num, den }
    }

    pub fn num(&self) -> &ExpScalar {
        &self.num
    }

    pub fn den(&self) -> &ExpScalar {
        &self.den
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.recip()?))
    }

    pub fn eval(&self, env: &NumEnv) -> Result<Complex64> {
        let d = self.den.eval(env)?;
        if d.norm() <= NUMERIC_DEN_TOL {
            return Err(Error::NumericDenominatorZero);
        }
        Ok(self.num.eval(env)? / d)
    }
}

impl PartialEq for RationalExp {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul_ref(&other.den) == other.num.mul_ref(&self.den)
    }
}

impl fmt::Debug for RationalExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == ExpScalar::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

impl From<ExpScalar> for RationalExp {
    fn from(x: ExpScalar) -> Self {
        RationalExp::from_scalar(x)
    }
}

impl Ring for RationalExp {
    fn zero() -> Self {
        RationalExp::from_scalar(ExpScalar::zero())
    }
    fn one() -> Self {
        RationalExp::from_scalar(ExpScalar::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RationalExp { num: self.num.add_ref(&other.num), den: self.den.clone() };
        }
        Self::fold(self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den)), self.den.mul_ref(&other.den))
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn neg_ref(&self) -> Self {
        RationalExp { num: self.num.neg_ref(), den: self.den.clone() }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero();
        }
        Self::fold(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp_scalar::{Cyc, LinForm, ParamSymbol, Sign};

    fn e(a: u16, b: u16, s: Sign) -> ExpScalar {
        ExpScalar::exp(LinForm::symbol(ParamSymbol::new(a, b, s)))
    }

    #[test]
    fn cross_multiplication_equality() {
        let x = e(1, 1, Sign::Plus).sub_ref(&ExpScalar::lambda());
        let y = e(1, 2, Sign::Plus).add_ref(&ExpScalar::one());
        let a = RationalExp::new(y.clone(), x.clone()).unwrap();
        let b = RationalExp::new(y.mul_ref(&y), x.mul_ref(&y)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, RationalExp::new(x.clone(), y.clone()).unwrap());
    }

    #[test]
    fn monomial_denominator_folds() {
        let m = e(2, 1, Sign::Minus).scale(&Cyc::from_int(3));
        let r = RationalExp::new(ExpScalar::one(), m.clone()).unwrap();
        assert_eq!(r.den(), &ExpScalar::one());
        assert_eq!(r.num().mul_ref(&m), ExpScalar::one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(RationalExp::new(ExpScalar::one(), ExpScalar::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn sum_of_fractions() {
        let x = e(1, 1, Sign::Plus).sub_ref(&ExpScalar::lambda());
        let y = e(1, 1, Sign::Minus).sub_ref(&ExpScalar::lambda());
        let s = RationalExp::new(ExpScalar::one(), x.clone()).unwrap().add_ref(&RationalExp::new(ExpScalar::one(), y.clone()).unwrap());
        let expect = RationalExp::new(x.add_ref(&y), x.mul_ref(&y)).unwrap();
        assert_eq!(s, expect);
    }
}
