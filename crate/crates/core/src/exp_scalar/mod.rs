//! Exact scalars `Σ c·e^{μθ}` with cyclotomic `c` and rational linear `μ`.

pub mod cyclotomic;
pub mod linform;
pub mod rational_exp;
pub mod scalar;
pub mod text;

pub use cyclotomic::Cyc;
pub use linform::{LinForm, ParamKind, ParamSymbol, Sign, Symbol};
pub use rational_exp::RationalExp;
pub use scalar::{ExpScalar, Exponent, NumEnv};

use crate::error::Result;

/// Single-term constructor `c·e^{μθ}`.
pub fn exp_term(coeff: Cyc, mu: LinForm) -> ExpScalar {
    ExpScalar::exp_term(coeff, mu)
}

pub fn invert(x: &ExpScalar) -> Result<RationalExp> {
    x.invert()
}
