//! Exact arithmetic in the cyclotomic fields Q(ζ_L).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(L)-1}` modulo the
//! L-th cyclotomic polynomial. Elements of different orders are combined by
//! lifting both into Q(ζ_lcm). The order is never lowered automatically, so
//! equality is decided after lifting to a common order.

use crate::ring::{q, Ring};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn rz() -> BigRational {
    <BigRational as Zero>::zero()
}
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Reduction table for order `n`: row `k` holds `ζ_n^k mod Φ_n` as integer
/// coordinates in the power basis, for `k = 0..n`.
struct Table {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn table(n: u32) -> Arc<Table> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Table>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(build_table(n));
    cache.lock().unwrap().insert(n, t.clone());
    t
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1);
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd] / lead;
        quot[k] = c;
        for (i, &dv) in den.iter().enumerate() {
            rem[k + i] -= c * dv;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

fn build_table(n: u32) -> Table {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic Φ_n
        let mut next = vec![0i64; phi + 1];
        next[1..(phi + 1)].copy_from_slice(&cur[..phi]);
        let top = next[phi];
        if top != 0 {
            for i in 0..phi {
                next[i] -= top * phi_poly[i];
            }
        }
        next.truncate(phi);
        cur = next;
    }
    Table { phi, powers }
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Element of Q(ζ_order).
#[derive(Clone)]
pub struct Cyc {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyc {
    pub fn from_rational(x: BigRational) -> Self {
        Cyc { order: 1, coeffs: vec![x] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(q(n, 1))
    }

    /// `ζ_order^k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        let t = table(order);
        let idx = k.rem_euclid(order as i64) as usize;
        let coeffs = t.powers[idx].iter().map(|&c| q(c, 1)).collect();
        Cyc { order, coeffs }
    }

    /// Exact √2 = ζ_8 + ζ_8^{-1}.
    pub fn sqrt2() -> Self {
        Self::zeta_pow(8, 1).add_ref(&Self::zeta_pow(8, -1))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Same value, at order 1 when rational.
    pub fn normalized(&self) -> Self {
        match self.as_rational() {
            Some(r) if self.order != 1 => Cyc::from_rational(r),
            _ => self.clone(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Cyc { order: self.order, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Re-express in Q(ζ_target); `target` must be a multiple of the order.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.order), "cannot lift order {} into {}", self.order, target);
        let t = table(target);
        let step = (target / self.order) as usize;
        let mut out = vec![rz(); t.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let row = &t.powers[(k * step) % target as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * BigRational::from_integer(r.into());
                }
            }
        }
        Cyc { order: target, coeffs: out }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l))
    }

    /// Galois automorphism ζ ↦ ζ^j (j coprime to the order).
    pub fn galois(&self, j: u32) -> Self {
        let n = self.order;
        let t = table(n);
        let mut out = vec![rz(); t.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let row = &t.powers[(k * j as usize) % n as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * BigRational::from_integer(r.into());
                }
            }
        }
        Cyc { order: n, coeffs: out }
    }

    /// Multiplicative inverse via the field norm; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Cyc {
                order: self.order,
                coeffs: {
                    let mut v = vec![rz(); self.coeffs.len()];
                    v[0] = r.recip();
                    v
                },
            });
        }
        let n = self.order;
        let mut conj_prod = Cyc::one().lift(n);
        for j in 2..n {
            if j.gcd(&n) == 1 {
                conj_prod = conj_prod.mul_ref(&self.galois(j));
            }
        }
        let norm = self.mul_ref(&conj_prod);
        let norm = norm.as_rational().expect("field norm is rational");
        Some(conj_prod.scale(&norm.recip()))
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            acc += Complex64::from_polar(crate::ring::rational_to_f64(c), ang);
        }
        acc
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyc {
    /// Rationals print plainly; other elements as `a + b*zeta(L)^k + …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                write!(f, "zeta({})^{}", self.order, k)?;
            }
        }
        Ok(())
    }
}

impl Ring for Cyc {
    fn zero() -> Self {
        Cyc::from_int(0)
    }
    fn one() -> Self {
        Cyc::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn add_ref(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Cyc { order: a.order, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn neg_ref(&self) -> Self {
        Cyc { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Cyc::from_rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        let (a, b) = self.common(other);
        let n = a.order;
        let t = table(n);
        let mut out = vec![rz(); t.phi];
        for (i, x) in a.coeffs.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if Zero::is_zero(y) {
                    continue;
                }
                let prod = x * y;
                let row = &t.powers[(i + j) % n as usize];
                for (o, &r) in out.iter_mut().zip(row) {
                    if r != 0 {
                        *o += &prod * BigRational::from_integer(r.into());
                    }
                }
            }
        }
        Cyc { order: n, coeffs: out }
    }
}
