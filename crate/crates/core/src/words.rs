//! Basis words of `(C^N)^{⊗r}`, big-endian: the leftmost letter is the
//! first tensor factor.

use crate::error::{Error, Result};

/// `N^r`, or `OrderOverflow` if it exceeds `cap`.
pub fn dimension(n: usize, r: usize, cap: u128) -> Result<usize> {
    let mut d: u128 = 1;
    for _ in 0..r {
        d = d.saturating_mul(n as u128);
    }
    if d > cap {
        return Err(Error::OrderOverflow { dim: d, cap });
    }
    Ok(d as usize)
}

/// Letters `1..=N` of word `index`.
pub fn letters(index: usize, n: usize, r: usize) -> Vec<usize> {
    let mut out = vec![0; r];
    let mut x = index;
    for k in (0..r).rev() {
        out[k] = x % n + 1;
        x /= n;
    }
    out
}

pub fn index_of(letters: &[usize], n: usize) -> usize {
    letters.iter().fold(0, |acc, &l| acc * n + (l - 1))
}

/// `ī = N + 1 - i`.
pub fn bar(i: usize, n: usize) -> usize {
    n + 1 - i
}

/// Renders a word, writing barred letters as `1'`, `2'`, ….
pub fn render(letters: &[usize], n: usize) -> String {
    let p = n.div_ceil(2);
    let parts: Vec<String> = letters.iter().map(|&l| if n % 2 == 1 && l > p { format!("{}'", bar(l, n)) } else { l.to_string() }).collect();
    if n < 10 {
        parts.concat()
    } else {
        parts.join(",")
    }
}

/// Number of occurrences of the middle letter `p`.
pub fn middle_count(index: usize, n: usize, r: usize) -> usize {
    let p = n.div_ceil(2);
    letters(index, n, r).iter().filter(|&&l| l == p).count()
}

/// Permutation moving the last site to the front: `w_1…w_r ↦ w_r w_1…w_{r-1}`.
pub fn rotate_right(n: usize, r: usize) -> Vec<usize> {
    let dim = n.pow(r as u32);
    (0..dim)
        .map(|i| {
            let mut l = letters(i, n, r);
            l.rotate_right(1);
            index_of(&l, n)
        })
        .collect()
}

/// Number of necklaces (rotation classes) of length `r` over `N` letters.
pub fn necklace_count(n: usize, r: usize) -> usize {
    let mut total = 0usize;
    for d in 1..=r {
        if r.is_multiple_of(d) {
            total += euler_totient(d) * n.pow((r / d) as u32);
        }
    }
    total / r
}

pub fn euler_totient(n: usize) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}
