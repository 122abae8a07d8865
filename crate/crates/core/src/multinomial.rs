//! Base-p digits, Lucas' criterion and the witness exponent used to rule out
//! non-monomial linear automorphisms.

use crate::error::{Error, Result};

/// Digits of a non-negative integer in base `p`, least significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicExpansion {
    base: u64,
    digits: Vec<u64>,
}

impl PAdicExpansion {
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Digit at position `i`, zero beyond the leading digit.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.base + d)
    }
}

pub fn p_adic_digits(mut n: u64, p: u64) -> PAdicExpansion {
    assert!(p >= 2, "base must be at least 2");
    let mut digits = Vec::new();
    loop {
        digits.push(n % p);
        n /= p;
        if n == 0 {
            break;
        }
    }
    PAdicExpansion { base: p, digits }
}

/// Lucas: `C(N, r) ≢ 0 (mod p)` iff every digit of `r` is at most the
/// corresponding digit of `N`.
pub fn binom_nonzero_mod_p(n: u64, r: u64, p: u64) -> Result<bool> {
    if r > n {
        return Err(Error::OutOfRange(format!("r = {r} exceeds N = {n}")));
    }
    let (dn, dr) = (p_adic_digits(n, p), p_adic_digits(r, p));
    Ok((0..dn.digits.len().max(dr.digits.len())).all(|i| dr.digit(i) <= dn.digit(i)))
}

/// Multinomial `C(ν_1 + ... + ν_t; ν_1, ..., ν_t) ≢ 0 (mod p)` iff adding the
/// parts in base `p` produces no carry.
pub fn multinomial_nonzero_mod_p(parts: &[u64], p: u64) -> bool {
    let expansions: Vec<PAdicExpansion> = parts.iter().map(|&v| p_adic_digits(v, p)).collect();
    let width = expansions.iter().map(|e| e.digits.len()).max().unwrap_or(0);
    (0..width).all(|i| expansions.iter().map(|e| e.digit(i)).sum::<u64>() < p)
}

/// `C(N, r) mod p` by Pascal's rule with reduction at every step.
/// The row-by-row table costs about `N * r / 2` cells, bounded by `budget`.
pub fn binom_mod_p_oracle(n: u64, r: u64, p: u64, budget: u64) -> Result<u64> {
    if r > n {
        return Err(Error::OutOfRange(format!("r = {r} exceeds N = {n}")));
    }
    let cells = (n as u128 + 1) * (r as u128 + 1);
    if cells > budget as u128 {
        return Err(Error::BudgetExceeded { needed: cells, cap: budget as u128 });
    }
    let r = r as usize;
    let mut row = vec![0u64; r + 1];
    row[0] = 1 % p;
    for i in 1..=n as usize {
        for j in (1..=r.min(i)).rev() {
            row[j] = (row[j] + row[j - 1]) % p;
        }
    }
    Ok(row[r])
}

pub fn is_power_of_p(mut x: u64, p: u64) -> Result<bool> {
    if x < 1 {
        return Err(Error::OutOfRange("x must be at least 1".into()));
    }
    while x.is_multiple_of(p) {
        x /= p;
    }
    Ok(x == 1)
}

/// Smallest `u` in `1..=k-2` with `C(k-1, u) ≢ 0 (mod p)`.
pub fn lucas_witness(k: u64, p: u64) -> Result<Option<u64>> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("k = {k} must be at least 2")));
    }
    if crate::ff::gcd(k, p) != 1 {
        return Err(Error::NotCoprime { k, p });
    }
    for u in 1..k.saturating_sub(1) {
        if binom_nonzero_mod_p(k - 1, u, p)? {
            return Ok(Some(u));
        }
    }
    Ok(None)
}
