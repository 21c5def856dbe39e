//! Bernoulli numbers modulo `p` and the classical irregular pairs.
//!
//! Uses `Σ_{j=0}^{n} C(n+1, j) B_j = 0` entirely in `F_p`, so `B_1 = -1/2`.
//! For `n <= p - 3` every inverted quantity `n + 1` is a unit mod `p`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::residue::{is_prime, mod_inverse, mul_mod};

/// `values[n] = B_n mod p` for `n = 0..=p-3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTableModP {
    p: u64,
    values: Vec<u64>,
}

impl BernoulliTableModP {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, n: usize) -> u64 {
        self.values[n]
    }
}

/// An index `a2` with `B_{a2} ≡ 0 (mod p)`, together with the matching odd
/// exponent `k = p - a2` and `m = (k - 1) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IrregularPair {
    pub p: u64,
    pub a2: u64,
    pub k: u64,
    pub m: u64,
}

impl IrregularPair {
    pub fn new(p: u64, a2: u64) -> Result<Self> {
        if !a2.is_multiple_of(2) || a2 < 2 || a2 + 3 > p {
            return Err(Error::domain(format!("a2 = {a2} is not an even index in 2..={}", p.saturating_sub(3))));
        }
        let k = p - a2;
        Ok(IrregularPair { p, a2, k, m: (k - 1) / 2 })
    }
}

fn check_prime_at_least_five(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::domain(format!("p must be at least 5, got {p}")));
    }
    Ok(())
}

/// `B_0, ..., B_{p-3}` reduced mod `p`, in `O(p^2)`.
pub fn bernoulli_mod_p(p: u64) -> Result<BernoulliTableModP> {
    check_prime_at_least_five(p)?;
    let top = (p - 3) as usize;
    let mut values: Vec<u64> = Vec::with_capacity(top + 1);
    values.push(1);
    // Pascal row C(n+1, 0..=n+1) mod p, advanced one row per n.
    let mut row: Vec<u64> = vec![1, 1];
    for n in 1..=top {
        let mut next = vec![1u64; n + 2];
        for j in 1..=n {
            next[j] = (row[j - 1] + row[j]) % p;
        }
        row = next;
        let acc = (0..n).fold(0u64, |acc, j| (acc + mul_mod(row[j], values[j], p)) % p);
        let inv = mod_inverse((n + 1) as u64 % p, p)
            .ok_or_else(|| Error::invariant(format!("{} is not invertible mod {p}", n + 1)))?;
        values.push(mul_mod((p - acc) % p, inv, p));
    }
    Ok(BernoulliTableModP { p, values })
}

/// All `(p, a2)` with `a2` even, `2 <= a2 <= p - 3` and `B_{a2} ≡ 0 (mod p)`.
pub fn irregular_pairs_oracle(p: u64) -> Result<BTreeSet<IrregularPair>> {
    let table = bernoulli_mod_p(p)?;
    (2..=(p - 3) as usize)
        .step_by(2)
        .filter(|&n| table.get(n) == 0)
        .map(|n| IrregularPair::new(p, n as u64))
        .collect()
}

/// Number of irregular pairs for `p`.
pub fn index_of_irregularity(p: u64) -> Result<usize> {
    Ok(irregular_pairs_oracle(p)?.len())
}
