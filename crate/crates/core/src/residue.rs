//! Modular arithmetic on machine words, primality, primitive roots and the
//! reduced-power tables every other module indexes into.
//!
//! Residues are `u64` and products go through `u128`, so any modulus below
//! `2^64` is safe. The reduced power `v^n` is always taken in `1..=p-1`,
//! never `0..p-1`; for negative `n` it is the residue with
//! `v^n * v^-n = 1 (mod p)`.

use crate::error::{Error, Result};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Square-and-multiply without the modulus check. `m` must be at least 1.
pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// `base^exp mod modulus`, in `0..modulus`.
pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {modulus}")));
    }
    Ok(pow_mod(base, exp, modulus))
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin; the first twelve prime bases cover all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `lo <= p <= hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Distinct prime factors of `n` by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo the prime `p` (`a` not divisible by `p`).
pub fn multiplicative_order(a: u64, p: u64) -> u64 {
    let mut order = p - 1;
    for l in distinct_prime_factors(p - 1) {
        while order.is_multiple_of(l) && pow_mod(a, order / l, p) == 1 {
            order /= l;
        }
    }
    order
}

fn check_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 {
        return Err(Error::domain(format!("an odd prime is required, got {p}")));
    }
    Ok(())
}

/// Whether `v` generates `(Z/p)^*`, tested against each prime divisor of `p - 1`.
pub fn is_primitive_root(v: u64, p: u64) -> bool {
    !v.is_multiple_of(p)
        && distinct_prime_factors(p - 1)
            .into_iter()
            .all(|l| pow_mod(v, (p - 1) / l, p) != 1)
}

/// Least `v >= 2` of multiplicative order `p - 1`.
pub fn smallest_primitive_root(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let factors = distinct_prime_factors(p - 1);
    (2..p)
        .find(|&v| factors.iter().all(|&l| pow_mod(v, (p - 1) / l, p) != 1))
        .ok_or_else(|| Error::invariant(format!("no primitive root found for {p}")))
}

/// Every primitive root of `p` in `2..p`, ascending.
pub fn primitive_roots(p: u64) -> Result<Vec<u64>> {
    check_odd_prime(p)?;
    Ok((2..p).filter(|&v| is_primitive_root(v, p)).collect())
}

/// A prime together with a primitive root and its table of reduced powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeContext {
    p: u64,
    v: u64,
    pow_table: Vec<u64>,
}

impl PrimeContext {
    /// Context for `p` using its smallest primitive root.
    pub fn new(p: u64) -> Result<Self> {
        let v = smallest_primitive_root(p)?;
        Ok(Self::build(p, v))
    }

    /// Context for `p` using the given primitive root.
    pub fn with_root(p: u64, v: u64) -> Result<Self> {
        check_odd_prime(p)?;
        if !is_primitive_root(v, p) {
            return Err(Error::domain(format!("{v} is not a primitive root mod {p}")));
        }
        Ok(Self::build(p, v % p))
    }

    fn build(p: u64, v: u64) -> Self {
        let mut pow_table = Vec::with_capacity((p - 1) as usize);
        let mut x = 1u64;
        for _ in 0..p - 1 {
            pow_table.push(x);
            x = mul_mod(x, v, p);
        }
        PrimeContext { p, v, pow_table }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    /// `pow_table()[j] = v^j` for `j = 0..p-1`.
    pub fn pow_table(&self) -> &[u64] {
        &self.pow_table
    }

    /// `v^n` reduced into `1..=p-1`; negative `n` gives the inverse power.
    pub fn reduced_power(&self, n: i64) -> u64 {
        let idx = n.rem_euclid((self.p - 1) as i64) as usize;
        self.pow_table[idx]
    }

    /// Discrete logarithm base `v` of a nonzero residue, in `0..p-1`.
    pub fn log(&self, x: u64) -> Option<u64> {
        let x = x % self.p;
        if x == 0 {
            return None;
        }
        self.pow_table.iter().position(|&y| y == x).map(|i| i as u64)
    }

    /// Table mapping each residue `x` in `1..p` to its logarithm base `v`.
    pub fn log_table(&self) -> Vec<u64> {
        let mut logs = vec![0u64; self.p as usize];
        for (j, &y) in self.pow_table.iter().enumerate() {
            logs[y as usize] = j as u64;
        }
        logs
    }
}
