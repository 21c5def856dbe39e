//! Embeddings `Z[ζ_p] → Z_q` for a prime `q ≡ 1 (mod p)`, truncated at `q^K`.
//!
//! Each of the `p - 1` primes of `Z[ζ_p]` above `q` is `(q, ζ_p - w^t)` for a
//! fixed `w` of order `p` mod `q`. Sending `ζ_p` to the Teichmüller lift of
//! `w^t` realizes the completion at that prime, so the `q`-adic valuation of
//! the image is the exponent of the prime in the element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::residue::pow_mod;

/// The root of `X^p - 1` in `Z/q^K` congruent to `w` mod `q`, by Newton
/// iteration with doubling precision.
pub fn teichmuller_lift(p: u64, q: u64, w: u64, precision: u32) -> Result<BigInt> {
    if precision == 0 {
        return Err(Error::domain("precision must be at least 1"));
    }
    let w = w % q;
    if pow_mod(w, p, q) != 1 || w == 1 {
        return Err(Error::domain(format!("{w} does not have order {p} modulo {q}")));
    }
    let qb = BigInt::from(q);
    let pb = BigInt::from(p);
    let mut x = BigInt::from(w);
    let mut prec = 1u32;
    while prec < precision {
        prec = (2 * prec).min(precision);
        let m = qb.pow(prec);
        let fx = (x.modpow(&pb, &m) - 1u32).mod_floor(&m);
        let dfx = (&pb * x.modpow(&(&pb - 1u32), &m)).mod_floor(&m);
        let inv = dfx
            .modinv(&m)
            .ok_or_else(|| Error::invariant("Newton derivative is not a unit"))?;
        x = (&x - fx * inv).mod_floor(&m);
    }
    let m = qb.pow(precision);
    if !x.modpow(&pb, &m).is_one() || x.mod_floor(&qb) != BigInt::from(w) {
        return Err(Error::invariant(format!("Hensel lift of {w} did not converge mod {q}^{precision}")));
    }
    Ok(x)
}

/// The `p - 1` lifts of `w^t`, `t = 1..p-1`, modulo `q^K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QadicEmbedding {
    p: u64,
    q: u64,
    precision: u32,
    modulus: BigInt,
    roots: Vec<BigInt>,
}

impl QadicEmbedding {
    pub fn new(p: u64, q: u64, w: u64, precision: u32) -> Result<Self> {
        let roots = (1..p)
            .map(|t| teichmuller_lift(p, q, pow_mod(w, t, q), precision))
            .collect::<Result<Vec<_>>>()?;
        Ok(QadicEmbedding { p, q, precision, modulus: BigInt::from(q).pow(precision), roots })
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Lift of `w^t`, `1 <= t <= p - 1`.
    pub fn root(&self, t: u64) -> &BigInt {
        &self.roots[(t - 1) as usize]
    }
}

/// `v_q` of the image of `a` under `ζ_p ↦ lift(w^t)`.
pub fn valuation_at_split_prime(a: &CyclotomicInt, emb: &QadicEmbedding, t: u64) -> Result<u32> {
    if a.is_zero() {
        return Err(Error::domain("valuation of zero"));
    }
    if t == 0 || t >= emb.p {
        return Err(Error::domain(format!("embedding index {t} outside 1..{}", emb.p)));
    }
    let mut image = a.eval_mod(emb.root(t), &emb.modulus);
    if image.is_zero() {
        return Err(Error::PrecisionExhausted { cap: emb.precision });
    }
    let qb = BigInt::from(emb.q);
    let mut n = 0;
    loop {
        let (quot, rem) = image.div_rem(&qb);
        if !rem.is_zero() {
            return Ok(n);
        }
        image = quot;
        n += 1;
    }
}

/// Valuations of `a` at all `p - 1` embeddings, starting at precision `start`
/// and doubling up to `cap` whenever an image vanishes. Returns the valuations
/// (index `t - 1`) and the precision that resolved them.
pub fn split_valuations(a: &CyclotomicInt, q: u64, w: u64, start: u32, cap: u32) -> Result<(Vec<u32>, u32)> {
    let p = a.p();
    let mut k = start.max(1).min(cap.max(1));
    loop {
        let emb = QadicEmbedding::new(p, q, w, k)?;
        match (1..p).map(|t| valuation_at_split_prime(a, &emb, t)).collect::<Result<Vec<_>>>() {
            Ok(vals) => return Ok((vals, k)),
            Err(Error::PrecisionExhausted { .. }) if k < cap => k = (2 * k).min(cap),
            Err(Error::PrecisionExhausted { .. }) => return Err(Error::PrecisionExhausted { cap }),
            Err(e) => return Err(e),
        }
    }
}
