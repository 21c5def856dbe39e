//! The field `F_{q^f}` as `F_q[x]/(F)` for the lexicographically least monic
//! irreducible `F` of degree `f`. Only what the non-split Gauss sum needs.

use crate::error::{Error, Result};
use crate::residue::{distinct_prime_factors, is_prime, mul_mod, pow_mod};

type Poly = Vec<u64>;

/// Remainder of `a` by the monic polynomial `m` over `F_q`.
fn poly_rem(a: &[u64], m: &[u64], q: u64) -> Poly {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > d {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - d;
            for (k, &c) in m[..d].iter().enumerate() {
                let idx = shift + k;
                r[idx] = (r[idx] + q - mul_mod(lead, c, q)) % q;
            }
        }
    }
    r.resize(d, 0);
    r
}

/// Monic polynomial of degree `deg` whose low coefficients are the base-`q`
/// digits of `index`.
fn monic_from_index(mut index: u64, deg: usize, q: u64) -> Poly {
    let mut out = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        out.push(index % q);
        index /= q;
    }
    out.push(1);
    out
}

/// True when no monic polynomial of degree `1..=deg/2` divides `f`.
fn is_irreducible(f: &[u64], q: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for idx in 0..q.pow(d as u32) {
            let g = monic_from_index(idx, d, q);
            if poly_rem(f, &g, q).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionField {
    q: u64,
    degree: usize,
    modulus: Poly,
    /// `Tr(x^k)` for the basis `1, x, ..., x^{f-1}`.
    basis_traces: Vec<u64>,
}

/// An element as `f` coefficients in `F_q`.
pub type Element = Vec<u64>;

impl ExtensionField {
    /// Largest field order accepted; elements are enumerated one by one.
    pub const MAX_ORDER: u64 = 50_000_000;

    pub fn new(q: u64, degree: usize) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if degree == 0 {
            return Err(Error::domain("extension degree must be positive"));
        }
        let order = (q as u128).checked_pow(degree as u32).filter(|&m| m <= Self::MAX_ORDER as u128);
        if order.is_none() {
            return Err(Error::domain(format!("F_{{{q}^{degree}}} is too large to enumerate")));
        }
        let modulus = (0..q.pow(degree as u32))
            .map(|idx| monic_from_index(idx, degree, q))
            .find(|f| is_irreducible(f, q))
            .ok_or_else(|| Error::invariant(format!("no irreducible polynomial of degree {degree} over F_{q}")))?;
        let mut field = ExtensionField { q, degree, modulus, basis_traces: Vec::new() };
        let mut basis_traces = Vec::with_capacity(degree);
        for k in 0..degree {
            let mut e = vec![0u64; degree];
            e[k] = 1;
            basis_traces.push(field.trace_direct(&e)?);
        }
        field.basis_traces = basis_traces;
        Ok(field)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements, `q^f`.
    pub fn order(&self) -> u64 {
        self.q.pow(self.degree as u32)
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn one(&self) -> Element {
        let mut e = vec![0u64; self.degree];
        e[0] = 1;
        e
    }

    /// The element whose coordinates are the base-`q` digits of `index`.
    pub fn element(&self, index: u64) -> Element {
        let mut e = monic_from_index(index, self.degree, self.q);
        e.pop();
        e
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Element {
        let q = self.q;
        let mut prod = vec![0u64; 2 * self.degree - 1];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, q)) % q;
            }
        }
        poly_rem(&prod, &self.modulus, q)
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Element {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn trace_direct(&self, a: &[u64]) -> Result<u64> {
        let q = self.q;
        let mut sum = vec![0u64; self.degree];
        let mut frob = a.to_vec();
        for _ in 0..self.degree {
            for (s, c) in sum.iter_mut().zip(&frob) {
                *s = (*s + c) % q;
            }
            frob = self.pow(&frob, q);
        }
        if sum[1..].iter().any(|&c| c != 0) {
            return Err(Error::invariant(format!("trace {sum:?} is not in the prime field")));
        }
        Ok(sum[0])
    }

    /// `Tr(a) = a + a^q + ... + a^{q^{f-1}}`, using linearity over the basis.
    pub fn trace(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.basis_traces)
            .fold(0, |acc, (&c, &t)| (acc + mul_mod(c, t, self.q)) % self.q)
    }

    /// First element, in index order, of multiplicative order `q^f - 1`.
    pub fn generator(&self) -> Result<Element> {
        let n = self.order() - 1;
        let factors = distinct_prime_factors(n);
        let one = self.one();
        (1..self.order())
            .map(|idx| self.element(idx))
            .find(|g| factors.iter().all(|&l| self.pow(g, n / l) != one))
            .ok_or_else(|| Error::invariant("no multiplicative generator found"))
    }
}

/// Least `f >= 1` with `q^f ≡ 1 (mod p)`.
pub fn residue_degree(q: u64, p: u64) -> u64 {
    let mut f = 1;
    let mut x = q % p;
    while x != 1 {
        x = mul_mod(x, q, p);
        f += 1;
    }
    debug_assert_eq!(pow_mod(q, f, p), 1);
    f
}
