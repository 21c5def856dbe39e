//! Exact arithmetic in `Z[ζ_p]` and `Z[ζ_p, ζ_q]`.
//!
//! Elements are stored in the power basis `ζ_p^0, ..., ζ_p^{p-2}` (and the
//! same in `ζ_q`), which is unique. Every operation first works in the lift
//! `Z[x]/(x^p - 1)`, where Galois maps are exponent permutations, and then
//! canonicalizes with `ζ^{p-1} = -(1 + ζ + ... + ζ^{p-2})`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `Σ coeffs[i] ζ_p^i`, `i = 0..p-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(p: u64) -> Self {
        assert!(p >= 2, "cyclotomic order must be at least 2");
        CyclotomicInt { p, coeffs: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn from_integer(p: u64, n: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = n.into();
        out
    }

    pub fn one(p: u64) -> Self {
        Self::from_integer(p, 1)
    }

    /// `ζ_p^e` for any integer exponent.
    pub fn zeta_power(p: u64, e: i64) -> Self {
        let mut lift = vec![BigInt::zero(); p as usize];
        lift[e.rem_euclid(p as i64) as usize] = BigInt::one();
        Self::from_lift(p, lift)
    }

    /// `ζ_p - 1`, the generator of the prime above `p`.
    pub fn lambda(p: u64) -> Self {
        &Self::zeta_power(p, 1) - &Self::one(p)
    }

    /// Power-basis coordinates; the vector must have length `p - 1`.
    pub fn from_coeffs(p: u64, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len() as u64, p - 1, "expected {} coordinates", p - 1);
        CyclotomicInt { p, coeffs }
    }

    /// Canonical form of `Σ lift[e] ζ_p^e`, exponents taken mod `p`.
    pub fn from_lift(p: u64, lift: Vec<BigInt>) -> Self {
        let n = p as usize;
        let mut folded = if lift.len() == n {
            lift
        } else {
            let mut f = vec![BigInt::zero(); n];
            for (e, c) in lift.into_iter().enumerate() {
                f[e % n] += c;
            }
            f
        };
        let top = folded.pop().expect("p >= 2");
        if !top.is_zero() {
            for c in folded.iter_mut() {
                *c -= &top;
            }
        }
        CyclotomicInt { p, coeffs: folded }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Image under `ζ_p ↦ ζ_p^t`.
    pub fn galois(&self, t: u64) -> Result<Self> {
        let p = self.p;
        if t.is_multiple_of(p) {
            return Err(Error::domain(format!("galois exponent {t} is 0 mod {p}")));
        }
        let mut lift = vec![BigInt::zero(); p as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            lift[((i as u64 * t) % p) as usize] = c.clone();
        }
        Ok(Self::from_lift(p, lift))
    }

    /// Complex conjugation, `ζ_p ↦ ζ_p^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(self.p - 1).expect("p - 1 is a unit mod p")
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product of all `p - 1` conjugates.
    pub fn norm(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::domain("norm of zero"));
        }
        let mut acc = self.clone();
        for t in 2..self.p {
            acc = &acc * &self.galois(t)?;
        }
        acc.as_integer()
            .cloned()
            .ok_or_else(|| Error::invariant(format!("norm did not reduce to an integer: {acc}")))
    }

    /// Image in `Z[ζ_p]/π = F_p` (`ζ_p ↦ 1`).
    pub fn residue_mod_pi(&self) -> u64 {
        let s: BigInt = self.coeffs.iter().sum();
        s.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced")
    }

    /// `self / (ζ_p - 1)` when the quotient is integral.
    pub fn div_lambda(&self) -> Option<Self> {
        if self.residue_mod_pi() != 0 {
            return None;
        }
        // Subtract s·Φ_p so the lifted polynomial vanishes at 1, then divide by
        // (x - 1) synthetically; the quotient has degree at most p - 2.
        let p = self.p as usize;
        let s: BigInt = self.coeffs.iter().sum::<BigInt>() / BigInt::from(self.p);
        let mut poly: Vec<BigInt> = self.coeffs.iter().map(|c| c - &s).collect();
        poly.push(-s);
        let mut quotient = vec![BigInt::zero(); p - 1];
        let mut carry = BigInt::zero();
        for e in (1..p).rev() {
            carry += &poly[e];
            quotient[e - 1] = carry.clone();
        }
        debug_assert!((carry + &poly[0]).is_zero());
        Some(CyclotomicInt { p: self.p, coeffs: quotient })
    }

    /// Exponent of the prime `π = (ζ_p - 1)` in this element, up to `cap`.
    pub fn pi_valuation(&self, cap: u32) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut cur = self.clone();
        let mut n = 0;
        while n < cap {
            match cur.div_lambda() {
                Some(next) => {
                    cur = next;
                    n += 1;
                }
                None => break,
            }
        }
        Some(n)
    }

    /// `Σ coeffs[i] point^i mod modulus`, in `0..modulus`.
    pub fn eval_mod(&self, point: &BigInt, modulus: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * point + c).mod_floor(modulus);
        }
        acc
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z^{i}")?,
                _ => write!(f, "{a}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, rhs.p);
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, rhs.p);
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        CyclotomicInt { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, rhs.p);
        let n = self.p as usize;
        let mut lift = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                lift[(i + j) % n] += a * b;
            }
        }
        CyclotomicInt::from_lift(self.p, lift)
    }
}

/// `Σ coeffs[i][j] ζ_p^i ζ_q^j` with `i < p - 1`, `j < q - 1`, row-major in `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BicyclotomicInt {
    p: u64,
    q: u64,
    coeffs: Vec<BigInt>,
}

impl BicyclotomicInt {
    pub fn zero(p: u64, q: u64) -> Self {
        assert!(p >= 2 && q >= 2 && p != q, "need two distinct primes");
        BicyclotomicInt { p, q, coeffs: vec![BigInt::zero(); ((p - 1) * (q - 1)) as usize] }
    }

    pub fn one(p: u64, q: u64) -> Self {
        let mut out = Self::zero(p, q);
        out.coeffs[0] = BigInt::one();
        out
    }

    /// `ζ_p^a ζ_q^b`.
    pub fn monomial(p: u64, q: u64, a: i64, b: i64) -> Self {
        let mut lift = vec![BigInt::zero(); (p * q) as usize];
        let i = a.rem_euclid(p as i64) as usize;
        let j = b.rem_euclid(q as i64) as usize;
        lift[i * q as usize + j] = BigInt::one();
        Self::from_lift(p, q, lift)
    }

    /// Embeds an element of `Z[ζ_p]`.
    pub fn from_cyclotomic(a: &CyclotomicInt, q: u64) -> Self {
        let mut out = Self::zero(a.p(), q);
        let w = (q - 1) as usize;
        for (i, c) in a.coeffs().iter().enumerate() {
            out.coeffs[i * w] = c.clone();
        }
        out
    }

    /// Canonical form of `Σ lift[i*q + j] ζ_p^i ζ_q^j` over the full `p × q` grid.
    pub fn from_lift(p: u64, q: u64, mut lift: Vec<BigInt>) -> Self {
        let (pn, qn) = (p as usize, q as usize);
        assert_eq!(lift.len(), pn * qn);
        // ζ_p^{p-1} → -(Σ_{i<p-1} ζ_p^i), one column j at a time.
        for j in 0..qn {
            let top = std::mem::take(&mut lift[(pn - 1) * qn + j]);
            if !top.is_zero() {
                for i in 0..pn - 1 {
                    lift[i * qn + j] -= &top;
                }
            }
        }
        let mut coeffs = Vec::with_capacity((pn - 1) * (qn - 1));
        for i in 0..pn - 1 {
            let row = &mut lift[i * qn..(i + 1) * qn];
            let top = std::mem::take(&mut row[qn - 1]);
            for c in row[..qn - 1].iter_mut() {
                let mut c = std::mem::take(c);
                if !top.is_zero() {
                    c -= &top;
                }
                coeffs.push(c);
            }
        }
        BicyclotomicInt { p, q, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Coordinate of `ζ_p^i ζ_q^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[i * (self.q - 1) as usize + j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn lift(&self) -> Vec<BigInt> {
        let (pn, qn) = (self.p as usize, self.q as usize);
        let mut lift = vec![BigInt::zero(); pn * qn];
        for i in 0..pn - 1 {
            for j in 0..qn - 1 {
                lift[i * qn + j] = self.coeff(i, j).clone();
            }
        }
        lift
    }

    /// Applies `ζ_p ↦ ζ_p^s`, `ζ_q ↦ ζ_q^t`.
    pub fn automorphism(&self, s: u64, t: u64) -> Result<Self> {
        let (p, q) = (self.p, self.q);
        if s.is_multiple_of(p) || t.is_multiple_of(q) {
            return Err(Error::domain(format!("({s}, {t}) is not a unit pair mod ({p}, {q})")));
        }
        let qn = q as usize;
        let mut lift = vec![BigInt::zero(); (p * q) as usize];
        for i in 0..(p - 1) as usize {
            for j in 0..qn - 1 {
                let c = self.coeff(i, j);
                if !c.is_zero() {
                    let ii = (i as u64 * s % p) as usize;
                    let jj = (j as u64 * t % q) as usize;
                    lift[ii * qn + jj] = c.clone();
                }
            }
        }
        Ok(Self::from_lift(p, q, lift))
    }

    /// `ζ_q ↦ ζ_q^u`, fixing `ζ_p`.
    pub fn tau(&self, u: u64) -> Result<Self> {
        self.automorphism(1, u)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.automorphism(self.p - 1, self.q - 1).expect("-1 is a unit")
    }

    /// `ζ_p^r · self`.
    pub fn mul_zeta_p(&self, r: u64) -> Self {
        let (pn, qn) = (self.p as usize, self.q as usize);
        let mut lift = self.lift();
        let shift = (r % self.p) as usize;
        lift.rotate_right(shift * qn);
        debug_assert_eq!(lift.len(), pn * qn);
        Self::from_lift(self.p, self.q, lift)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p, self.q);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[c_0, ..., c_{q-2}]` with `self = Σ c_j ζ_q^j`, `c_j ∈ Z[ζ_p]`.
    pub fn zeta_q_components(&self) -> Vec<CyclotomicInt> {
        let w = (self.q - 1) as usize;
        (0..w)
            .map(|j| {
                let col = (0..(self.p - 1) as usize).map(|i| self.coeff(i, j).clone()).collect();
                CyclotomicInt::from_coeffs(self.p, col)
            })
            .collect()
    }

    /// Coordinates over the basis `ζ_q^1, ..., ζ_q^{q-1}`: entry `j - 1` is the
    /// coefficient of `ζ_q^j`. Uses `1 = -(ζ_q + ... + ζ_q^{q-1})`.
    pub fn normal_components(&self) -> Vec<CyclotomicInt> {
        let power = self.zeta_q_components();
        let c0 = &power[0];
        let mut out: Vec<CyclotomicInt> = power[1..].iter().map(|c| c - c0).collect();
        out.push(-c0);
        out
    }

    /// The element of `Z[ζ_p]` this equals, if it has no `ζ_q` dependence.
    pub fn project_to_zeta_p(&self) -> Option<CyclotomicInt> {
        let components = self.zeta_q_components();
        if components[1..].iter().all(CyclotomicInt::is_zero) {
            components.into_iter().next()
        } else {
            None
        }
    }

    /// Image under `ζ_p ↦ 1` followed by reduction mod `p`: coordinates in
    /// `F_p[ζ_q]`, i.e. the class of `self` modulo `(ζ_p - 1)`.
    pub fn residue_mod_pi(&self) -> Vec<u64> {
        let pb = BigInt::from(self.p);
        (0..(self.q - 1) as usize)
            .map(|j| {
                let s: BigInt = (0..(self.p - 1) as usize).map(|i| self.coeff(i, j)).sum();
                s.mod_floor(&pb).to_u64().expect("reduced")
            })
            .collect()
    }
}

impl Add for &BicyclotomicInt {
    type Output = BicyclotomicInt;

    fn add(self, rhs: &BicyclotomicInt) -> BicyclotomicInt {
        assert_eq!((self.p, self.q), (rhs.p, rhs.q));
        BicyclotomicInt {
            p: self.p,
            q: self.q,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &BicyclotomicInt {
    type Output = BicyclotomicInt;

    fn sub(self, rhs: &BicyclotomicInt) -> BicyclotomicInt {
        assert_eq!((self.p, self.q), (rhs.p, rhs.q));
        BicyclotomicInt {
            p: self.p,
            q: self.q,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &BicyclotomicInt {
    type Output = BicyclotomicInt;

    fn mul(self, rhs: &BicyclotomicInt) -> BicyclotomicInt {
        assert_eq!((self.p, self.q), (rhs.p, rhs.q));
        let (pn, qn) = (self.p as usize, self.q as usize);
        let w = qn - 1;
        let nonzero = |x: &BicyclotomicInt| -> Vec<(usize, usize, BigInt)> {
            x.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k / w, k % w, c.clone()))
                .collect()
        };
        let (a, b) = (nonzero(self), nonzero(rhs));
        let mut lift = vec![BigInt::zero(); pn * qn];
        for (i1, j1, c1) in &a {
            for (i2, j2, c2) in &b {
                let i = (i1 + i2) % pn;
                let j = (j1 + j2) % qn;
                lift[i * qn + j] += c1 * c2;
            }
        }
        BicyclotomicInt::from_lift(self.p, self.q, lift)
    }
}
