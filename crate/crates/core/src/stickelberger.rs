//! Elements of the integral group ring of the cyclic Galois group, the
//! Stickelberger element `P(σ) = Σ v^-i σ^i`, its product form `T(σ)`, and the
//! quotient `Q(σ) = P(σ)(σ - v) / p` whose integer coefficients drive the scan.
//!
//! `σ` has order `p - 1`, so a group-ring element is a dense vector of
//! `p - 1` integers and products reduce exponents modulo `p - 1`.

use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::residue::{mul_mod, PrimeContext};

/// `Σ coeffs[i] σ^i` with `σ^(p-1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    p: u64,
    coeffs: Vec<BigInt>,
}

impl GroupRingElem {
    pub fn zero(p: u64) -> Self {
        GroupRingElem { p, coeffs: vec![BigInt::zero(); (p - 1) as usize] }
    }

    /// Builds an element from coefficients of `σ^0, σ^1, ...`; exponents past
    /// `p - 2` wrap around.
    pub fn from_coeffs<T: Into<BigInt>>(p: u64, coeffs: impl IntoIterator<Item = T>) -> Self {
        let n = (p - 1) as usize;
        let mut out = Self::zero(p);
        for (i, c) in coeffs.into_iter().enumerate() {
            out.coeffs[i % n] += c.into();
        }
        out
    }

    /// `σ - c`.
    pub fn linear(p: u64, c: i64) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] -= c;
        out.coeffs[1 % (p - 1) as usize] += 1;
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Largest exponent with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GroupRingElem { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Exact division of every coefficient by `d`; fails if any is not a multiple.
    pub fn exact_div(&self, d: &BigInt) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::invariant(format!(
                    "coefficient of σ^{i} is {c}, not divisible by {d}"
                )));
            }
            coeffs.push(q);
        }
        Ok(GroupRingElem { p: self.p, coeffs })
    }

    /// Coefficients reduced into `0..m`.
    pub fn reduce_mod(&self, m: u64) -> Vec<u64> {
        let m = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("reduced below m"))
            .collect()
    }
}

impl Sub for &GroupRingElem {
    type Output = GroupRingElem;

    fn sub(self, rhs: &GroupRingElem) -> GroupRingElem {
        assert_eq!(self.p, rhs.p);
        GroupRingElem {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &GroupRingElem {
    type Output = GroupRingElem;

    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len();
        let mut out = GroupRingElem::zero(self.p);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out
    }
}

/// The integer coefficients `δ_1, ..., δ_{p-2}` of `Q(σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaVector {
    p: u64,
    v: u64,
    delta: Vec<i64>,
}

impl DeltaVector {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    /// `δ_i` for `1 <= i <= p - 2`.
    pub fn get(&self, i: usize) -> i64 {
        assert!(i >= 1 && i <= self.delta.len(), "δ index {i} out of range");
        self.delta[i - 1]
    }

    /// `[δ_1, ..., δ_{p-2}]`.
    pub fn as_slice(&self) -> &[i64] {
        &self.delta
    }

    pub fn sum(&self) -> i64 {
        self.delta.iter().sum()
    }

    /// `Q(x) = Σ_{i=1}^{p-2} δ_i x^i mod p`.
    pub fn evaluate(&self, x: u64) -> Result<u64> {
        Ok(mul_mod(self.evaluate_shifted(x)?, x % self.p, self.p))
    }

    /// `Σ_{i=1}^{p-2} δ_i x^(i-1) mod p`, the form used by the regularity criterion.
    pub fn evaluate_shifted(&self, x: u64) -> Result<u64> {
        let p = self.p;
        if x.is_multiple_of(p) {
            return Err(Error::domain(format!("evaluation point {x} is 0 mod {p}")));
        }
        let x = x % p;
        // Horner from δ_{p-2} down to δ_1.
        let mut acc = 0u64;
        for &d in self.delta.iter().rev() {
            let d = d.rem_euclid(p as i64) as u64;
            acc = (mul_mod(acc, x, p) + d) % p;
        }
        Ok(acc)
    }
}

/// `δ_i = (v^-(i-1) - v * v^-i) / p` with both powers reduced into `1..p`.
pub fn delta_coefficients(ctx: &PrimeContext) -> Result<DeltaVector> {
    let p = ctx.p() as i64;
    let v = ctx.v() as i64;
    let mut delta = Vec::with_capacity((p - 2) as usize);
    for i in 1..=p - 2 {
        let num = ctx.reduced_power(-(i - 1)) as i64 - v * ctx.reduced_power(-i) as i64;
        if num % p != 0 {
            return Err(Error::invariant(format!("p·δ_{i} = {num} is not a multiple of {p}")));
        }
        delta.push(num / p);
    }
    Ok(DeltaVector { p: ctx.p(), v: ctx.v(), delta })
}

/// The value `(v^-(p-2) - v) / p` the constant coefficient of `Q` would take.
pub fn implied_delta_zero(ctx: &PrimeContext) -> Result<i64> {
    let p = ctx.p() as i64;
    let num = ctx.reduced_power(-(p - 2)) as i64 - ctx.v() as i64;
    if num % p != 0 {
        return Err(Error::invariant(format!("p·δ_0 = {num} is not a multiple of {p}")));
    }
    Ok(num / p)
}

/// `P(σ) = Σ_{i=0}^{p-2} v^-i σ^i`.
pub fn p_of_sigma(ctx: &PrimeContext) -> GroupRingElem {
    let n = (ctx.p() - 1) as i64;
    GroupRingElem::from_coeffs(ctx.p(), (0..n).map(|i| ctx.reduced_power(-i)))
}

/// `T(σ) = v^-(p-2) ∏_{k=0, k≠1}^{p-2} (σ - v^k)`, expanded exactly.
pub fn t_of_sigma(ctx: &PrimeContext) -> GroupRingElem {
    let p = ctx.p();
    let mut acc = GroupRingElem::from_coeffs(p, [1]);
    for k in (0..(p - 1) as i64).filter(|&k| k != 1) {
        acc = &acc * &GroupRingElem::linear(p, ctx.reduced_power(k) as i64);
    }
    acc.scale(&BigInt::from(ctx.reduced_power(-((p - 2) as i64))))
}

/// Checks `P ≡ T (mod p)` coefficientwise and returns `R = (P - T) / p`,
/// which must have degree below `p - 2`.
pub fn verify_p_equals_t_mod_p(ctx: &PrimeContext) -> Result<GroupRingElem> {
    let diff = &p_of_sigma(ctx) - &t_of_sigma(ctx);
    let r = diff.exact_div(&BigInt::from(ctx.p()))?;
    if let Some(d) = r.degree() {
        if d as u64 >= ctx.p() - 2 {
            return Err(Error::invariant(format!("deg R = {d} is not below p - 2")));
        }
    }
    Ok(r)
}

/// Recomputes the δ vector by multiplying `P(σ)(σ - v)` in the group ring and
/// dividing by `p`, then checks it against [`delta_coefficients`].
pub fn symbolic_q_check(ctx: &PrimeContext) -> Result<DeltaVector> {
    let product = &p_of_sigma(ctx) * &GroupRingElem::linear(ctx.p(), ctx.v() as i64);
    let q = product.exact_div(&BigInt::from(ctx.p()))?;
    if !q.coeff(0).is_zero() {
        return Err(Error::invariant(format!("constant coefficient of Q is {}", q.coeff(0))));
    }
    let mut delta = Vec::with_capacity(q.coeffs().len() - 1);
    for c in &q.coeffs()[1..] {
        let d = c
            .to_i64()
            .ok_or_else(|| Error::invariant(format!("δ coefficient {c} does not fit in i64")))?;
        delta.push(d);
    }
    let symbolic = DeltaVector { p: ctx.p(), v: ctx.v(), delta };
    let direct = delta_coefficients(ctx)?;
    if symbolic != direct {
        return Err(Error::invariant(format!(
            "group-ring expansion {:?} disagrees with direct formula {:?}",
            symbolic.delta, direct.delta
        )));
    }
    Ok(symbolic)
}

/// Evaluates `Q` at a nonzero residue; see [`DeltaVector::evaluate`].
pub fn evaluate_q(delta: &DeltaVector, x: u64) -> Result<u64> {
    delta.evaluate(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::primes_in;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    // Independent expansion: multiply the product as an ordinary integer
    // polynomial (no wraparound, i128 coefficients) for tiny p.
    fn poly_product_oracle(p: u64, v: u64) -> Vec<i128> {
        let mut poly = vec![1i128];
        for k in (0..p - 1).filter(|&k| k != 1) {
            let root = (0..k).fold(1u64, |x, _| x * v % p) as i128;
            let mut next = vec![0i128; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= root * c;
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn delta_for_seven() {
        let d = delta_coefficients(&ctx(7)).unwrap();
        assert_eq!(d.as_slice(), &[-2, -1, -2, 0, -1]);
        assert_eq!(d.sum(), -6);
        assert_eq!(d.get(1), -2);
        assert_eq!(implied_delta_zero(&ctx(7)), Ok(0));
    }

    #[test]
    fn p_of_sigma_for_seven() {
        let p = p_of_sigma(&ctx(7));
        let coeffs: Vec<i64> = p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(coeffs, vec![1, 5, 4, 6, 2, 3]);
        for q in primes_in(3, 200) {
            let sum: BigInt = p_of_sigma(&ctx(q)).coeffs().iter().sum();
            assert_eq!(sum, BigInt::from(q * (q - 1) / 2));
        }
    }

    #[test]
    fn t_expansion_matches_plain_polynomial_product() {
        for p in [5u64, 7, 11, 13] {
            let c = ctx(p);
            let t = t_of_sigma(&c);
            let oracle = poly_product_oracle(p, c.v());
            // degree p-2 product, no wraparound needed
            assert_eq!(oracle.len() as u64, p - 1);
            let lead = c.reduced_power(-((p - 2) as i64)) as i128;
            for (i, &o) in oracle.iter().enumerate() {
                assert_eq!(t.coeff(i), &BigInt::from(o * lead), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn p_minus_t_divisible() {
        for p in [5u64, 7, 37] {
            let r = verify_p_equals_t_mod_p(&ctx(p)).unwrap();
            assert!(r.degree().is_none_or(|d| (d as u64) < p - 2));
        }
    }

    #[test]
    fn symbolic_matches_direct() {
        for p in [3u64, 5, 7, 37] {
            let sym = symbolic_q_check(&ctx(p)).unwrap();
            assert_eq!(sym, delta_coefficients(&ctx(p)).unwrap());
        }
    }

    #[test]
    fn evaluate_examples() {
        let d37 = delta_coefficients(&ctx(37)).unwrap();
        assert_eq!(evaluate_q(&d37, 32), Ok(0));
        let c157 = ctx(157);
        let d157 = delta_coefficients(&c157).unwrap();
        assert_eq!(evaluate_q(&d157, c157.reduced_power(47)), Ok(0));
        assert_eq!(evaluate_q(&d157, c157.reduced_power(95)), Ok(0));
        let c7 = ctx(7);
        let d7 = delta_coefficients(&c7).unwrap();
        assert_ne!(evaluate_q(&d7, c7.reduced_power(3)), Ok(0));
        assert!(matches!(evaluate_q(&d7, 14), Err(Error::Domain(_))));
    }

    #[test]
    fn horner_matches_direct_sum() {
        let c = ctx(101);
        let d = delta_coefficients(&c).unwrap();
        for x in 1..101u64 {
            let direct = (1..=99usize).fold(0i128, |acc, i| {
                let xi = (0..i).fold(1i128, |a, _| a * x as i128 % 101);
                (acc + xi * d.get(i) as i128).rem_euclid(101)
            });
            assert_eq!(d.evaluate(x).unwrap() as i128, direct);
        }
    }

    #[test]
    fn group_ring_wraps_exponents() {
        let a = GroupRingElem::from_coeffs(5, [0, 0, 0, 1]); // σ^3
        let b = GroupRingElem::from_coeffs(5, [0, 0, 1]); // σ^2
        assert_eq!(&a * &b, GroupRingElem::from_coeffs(5, [0, 1])); // σ^5 = σ
        assert_eq!(GroupRingElem::from_coeffs(5, [0, 0, 0, 0, 7]), GroupRingElem::from_coeffs(5, [7]));
        assert_eq!(GroupRingElem::zero(5).degree(), None);
    }

    #[test]
    fn exact_div_reports_failure() {
        let a = GroupRingElem::from_coeffs(5, [5, 10, 3]);
        assert!(matches!(a.exact_div(&BigInt::from(5)), Err(Error::InvariantViolation(_))));
        assert_eq!(a.reduce_mod(5), vec![0, 0, 3, 0]);
    }
}
