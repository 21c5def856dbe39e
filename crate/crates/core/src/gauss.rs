//! Gauss sums `g(q) = Σ χ(x) ζ_q^{Tr x}` for the `p`-th power residue
//! character, computed exactly in `Z[ζ_p, ζ_q]`, and the checks run on them:
//! the twist `τ(g) = ζ_p^ρ g`, the geometric shape of the coordinates, the
//! congruence mod `π`, `G = g^p ∈ Z[ζ_p]`, and the prime factorization of `G`
//! above `q`.
//!
//! Normalization: `u` is the least primitive root mod `q` and
//! `w = u^((q-1)/p)`. The residue symbol of `x` is `ζ_p^c` where
//! `x^((q-1)/p) ≡ w^c`, and `χ` is its inverse, so `χ(x) = ζ_p^{-c}`. This
//! pins the prime above `q` to `(q, ζ_p - w)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::{BicyclotomicInt, CyclotomicInt};
use crate::error::{Error, Result};
use crate::finite_field::{residue_degree, ExtensionField};
use crate::qadic::split_valuations;
use crate::residue::{is_prime, mod_inverse, mul_mod, pow_mod, smallest_primitive_root, PrimeContext};

fn check_pair(p: u64, q: u64) -> Result<()> {
    for n in [p, q] {
        if !is_prime(n) {
            return Err(Error::NotPrime(n));
        }
        if n < 3 {
            return Err(Error::domain(format!("{n} is not an odd prime")));
        }
    }
    if p == q {
        return Err(Error::domain("p and q must be distinct"));
    }
    Ok(())
}

/// `χ(x) = ζ_p^{chi_exp[x]}` on `(Z/q)^*` for `q ≡ 1 (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCharacter {
    pub p: u64,
    pub q: u64,
    /// Least primitive root mod `q`.
    pub u: u64,
    /// `u^((q-1)/p)`, of order `p`.
    pub w: u64,
    chi_exp: Vec<u64>,
}

impl ResidueCharacter {
    /// Exponent `c` with `χ(x) = ζ_p^c`, for `x` a unit mod `q`.
    pub fn exponent(&self, x: u64) -> u64 {
        let x = x % self.q;
        assert!(x != 0, "χ is only defined on units");
        self.chi_exp[x as usize]
    }
}

/// Builds the inverse `p`-th power residue character for a split prime `q`.
pub fn build_character(p: u64, q: u64) -> Result<ResidueCharacter> {
    check_pair(p, q)?;
    if q % p != 1 {
        return Err(Error::domain(format!("{q} is not 1 mod {p}; use the general construction")));
    }
    let u = smallest_primitive_root(q)?;
    let e = (q - 1) / p;
    let w = pow_mod(u, e, q);
    // discrete log in the order-p subgroup generated by w
    let mut ind = std::collections::HashMap::with_capacity(p as usize);
    let mut y = 1u64;
    for c in 0..p {
        ind.insert(y, c);
        y = mul_mod(y, w, q);
    }
    let mut chi_exp = vec![0u64; q as usize];
    for x in 1..q {
        let c = ind[&pow_mod(x, e, q)];
        chi_exp[x as usize] = (p - c) % p;
    }
    Ok(ResidueCharacter { p, q, u, w, chi_exp })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussSumRecord {
    pub p: u64,
    pub q: u64,
    /// Residue degree: `q^f` is the size of the residue field.
    pub f: u64,
    pub g: BicyclotomicInt,
    /// `τ(g) = ζ_p^ρ g` for `τ: ζ_q ↦ ζ_q^u`.
    pub rho: u64,
    /// The primitive root mod `q` defining `τ`.
    pub u: u64,
}

fn twist_exponent(g: &BicyclotomicInt, u: u64) -> Result<u64> {
    let tg = g.tau(u)?;
    (0..g.p())
        .find(|&r| g.mul_zeta_p(r) == tg)
        .ok_or_else(|| Error::invariant("no ρ with τ(g) = ζ_p^ρ g"))
}

/// `g = Σ_{x=1}^{q-1} χ(x) ζ_q^x`, exactly, together with its twist exponent.
pub fn gauss_sum(chr: &ResidueCharacter) -> Result<GaussSumRecord> {
    let g = BicyclotomicInt::from_lift(chr.p, chr.q, defining_lift(chr));
    if g.is_zero() {
        return Err(Error::invariant("Gauss sum vanished"));
    }
    let rho = twist_exponent(&g, chr.u)?;
    Ok(GaussSumRecord { p: chr.p, q: chr.q, f: 1, g, rho, u: chr.u })
}

/// The sum as written, indexed by `(χ exponent, trace)` on the `p × q` grid
/// before any reduction. The `ζ_q^0` column collects `x` with trace 0.
fn defining_lift(chr: &ResidueCharacter) -> Vec<BigInt> {
    let qn = chr.q as usize;
    let mut lift = vec![BigInt::zero(); (chr.p * chr.q) as usize];
    for x in 1..chr.q {
        lift[chr.exponent(x) as usize * qn + x as usize] += 1;
    }
    lift
}

/// Coordinates of `g` on `ζ_q^1, ..., ζ_q^{q-1}` and the checks on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// `ζ_q^0` coefficient of the defining sum.
    pub g0_zero: bool,
    /// `g_{u^-k} = g_1 ζ_p^{kρ}` for `k = 0..q-2`.
    pub geometric_pattern: bool,
    /// `g_1` is a root of unity.
    pub g1_root_of_unity: bool,
    /// `ζ_p^a` with `g_1 = ζ_p^a`.
    pub g1_exponent: Option<u64>,
    /// `g ≡ -1 (mod π)`.
    pub minus_one_mod_pi: bool,
    pub rho: u64,
    /// `-v mod p` for the least primitive root `v` of `p`.
    pub minus_v: u64,
    /// Recorded only; see the crate README for the normalization it depends on.
    pub rho_equals_minus_v: bool,
}

fn root_of_unity_exponent(a: &CyclotomicInt) -> Option<u64> {
    (0..a.p()).find(|&e| *a == CyclotomicInt::zeta_power(a.p(), e as i64))
}

/// Checks the coordinate shape of a split-case Gauss sum. Hard failures are
/// returned as errors; the comparison of `ρ` with `-v` is only recorded.
pub fn structure_check(rec: &GaussSumRecord, chr: &ResidueCharacter) -> Result<StructureReport> {
    let (p, q) = (rec.p, rec.q);
    let lift = defining_lift(chr);
    let qn = q as usize;
    let g0_zero = (0..p as usize).all(|i| lift[i * qn].is_zero());
    let rebuilt = BicyclotomicInt::from_lift(p, q, lift);
    if rebuilt != rec.g {
        return Err(Error::invariant("record does not match the character's defining sum"));
    }
    if !g0_zero {
        return Err(Error::invariant("g_0 != 0"));
    }

    let coords = rec.g.normal_components(); // coords[j - 1] = g_j
    let g1 = &coords[0];
    let u_inv = mod_inverse(rec.u, q).ok_or_else(|| Error::invariant("u is not a unit mod q"))?;
    let mut idx = 1u64; // u^-k mod q
    let mut geometric_pattern = true;
    for k in 0..q - 1 {
        let expected = g1 * &CyclotomicInt::zeta_power(p, ((k * rec.rho) % p) as i64);
        if coords[(idx - 1) as usize] != expected {
            geometric_pattern = false;
            break;
        }
        idx = mul_mod(idx, u_inv, q);
    }
    if !geometric_pattern {
        return Err(Error::invariant("coordinates do not follow g_{u^-k} = g_1 ζ_p^{kρ}"));
    }
    let g1_exponent = root_of_unity_exponent(g1);
    if g1_exponent.is_none() {
        return Err(Error::invariant(format!("g_1 = {g1} is not a root of unity")));
    }

    let residue = rec.g.residue_mod_pi();
    let minus_one_mod_pi = residue[0] == p - 1 && residue[1..].iter().all(|&c| c == 0);
    if !minus_one_mod_pi {
        return Err(Error::invariant(format!("g mod π is {residue:?}, not -1")));
    }

    let v = PrimeContext::new(p)?.v();
    let minus_v = (p - v % p) % p;
    Ok(StructureReport {
        g0_zero,
        geometric_pattern,
        g1_root_of_unity: true,
        g1_exponent,
        minus_one_mod_pi,
        rho: rec.rho,
        minus_v,
        rho_equals_minus_v: rec.rho == minus_v,
    })
}

/// Which residue `a` mod `π^p` an element is congruent to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PiAdicSign {
    PlusOne,
    MinusOne,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussPower {
    /// `G = g^p` as an element of `Z[ζ_p]`.
    pub value: CyclotomicInt,
    /// `v_π(G - 1)`, capped at `2p`.
    pub pi_val_minus_one: u32,
    /// `v_π(G + 1)`, capped at `2p`.
    pub pi_val_plus_one: u32,
    pub sign: PiAdicSign,
}

/// `G = g^p`, checked to have no `ζ_q` dependence, plus its class mod `π^p`.
pub fn gauss_power(rec: &GaussSumRecord) -> Result<GaussPower> {
    let p = rec.p;
    let big = rec.g.pow(p);
    let value = big
        .project_to_zeta_p()
        .ok_or_else(|| Error::invariant("g^p depends on ζ_q"))?;
    let one = CyclotomicInt::one(p);
    let cap = 2 * p as u32;
    let minus = (&value - &one).pi_valuation(cap).unwrap_or(cap);
    let plus = (&value + &one).pi_valuation(cap).unwrap_or(cap);
    let sign = if minus >= p as u32 {
        PiAdicSign::PlusOne
    } else if plus >= p as u32 {
        PiAdicSign::MinusOne
    } else {
        PiAdicSign::Neither
    };
    Ok(GaussPower { value, pi_val_minus_one: minus, pi_val_plus_one: plus, sign })
}

/// How the valuation at the prime `(q, ζ_p - w^t)` relates to `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Labeling {
    /// valuation `t` at `(q, ζ_p - w^t)`
    Direct,
    /// valuation `p - t`
    Reflected,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StickelbergerReport {
    /// `valuations[t - 1]` is the exponent of `(q, ζ_p - w^t)` in `G`.
    pub valuations: Vec<u32>,
    pub total: u64,
    pub precision: u32,
    pub labeling: Labeling,
}

/// Starting precision and cap for the `q`-adic valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start: u32,
    pub cap: u32,
}

impl PrecisionPolicy {
    /// `K = p + 2`, doubling up to `8p`.
    pub fn for_prime(p: u64) -> Self {
        PrecisionPolicy { start: p as u32 + 2, cap: 8 * p as u32 }
    }
}

/// Valuations of `G` at the `p - 1` primes above `q`; their multiset must be
/// `{1, ..., p-1}`.
pub fn stickelberger_check(
    power: &CyclotomicInt,
    chr: &ResidueCharacter,
    policy: PrecisionPolicy,
) -> Result<StickelbergerReport> {
    let p = chr.p;
    let (valuations, precision) = split_valuations(power, chr.q, chr.w, policy.start, policy.cap)?;
    let mut sorted = valuations.clone();
    sorted.sort_unstable();
    if sorted != (1..p as u32).collect::<Vec<_>>() {
        return Err(Error::invariant(format!("valuations {valuations:?} are not a permutation of 1..{}", p - 1)));
    }
    let total = valuations.iter().map(|&x| x as u64).sum();
    let labeling = if valuations.iter().enumerate().all(|(i, &x)| x as usize == i + 1) {
        Labeling::Direct
    } else if valuations.iter().enumerate().all(|(i, &x)| x as u64 == p - 1 - i as u64) {
        Labeling::Reflected
    } else {
        Labeling::Other
    };
    Ok(StickelbergerReport { valuations, total, precision, labeling })
}

/// `g = Σ_{x ∈ F_{q^f}^*} χ(x) ζ_q^{Tr x}` for `q ≢ 1 (mod p)`. The result is
/// required to lie in `Z[ζ_p]`.
pub fn gauss_sum_general(p: u64, q: u64) -> Result<GaussSumRecord> {
    check_pair(p, q)?;
    if q % p == 1 {
        return Err(Error::domain(format!("{q} splits in Z[ζ_{p}]; use the split construction")));
    }
    let f = residue_degree(q, p);
    let field = ExtensionField::new(q, f as usize)?;
    let m = field.order();
    if (m - 1) % p != 0 {
        return Err(Error::domain(format!("{p} does not divide {m} - 1")));
    }
    let gen = field.generator()?;
    let qn = q as usize;
    let mut lift = vec![BigInt::zero(); (p * q) as usize];
    let mut x = field.one();
    // x = γ^e, residue symbol ζ_p^{e mod p}, χ its inverse
    for e in 0..m - 1 {
        let c = (p - e % p) % p;
        lift[c as usize * qn + field.trace(&x) as usize] += 1;
        x = field.mul(&x, &gen);
    }
    let g = BicyclotomicInt::from_lift(p, q, lift);
    if g.project_to_zeta_p().is_none() {
        return Err(Error::invariant(format!("g({q}) for p = {p} has ζ_q dependence")));
    }
    let u = smallest_primitive_root(q)?;
    let rho = twist_exponent(&g, u)?;
    Ok(GaussSumRecord { p, q, f, g, rho, u })
}

/// `g · conj(g)` as an integer, if it is one.
pub fn magnitude_squared(g: &BicyclotomicInt) -> Option<BigInt> {
    let prod = g * &g.conj();
    prod.project_to_zeta_p().and_then(|c| c.as_integer().cloned())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail,
    /// Informational; never affects the exit status.
    Recorded,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Recorded => "recorded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

/// Every check run for one `(p, q)` pair, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussReport {
    pub p: u64,
    pub q: u64,
    pub f: u64,
    pub split: bool,
    pub checks: Vec<CheckLine>,
}

impl GaussReport {
    pub fn all_hard_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    fn push(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        self.checks.push(CheckLine { name: name.into(), outcome, detail: detail.into() });
    }

    fn record(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(CheckLine { name: name.into(), outcome: Outcome::Recorded, detail: detail.into() });
    }

    fn push_result<T>(&mut self, name: &str, r: &Result<T>, detail: impl FnOnce(&T) -> String) {
        match r {
            Ok(x) => self.push(name, true, detail(x)),
            Err(e) => self.push(name, false, e.to_string()),
        }
    }
}

impl fmt::Display for GaussReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let case = if self.split { "split" } else { "non-split" };
        writeln!(f, "p={} q={} f={} ({case})", self.p, self.q, self.f)?;
        for c in &self.checks {
            if c.detail.is_empty() {
                writeln!(f, "{}: {}", c.name, c.outcome)?;
            } else {
                writeln!(f, "{}: {} ({})", c.name, c.outcome, c.detail)?;
            }
        }
        Ok(())
    }
}

fn pow_big(q: u64, e: u64) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

/// Runs the split or non-split verification for `(p, q)`, whichever applies.
pub fn verify_pair(p: u64, q: u64, policy: Option<PrecisionPolicy>) -> Result<GaussReport> {
    check_pair(p, q)?;
    if q % p == 1 {
        verify_split(p, q, policy.unwrap_or_else(|| PrecisionPolicy::for_prime(p)))
    } else {
        verify_general(p, q)
    }
}

fn verify_general(p: u64, q: u64) -> Result<GaussReport> {
    let f = residue_degree(q, p);
    let mut report = GaussReport { p, q, f, split: false, checks: Vec::new() };
    let rec = gauss_sum_general(p, q);
    report.push_result("g in Z[zeta_p]", &rec, |_| String::new());
    let Ok(rec) = rec else { return Ok(report) };
    let m = pow_big(q, f);
    let mag = magnitude_squared(&rec.g);
    report.push(
        "g*conj(g) = q^f",
        mag.as_ref() == Some(&m),
        mag.map_or("not an integer".to_string(), |x| x.to_string()),
    );
    report.push("twist trivial", rec.rho == 0, format!("rho={}", rec.rho));
    Ok(report)
}

fn verify_split(p: u64, q: u64, policy: PrecisionPolicy) -> Result<GaussReport> {
    let mut report = GaussReport { p, q, f: 1, split: true, checks: Vec::new() };
    let chr = build_character(p, q)?;
    let image: std::collections::BTreeSet<u64> = (1..q).map(|x| chr.exponent(x)).collect();
    report.push("character has order p", image.len() as u64 == p, format!("u={} w={}", chr.u, chr.w));

    let rec = gauss_sum(&chr);
    report.push_result("twist tau(g) = zeta_p^rho g", &rec, |r| format!("rho={}", r.rho));
    let Ok(rec) = rec else { return Ok(report) };
    report.push("rho != 0", rec.rho != 0, "");

    let mag = magnitude_squared(&rec.g);
    report.push(
        "g*conj(g) = q",
        mag == Some(BigInt::from(q)),
        mag.map_or("not an integer".to_string(), |x| x.to_string()),
    );

    let structure = structure_check(&rec, &chr);
    report.push_result("g_0 = 0 and g_{u^-k} = zeta_p^{k rho} g_1", &structure, |s| {
        format!("g_1 = zeta_p^{}", s.g1_exponent.unwrap_or(0))
    });
    report.push_result("g = -1 mod pi", &structure, |_| String::new());
    if let Ok(s) = &structure {
        report.record("rho = -v", format!("rho={} -v={} equal={}", s.rho, s.minus_v, s.rho_equals_minus_v));
    }

    let power = gauss_power(&rec);
    report.push_result("G = g^p in Z[zeta_p]", &power, |_| String::new());
    let Ok(power) = power else { return Ok(report) };
    report.record(
        "G mod pi^p",
        format!(
            "{:?} (v_pi(G-1)={}, v_pi(G+1)={})",
            power.sign, power.pi_val_minus_one, power.pi_val_plus_one
        ),
    );
    let g_conj = &power.value * &power.value.conj();
    report.push(
        "G*conj(G) = q^p",
        g_conj.as_integer() == Some(&pow_big(q, p)),
        "",
    );
    let exponent = p * (p - 1) / 2;
    match power.value.norm() {
        Ok(n) => report.push(
            "|norm(G)| = q^(p(p-1)/2)",
            n.abs() == pow_big(q, exponent),
            format!("expected {q}^{exponent}"),
        ),
        Err(e) => report.push("|norm(G)| = q^(p(p-1)/2)", false, e.to_string()),
    }

    let stick = stickelberger_check(&power.value, &chr, policy);
    report.push_result("valuations of G above q = {1..p-1}", &stick, |s| {
        format!("{:?} sum={} K={}", s.valuations, s.total, s.precision)
    });
    if let Ok(s) = &stick {
        report.push("labeled valuation at (q, zeta_p - w^t) = t", s.labeling == Labeling::Direct, format!("{:?}", s.labeling));
    }
    Ok(report)
}
