//! Scanning primes for roots of `Q` at the odd powers `v^k`, cross-checking
//! against the Bernoulli oracle, and the regularity certificate.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli::irregular_pairs_oracle;
use crate::error::{Error, Result};
use crate::residue::{is_prime, primes_in, PrimeContext};
use crate::stickelberger::{delta_coefficients, DeltaVector};

/// One odd exponent `k` with `Q(v^k) ≡ 0 (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanHit {
    pub p: u64,
    pub v: u64,
    pub k: u64,
    pub a2: u64,
    /// `v^k mod p`, the eigenvalue `μ`.
    pub mu: u64,
}

fn check_scan_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::domain(format!("p must be at least 5, got {p}")));
    }
    Ok(())
}

fn hits_for(ctx: &PrimeContext, delta: &DeltaVector) -> Result<Vec<ScanHit>> {
    let p = ctx.p();
    let mut hits = Vec::new();
    // k ascending, so a2 = p - k comes out descending.
    for k in (3..=p - 2).step_by(2) {
        let mu = ctx.reduced_power(k as i64);
        if delta.evaluate(mu)? == 0 {
            hits.push(ScanHit { p, v: ctx.v(), k, a2: p - k, mu });
        }
    }
    Ok(hits)
}

/// Hits for `p` with its smallest primitive root.
pub fn scan_prime(p: u64) -> Result<Vec<ScanHit>> {
    check_scan_prime(p)?;
    scan_with_context(&PrimeContext::new(p)?)
}

/// Hits for an explicit context, so any primitive root can be used.
pub fn scan_with_context(ctx: &PrimeContext) -> Result<Vec<ScanHit>> {
    check_scan_prime(ctx.p())?;
    let delta = delta_coefficients(ctx)?;
    hits_for(ctx, &delta)
}

fn check_p_max(p_max: u64) -> Result<()> {
    if p_max < 5 {
        return Err(Error::domain(format!("p_max must be at least 5, got {p_max}")));
    }
    Ok(())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::domain(format!("cannot start {jobs} workers: {e}")))
}

/// Hits for every prime `5 <= p <= p_max`, ascending in `p`.
pub fn scan_range(p_max: u64) -> Result<Vec<ScanHit>> {
    scan_range_jobs(p_max, 1)
}

/// As [`scan_range`], fanned out over `jobs` workers. Output order does not
/// depend on `jobs`.
pub fn scan_range_jobs(p_max: u64, jobs: usize) -> Result<Vec<ScanHit>> {
    check_p_max(p_max)?;
    let primes = primes_in(5, p_max);
    let per_prime: Vec<Vec<ScanHit>> = if jobs <= 1 {
        primes.iter().map(|&p| scan_prime(p)).collect::<Result<_>>()?
    } else {
        pool(jobs)?.install(|| primes.par_iter().map(|&p| scan_prime(p)).collect::<Result<_>>())?
    };
    Ok(per_prime.into_iter().flatten().collect())
}

/// A prime where the scan and the Bernoulli oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub p: u64,
    pub scan_a2: Vec<u64>,
    pub oracle_a2: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub p_max: u64,
    pub primes_checked: usize,
    pub irregular_pairs: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossCheckReport {
    pub fn is_consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn compare_prime(p: u64) -> Result<(usize, Option<Discrepancy>)> {
    let scan: BTreeSet<u64> = scan_prime(p)?.into_iter().map(|h| h.a2).collect();
    let oracle: BTreeSet<u64> = irregular_pairs_oracle(p)?.into_iter().map(|x| x.a2).collect();
    let n = oracle.len();
    if scan == oracle {
        Ok((n, None))
    } else {
        Ok((
            n,
            Some(Discrepancy {
                p,
                scan_a2: scan.into_iter().collect(),
                oracle_a2: oracle.into_iter().collect(),
            }),
        ))
    }
}

/// Compares the scan's `a2` set with the Bernoulli oracle for every prime up
/// to `p_max`.
pub fn cross_check(p_max: u64, jobs: usize) -> Result<CrossCheckReport> {
    check_p_max(p_max)?;
    let primes = primes_in(5, p_max);
    let results: Vec<(usize, Option<Discrepancy>)> = if jobs <= 1 {
        primes.iter().map(|&p| compare_prime(p)).collect::<Result<_>>()?
    } else {
        pool(jobs)?.install(|| primes.par_iter().map(|&p| compare_prime(p)).collect::<Result<_>>())?
    };
    let irregular_pairs = results.iter().map(|(n, _)| n).sum();
    Ok(CrossCheckReport {
        p_max,
        primes_checked: primes.len(),
        irregular_pairs,
        discrepancies: results.into_iter().filter_map(|(_, d)| d).collect(),
    })
}

/// A root `x = v^k` of `Σ δ_i x^(i-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Root {
    pub x: u64,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    RegularCertified,
    Irregular(Vec<ScanHit>),
    /// Roots at `v^0` or `v^1`, which the odd-power correspondence does not cover.
    Inconclusive(Vec<Root>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub p: u64,
    pub v: u64,
    pub verdict: Verdict,
    /// Roots at `v^k` with `k` even and nonzero. These are reported and never
    /// counted as evidence either way.
    pub even_power_roots: Vec<Root>,
}

/// Scans every `x` in `1..p` for roots of `Σ_{i=1}^{p-2} δ_i x^(i-1) mod p` and
/// classifies them by the exponent `k` with `x = v^k`.
pub fn regularity_certificate(p: u64) -> Result<Certificate> {
    check_scan_prime(p)?;
    let ctx = PrimeContext::new(p)?;
    let delta = delta_coefficients(&ctx)?;
    let logs = ctx.log_table();
    let mut odd = Vec::new();
    let mut even = Vec::new();
    let mut other = Vec::new();
    for x in 1..p {
        if delta.evaluate_shifted(x)? != 0 {
            continue;
        }
        let k = logs[x as usize];
        let root = Root { x, k };
        match k {
            0 | 1 => other.push(root),
            k if k % 2 == 0 => even.push(root),
            k => odd.push(ScanHit { p, v: ctx.v(), k, a2: p - k, mu: x }),
        }
    }
    odd.sort_by_key(|h| h.k);
    even.sort_by_key(|r| r.k);
    let verdict = if !other.is_empty() {
        Verdict::Inconclusive(other)
    } else if !odd.is_empty() {
        Verdict::Irregular(odd)
    } else {
        Verdict::RegularCertified
    };
    Ok(Certificate { p, v: ctx.v(), verdict, even_power_roots: even })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2s(hits: &[ScanHit]) -> Vec<u64> {
        hits.iter().map(|h| h.a2).collect()
    }

    #[test]
    fn scan_examples() {
        let h = scan_prime(37).unwrap();
        assert_eq!(h, vec![ScanHit { p: 37, v: 2, k: 5, a2: 32, mu: 32 }]);
        assert_eq!(a2s(&scan_prime(157).unwrap()), vec![110, 62]);
        assert!(scan_prime(7).unwrap().is_empty());
        assert!(scan_prime(3).is_err());
        assert_eq!(scan_prime(15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn range_examples() {
        assert!(scan_range(31).unwrap().is_empty());
        assert_eq!(scan_range(37).unwrap().len(), 1);
        assert!(scan_range(4).is_err());
        let rows: Vec<(u64, u64, u64)> =
            scan_range(160).unwrap().iter().map(|h| (h.p, h.v, h.a2)).collect();
        assert_eq!(
            rows,
            vec![
                (37, 2, 32),
                (59, 2, 44),
                (67, 2, 58),
                (101, 2, 68),
                (103, 5, 24),
                (131, 2, 22),
                (149, 2, 130),
                (157, 5, 110),
                (157, 5, 62)
            ]
        );
    }

    #[test]
    fn hits_satisfy_their_invariants() {
        for h in scan_range(300).unwrap() {
            let ctx = PrimeContext::new(h.p).unwrap();
            let d = delta_coefficients(&ctx).unwrap();
            assert_eq!(d.evaluate(ctx.reduced_power(h.k as i64)), Ok(0));
            assert_eq!(h.a2 % 2, 0);
            assert!(h.a2 >= 2 && h.a2 + 3 <= h.p);
            assert_eq!(h.mu, ctx.reduced_power(h.k as i64));
        }
    }

    #[test]
    fn jobs_do_not_change_output() {
        assert_eq!(scan_range_jobs(400, 4).unwrap(), scan_range(400).unwrap());
        assert_eq!(cross_check(200, 3).unwrap(), cross_check(200, 1).unwrap());
    }

    #[test]
    fn cross_check_small_ranges() {
        let r = cross_check(7, 1).unwrap();
        assert!(r.is_consistent());
        assert_eq!(r.primes_checked, 2);
        let r = cross_check(160, 1).unwrap();
        assert!(r.is_consistent());
        assert_eq!(r.irregular_pairs, 9);
    }

    #[test]
    fn certificates() {
        assert_eq!(regularity_certificate(5).unwrap().verdict, Verdict::RegularCertified);
        assert_eq!(regularity_certificate(7).unwrap().verdict, Verdict::RegularCertified);
        match regularity_certificate(37).unwrap().verdict {
            Verdict::Irregular(h) => assert_eq!(a2s(&h), vec![32]),
            v => panic!("unexpected {v:?}"),
        }
        assert!(regularity_certificate(9).is_err());
    }

    #[test]
    fn even_powers_are_always_roots() {
        for p in primes_in(5, 200) {
            let c = regularity_certificate(p).unwrap();
            let ks: Vec<u64> = c.even_power_roots.iter().map(|r| r.k).collect();
            assert_eq!(ks, (2..p - 1).step_by(2).collect::<Vec<_>>(), "p={p}");
        }
    }
}
