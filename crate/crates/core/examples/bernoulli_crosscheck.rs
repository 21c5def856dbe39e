//! Bernoulli numbers mod p for one prime, then the scan-vs-oracle comparison
//! over a whole range.
//!
//!     cargo run --example bernoulli_crosscheck -- 37 500

use qscan::bernoulli::{bernoulli_mod_p, irregular_pairs_oracle};
use qscan::scan::cross_check;

fn main() -> qscan::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let p = args.next().unwrap_or(37);
    let p_max = args.next().unwrap_or(500);

    let table = bernoulli_mod_p(p)?;
    let even: Vec<String> = (2..table.values().len())
        .step_by(2)
        .map(|n| format!("B_{n}={}", table.get(n)))
        .collect();
    println!("mod {p}: {}", even.join(" "));
    for pair in irregular_pairs_oracle(p)? {
        println!("  p divides B_{} (k={}, m={})", pair.a2, pair.k, pair.m);
    }

    let report = cross_check(p_max, 1)?;
    println!(
        "primes 5..={p_max}: {} checked, {} irregular pairs, {} discrepancies",
        report.primes_checked,
        report.irregular_pairs,
        report.discrepancies.len()
    );
    for d in &report.discrepancies {
        println!("  p={} scan={:?} oracle={:?}", d.p, d.scan_a2, d.oracle_a2);
    }
    Ok(())
}
