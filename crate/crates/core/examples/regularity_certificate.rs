//! Certificates for every prime in a range (default 5..=200).
//!
//!     cargo run --example regularity_certificate -- 5 400

use qscan::residue::primes_in;
use qscan::scan::{regularity_certificate, Verdict};

fn main() -> qscan::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let lo = args.next().unwrap_or(5);
    let hi = args.next().unwrap_or(200);
    for p in primes_in(lo.max(5), hi) {
        let c = regularity_certificate(p)?;
        let verdict = match &c.verdict {
            Verdict::RegularCertified => "regular".to_string(),
            Verdict::Irregular(hits) => {
                format!("irregular a2={:?}", hits.iter().map(|h| h.a2).collect::<Vec<_>>())
            }
            Verdict::Inconclusive(roots) => format!("inconclusive {roots:?}"),
        };
        println!("{p:>5} v={:<3} {verdict}", c.v);
    }
    Ok(())
}
