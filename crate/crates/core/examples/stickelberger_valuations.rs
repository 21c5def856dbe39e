//! G = g^p and how it factors over the primes above q, read off through
//! q-adic embeddings.
//!
//!     cargo run --example stickelberger_valuations -- 7 29

use qscan::gauss::{build_character, gauss_power, gauss_sum, stickelberger_check, PrecisionPolicy};

fn main() -> qscan::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let p = args.next().unwrap_or(7);
    let q = args.next().unwrap_or(29);

    let chr = build_character(p, q)?;
    let power = gauss_power(&gauss_sum(&chr)?)?;
    println!("G = {}", power.value);
    println!("|N(G)| = {}", power.value.norm()?.magnitude());
    println!(
        "G mod pi^{p}: {:?} (v(G-1)={}, v(G+1)={})",
        power.sign, power.pi_val_minus_one, power.pi_val_plus_one
    );
    let report = stickelberger_check(&power.value, &chr, PrecisionPolicy::for_prime(p))?;
    for (t, v) in report.valuations.iter().enumerate() {
        println!("  (q, zeta_p - {}^{}) : {v}", chr.w, t + 1);
    }
    println!("total {} at precision q^{}, labeling {:?}", report.total, report.precision, report.labeling);
    Ok(())
}
