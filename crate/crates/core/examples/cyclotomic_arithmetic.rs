//! A few exact computations in Z[zeta_p].
//!
//!     cargo run --example cyclotomic_arithmetic -- 7

use qscan::cyclotomic::CyclotomicInt;

fn main() -> qscan::Result<()> {
    let p = std::env::args().nth(1).map_or(7, |s| s.parse().expect("p must be an integer"));
    let lambda = CyclotomicInt::lambda(p);
    println!("lambda = {lambda}");
    println!("N(lambda) = {}", lambda.norm()?);
    // (1 - zeta)^(p-1) = p * unit, so its pi-valuation is p - 1
    let lp = lambda.pow(p - 1);
    println!("lambda^{} = {lp}", p - 1);
    println!("v_pi = {:?}", lp.pi_valuation(4 * p as u32));
    let unit = &CyclotomicInt::one(p) + &CyclotomicInt::zeta_power(p, 1);
    println!("1 + zeta has norm {}", unit.norm()?);
    for t in 1..p {
        println!("  sigma_{t}(1 + zeta) = {}", unit.galois(t)?);
    }
    Ok(())
}
