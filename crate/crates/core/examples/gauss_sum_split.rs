//! The Gauss sum of the order-p character mod a split prime q, its
//! coordinates and the full verification report.
//!
//!     cargo run --example gauss_sum_split -- 5 11

use qscan::gauss::{build_character, gauss_sum, structure_check, verify_pair};

fn main() -> qscan::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let p = args.next().unwrap_or(5);
    let q = args.next().unwrap_or(11);

    let chr = build_character(p, q)?;
    let rec = gauss_sum(&chr)?;
    println!("u={} w={} rho={}", chr.u, chr.w, rec.rho);
    for (j, c) in rec.g.normal_components().iter().enumerate() {
        println!("  g_{} = {c}", j + 1);
    }
    let s = structure_check(&rec, &chr)?;
    println!("g_1 = zeta_p^{:?}, rho = {}, -v = {}", s.g1_exponent, s.rho, s.minus_v);
    println!();
    print!("{}", verify_pair(p, q, None)?);
    Ok(())
}
