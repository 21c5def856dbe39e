//! Gauss sums over F_{q^f} when q is not 1 mod p. The sum lands in Z[zeta_p].
//!
//!     cargo run --example gauss_sum_nonsplit -- 7 11

use qscan::gauss::{gauss_sum_general, magnitude_squared};

fn main() -> qscan::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let p = args.next().unwrap_or(7);
    let q = args.next().unwrap_or(11);

    let rec = gauss_sum_general(p, q)?;
    let g = rec.g.project_to_zeta_p().expect("non-split sums have no zeta_q part");
    println!("p={p} q={q} f={}", rec.f);
    println!("g = {g}");
    match magnitude_squared(&rec.g) {
        Some(m) => println!("g*conj(g) = {m} = {q}^{}", rec.f),
        None => println!("g*conj(g) is not an integer"),
    }
    Ok(())
}
