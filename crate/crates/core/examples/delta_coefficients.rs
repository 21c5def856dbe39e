//! The coefficients of Q for one prime, the group-ring expansion they come
//! from, and the remainder R in P = T + pR.
//!
//!     cargo run --example delta_coefficients -- 37

use qscan::residue::PrimeContext;
use qscan::stickelberger::{delta_coefficients, symbolic_q_check, verify_p_equals_t_mod_p};

fn main() -> qscan::Result<()> {
    let p = std::env::args().nth(1).map_or(37, |s| s.parse().expect("p must be an integer"));
    let ctx = PrimeContext::new(p)?;
    let d = delta_coefficients(&ctx)?;
    println!("p={p} v={}", ctx.v());
    println!("delta = {:?}", d.as_slice());
    println!("sum = {} (expected {})", d.sum(), (p as i64 - 1) * (1 - ctx.v() as i64) / 2);
    symbolic_q_check(&ctx)?;
    println!("P(sigma)(sigma - v)/p agrees with the direct formula");
    let r = verify_p_equals_t_mod_p(&ctx)?;
    println!("P = T mod p, deg R = {:?}", r.degree());

    let roots: Vec<u64> = (3..=p - 2).step_by(2).filter(|&k| d.evaluate(ctx.reduced_power(k as i64)) == Ok(0)).collect();
    println!("odd k with Q(v^k) = 0: {roots:?}");
    Ok(())
}
