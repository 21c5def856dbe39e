use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use qscan::cyclotomic::{BicyclotomicInt, CyclotomicInt};
use qscan::residue::{is_prime, primitive_roots, PrimeContext};
use qscan::scan::scan_with_context;
use qscan::stickelberger::delta_coefficients;

const SMALL_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn prime_below(limit: u64) -> impl Strategy<Value = u64> {
    (5..limit).prop_filter("prime", |&n| is_prime(n))
}

fn cyclo(p: u64) -> impl Strategy<Value = CyclotomicInt> {
    prop::collection::vec(-20i64..=20, (p - 1) as usize)
        .prop_map(move |c| CyclotomicInt::from_coeffs(p, c.into_iter().map(BigInt::from).collect()))
}

fn cyclo_triple() -> impl Strategy<Value = (CyclotomicInt, CyclotomicInt, CyclotomicInt)> {
    prop::sample::select(SMALL_PRIMES.to_vec()).prop_flat_map(|p| (cyclo(p), cyclo(p), cyclo(p)))
}

fn bicyclo(p: u64, q: u64) -> impl Strategy<Value = BicyclotomicInt> {
    prop::collection::vec((0i64..p as i64, 0i64..q as i64, -5i64..=5), 0..8).prop_map(move |terms| {
        terms.into_iter().fold(BicyclotomicInt::zero(p, q), |acc, (a, b, c)| {
            let m = BicyclotomicInt::monomial(p, q, a, b);
            let scaled = (0..c.abs()).fold(BicyclotomicInt::zero(p, q), |s, _| &s + &m);
            if c < 0 {
                &acc - &scaled
            } else {
                &acc + &scaled
            }
        })
    })
}

/// Value at `ζ_p = e^{2πi·t/p}` as a complex pair, straight from the coordinates.
fn complex_at(a: &CyclotomicInt, t: u64) -> (f64, f64) {
    let p = a.p() as f64;
    a.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
        let c = c.to_f64().unwrap();
        let th = TAU * (t as f64) * (i as f64) / p;
        (re + c * th.cos(), im + c * th.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs().max(a.1.abs());
    (a.0 - b.0).abs() < 1e-6 * scale && (a.1 - b.1).abs() < 1e-6 * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_powers_invert(p in prime_below(10_000), n in -1_000_000i64..=1_000_000) {
        let ctx = PrimeContext::new(p).unwrap();
        let a = ctx.reduced_power(n);
        let b = ctx.reduced_power(-n);
        prop_assert!((1..p).contains(&a));
        prop_assert_eq!(a * b % p, 1);
        prop_assert_eq!(a, ctx.reduced_power(n + (p as i64 - 1)));
    }

    #[test]
    fn cyclotomic_ring_laws((a, b, c) in cyclo_triple()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &CyclotomicInt::one(a.p()), a.clone());
    }

    #[test]
    fn product_matches_complex_evaluation((a, b, _c) in cyclo_triple()) {
        let ab = &a * &b;
        let (x, y) = (complex_at(&a, 1), complex_at(&b, 1));
        let expected = (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
        prop_assert!(close(complex_at(&ab, 1), expected));
    }

    #[test]
    fn galois_is_a_ring_homomorphism((a, b, _c) in cyclo_triple(), t in 1u64..13) {
        let p = a.p();
        prop_assume!(t % p != 0);
        let g = |x: &CyclotomicInt| x.galois(t).unwrap();
        prop_assert_eq!(g(&(&a * &b)), &g(&a) * &g(&b));
        prop_assert_eq!(g(&(&a + &b)), &g(&a) + &g(&b));
        // σ_t(a) evaluated at ζ equals a evaluated at ζ^t
        prop_assert!(close(complex_at(&g(&a), 1), complex_at(&a, t)));
    }

    #[test]
    fn norm_is_multiplicative((a, b, _c) in cyclo_triple()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((&a * &b).norm().unwrap(), a.norm().unwrap() * b.norm().unwrap());
    }

    #[test]
    fn bicyclotomic_ring_laws(
        (a, b, c) in prop::sample::select(vec![(3u64, 7u64), (5, 11), (3, 5), (5, 3)])
            .prop_flat_map(|(p, q)| (bicyclo(p, q), bicyclo(p, q), bicyclo(p, q)))
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let (p, q) = (a.p(), a.q());
        for (s, t) in [(2 % p, 2 % q), (p - 1, q - 1)] {
            prop_assume!(s != 0 && t != 0);
            let h = |x: &BicyclotomicInt| x.automorphism(s, t).unwrap();
            prop_assert_eq!(h(&(&a * &b)), &h(&a) * &h(&b));
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn delta_invariants_for_any_primitive_root(p in prime_below(1000), pick in any::<prop::sample::Index>()) {
        let roots = primitive_roots(p).unwrap();
        let v = roots[pick.index(roots.len())];
        let ctx = PrimeContext::with_root(p, v).unwrap();
        let d = delta_coefficients(&ctx).unwrap();
        let (pi, vi) = (p as i64, v as i64);
        prop_assert_eq!(d.as_slice().len() as u64, p - 2);
        prop_assert!(d.as_slice().iter().all(|&x| -pi < x && x <= 0));
        prop_assert_eq!(d.sum(), (pi - 1) * (1 - vi) / 2);
    }

    #[test]
    fn both_polynomial_forms_share_their_zeros(p in prime_below(200)) {
        let d = delta_coefficients(&PrimeContext::new(p).unwrap()).unwrap();
        for x in 1..p {
            prop_assert_eq!(d.evaluate(x).unwrap() == 0, d.evaluate_shifted(x).unwrap() == 0);
        }
    }
}

#[test]
fn a2_set_does_not_depend_on_the_primitive_root() {
    for p in (5..100).filter(|&n| is_prime(n)) {
        let sets: BTreeSet<BTreeSet<u64>> = primitive_roots(p)
            .unwrap()
            .into_iter()
            .map(|v| {
                let ctx = PrimeContext::with_root(p, v).unwrap();
                scan_with_context(&ctx).unwrap().into_iter().map(|h| h.a2).collect()
            })
            .collect();
        assert_eq!(sets.len(), 1, "p={p}: {sets:?}");
    }
}
