//! Property tests for the arithmetic, sieve, and sum invariants.

use proptest::prelude::*;

use ordlab_core::arith::{
    factorize, is_admissible, mul_mod, pow_mod, Admissibility, PrimeContext, RationalBase,
};
use ordlab_core::expsum::{coprime_power_sum, kernel_sum, weil_power_sum};
use ordlab_core::primes::{primes_in_range, simple_sieve, PrimeRange};

fn small_primes() -> Vec<u64> {
    simple_sieve(600).into_iter().filter(|&p| p >= 3).collect()
}

proptest! {
    #[test]
    fn pow_mod_matches_repeated_multiplication(b in 0u64..10_000, e in 0u64..200, m in 2u64..10_000) {
        let mut acc = 1 % m;
        for _ in 0..e {
            acc = mul_mod(acc, b % m, m);
        }
        prop_assert_eq!(pow_mod(b, e, m).unwrap(), acc);
    }

    #[test]
    fn order_divides_group_order(pi in 0usize..120, u in 2u64..100_000) {
        let primes = small_primes();
        let p = primes[pi % primes.len()];
        let u = u % (p - 1);
        prop_assume!(u >= 1);
        let ctx = PrimeContext::new(p).unwrap();
        let ord = ctx.order_of_residue(u);
        prop_assert_eq!((p - 1) % ord, 0);
        prop_assert_eq!(pow_mod(u, ord, p).unwrap(), 1);
        for k in 1..ord {
            if ord % k == 0 && k < ord {
                prop_assert_ne!(pow_mod(u, k, p).unwrap(), 1);
            }
        }
    }

    #[test]
    fn factorization_reassembles(n in 2u64..5_000_000) {
        let fi = factorize(n).unwrap();
        let mut acc = 1u64;
        for &(p, e) in fi.factors() {
            prop_assert!(ordlab_core::arith::is_prime(p));
            acc *= p.pow(e);
        }
        prop_assert_eq!(acc, n);
        let primes: Vec<u64> = fi.factors().iter().map(|&(p, _)| p).collect();
        prop_assert!(primes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn admissibility_permutation_and_inversion_invariant(
        vals in proptest::collection::vec(
            (2i64..60, 1i64..12).prop_filter("not unit", |(n, d)| n.abs() != *d),
            1..5,
        ),
        flip_sign in any::<bool>(),
    ) {
        let tuple: Vec<RationalBase> = vals
            .iter()
            .map(|&(n, d)| RationalBase::new(if flip_sign { -n } else { n }, d).unwrap())
            .collect();
        let forward = is_admissible(&tuple).unwrap();
        let mut reversed: Vec<RationalBase> = tuple.clone();
        reversed.reverse();
        let backward = is_admissible(&reversed).unwrap();
        prop_assert_eq!(forward.is_admissible(), backward.is_admissible());

        let inverted: Vec<RationalBase> = tuple.iter().map(|b| b.inverse()).collect();
        let inv = is_admissible(&inverted).unwrap();
        prop_assert_eq!(forward.is_admissible(), inv.is_admissible());

        // A reported witness really certifies dependence: the signed
        // prime-exponent sums all cancel.
        if let Admissibility::Inadmissible { witness, product_is_minus_one } = &forward {
            prop_assert!(witness.iter().any(|&w| w != 0));
            let mut exponents: std::collections::BTreeMap<u64, i64> = Default::default();
            let mut sign = 1i64;
            for (w, b) in witness.iter().zip(&tuple) {
                if b.numerator() < 0 && w.rem_euclid(2) == 1 {
                    sign = -sign;
                }
                let num = b.numerator().unsigned_abs();
                if num > 1 {
                    for &(p, e) in factorize(num).unwrap().factors() {
                        *exponents.entry(p).or_default() += w * e as i64;
                    }
                }
                if b.denominator() > 1 {
                    for &(p, e) in factorize(b.denominator()).unwrap().factors() {
                        *exponents.entry(p).or_default() -= w * e as i64;
                    }
                }
            }
            prop_assert!(exponents.values().all(|&e| e == 0), "witness fails to cancel");
            prop_assert_eq!(*product_is_minus_one, sign < 0);
        }
    }

    #[test]
    fn sieve_matches_filtered_oracle(lo in 2u64..80_000, width in 1u64..20_000) {
        let hi = lo + width;
        let oracle: Vec<u64> =
            simple_sieve(hi).into_iter().filter(|&p| p >= lo).collect();
        let got: Vec<u64> = primes_in_range(&PrimeRange::all(lo, hi).unwrap()).collect();
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn kernel_and_weil_conjugate_symmetry(pi in 0usize..60, t in 1u64..1_000_000) {
        let primes = small_primes();
        let p = primes[pi % primes.len()];
        let ctx = PrimeContext::new(p).unwrap();
        let q = ctx.q();
        let t = t % (q - 1) + 1;
        if t != q - t {
            let a = kernel_sum(&ctx, t).unwrap();
            let b = kernel_sum(&ctx, q - t).unwrap();
            prop_assert!((a.magnitude - b.magnitude).abs() < 1e-9);
            prop_assert!(a.magnitude <= a.bound);
        }
        let s = t % (p - 1) + 1;
        if s != p - s && s >= 1 {
            let a = weil_power_sum(&ctx, 2, s).unwrap();
            let b = weil_power_sum(&ctx, 2, p - s).unwrap();
            prop_assert!((a.magnitude - b.magnitude).abs() < 1e-9);
        }
    }

    #[test]
    fn rho_stays_under_divisor_bound(pi in 0usize..120, d in 1u64..5, a in 1u64..10_000) {
        let primes = small_primes();
        let p = primes[pi % primes.len()];
        if (p - 1) % d == 0 {
            let ctx = PrimeContext::new(p).unwrap();
            let a = a % (p - 1) + 1;
            let r = coprime_power_sum(&ctx, d, a).unwrap();
            prop_assert!(r.magnitude <= r.hard_bound.unwrap() + 1e-9);
            prop_assert!(r.magnitude <= r.term_count as f64 + 1e-9);
        }
    }
}
