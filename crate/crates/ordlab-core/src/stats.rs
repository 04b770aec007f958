//! Equal-order statistics: the exact probability that two uniform
//! residues share a multiplicative order, a seeded sampling estimator
//! conditioned on coprimality, and the empirical average multiplicative
//! order of a fixed integer over composite moduli.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::arith::{factorize, gcd, order_of_residue, pow_mod_raw, RationalBase};
use crate::error::{Error, Result};

pub use rand_chacha::rand_core::SeedableRng as SeedableGenerator;
pub use rand_chacha::ChaCha12Rng;

/// Exact and sampled equal-order probabilities for one prime.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityReport {
    pub p: u64,
    /// Reduced fraction sum over d | p-1 of phi(d)^2 / (p-1)^2.
    pub alpha2_num: u128,
    pub alpha2_den: u128,
    pub alpha2: f64,
    /// phi(p-1) / (p-1), the upper end of the provable chain.
    pub phi_ratio: f64,
    pub sampled: Option<SampledEstimate>,
}

/// One sampling run; reproducible from the echoed seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledEstimate {
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub seed: u64,
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Exact probability that two independent uniform residues in [1, p-1]
/// share an order: sum over d | p-1 of phi(d)^2 / (p-1)^2. Verifies the
/// provable chain 1/(p-1)^2 <= alpha2 <= phi(p-1)/(p-1) <= 1/2 and the
/// totient identity sum of phi(d) = p-1 along the way.
pub fn equal_order_probability_exact(p: u64) -> Result<ProbabilityReport> {
    if p < 3 || !crate::arith::is_prime(p) {
        return Err(Error::InvalidInput(format!(
            "needs a prime p >= 3, got {p}"
        )));
    }
    let fi = factorize(p - 1)?;
    let mut phi_square_sum: u128 = 0;
    let mut phi_sum: u64 = 0;
    for &d in fi.divisors().iter() {
        let phi = fi.quotient((p - 1) / d).expect("divisor").euler_phi();
        phi_square_sum += phi as u128 * phi as u128;
        phi_sum += phi;
    }
    assert_eq!(phi_sum, p - 1, "totient divisor identity failed at p = {p}");

    let den = (p - 1) as u128 * (p - 1) as u128;
    let phi_total = fi.euler_phi();
    // Chain, exactly in integers: 1 <= sum phi(d)^2 <= phi(p-1)(p-1) and
    // 2 phi(p-1) <= p-1.
    assert!(phi_square_sum >= 1);
    assert!(phi_square_sum <= phi_total as u128 * (p - 1) as u128);
    assert!(2 * phi_total <= p - 1);

    let g = gcd_u128(phi_square_sum, den);
    Ok(ProbabilityReport {
        p,
        alpha2_num: phi_square_sum / g,
        alpha2_den: den / g,
        alpha2: phi_square_sum as f64 / den as f64,
        phi_ratio: phi_total as f64 / (p - 1) as f64,
        sampled: None,
    })
}

/// Exhaustive coprime-conditioned reference: over pairs (a, b) in
/// [2, p-1]^2 with gcd(a, b) = 1, the fraction with equal orders.
/// Returns (equal pairs, coprime pairs, ratio). Quadratic work; capped.
pub fn equal_order_coprime_exhaustive(p: u64) -> Result<(u64, u64, f64)> {
    if p < 5 || !crate::arith::is_prime(p) {
        return Err(Error::InvalidInput(format!(
            "needs a prime p >= 5, got {p}"
        )));
    }
    if p > 1000 {
        return Err(Error::InvalidInput(format!(
            "exhaustive pair scan capped at p <= 1000, got {p}"
        )));
    }
    let fi = factorize(p - 1)?;
    let orders: Vec<u64> = (0..p)
        .map(|u| {
            if u < 2 {
                0
            } else {
                order_of_residue(u, p, &fi)
            }
        })
        .collect();
    let mut equal = 0u64;
    let mut total = 0u64;
    for a in 2..p {
        for b in 2..p {
            if gcd(a, b) == 1 {
                total += 1;
                equal += (orders[a as usize] == orders[b as usize]) as u64;
            }
        }
    }
    Ok((equal, total, equal as f64 / total as f64))
}

/// Sampled estimator honoring the coprimality conditioning: draws pairs
/// uniformly from [2, p-1]^2, rejects pairs sharing a factor, and counts
/// equal orders. ChaCha12 seeded from the echoed 64-bit seed.
pub fn equal_order_probability_sampled(
    p: u64,
    trials: u64,
    seed: u64,
) -> Result<ProbabilityReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("sampling needs trials >= 1".into()));
    }
    if p < 5 {
        return Err(Error::InvalidInput(format!(
            "sampling needs p >= 5 so coprime pairs exist in [2, p-1]^2, got {p}"
        )));
    }
    let mut report = equal_order_probability_exact(p)?;
    let fi = factorize(p - 1)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let hits = sample_stream(&mut rng, p, trials, &fi);
    report.sampled = Some(SampledEstimate {
        trials,
        hits,
        estimate: hits as f64 / trials as f64,
        seed,
    });
    Ok(report)
}

/// One worker's share of the sampling stream. Callers that partition
/// trials across workers give each worker its own ChaCha stream id so a
/// fixed (seed, worker count) pair reproduces exactly.
pub fn sample_stream(
    rng: &mut ChaCha12Rng,
    p: u64,
    trials: u64,
    p_minus_one: &crate::arith::FactoredInteger,
) -> u64 {
    let mut hits = 0u64;
    for _ in 0..trials {
        let (a, b) = loop {
            let a = rng.gen_range(2..=p - 1);
            let b = rng.gen_range(2..=p - 1);
            if gcd(a, b) == 1 {
                break (a, b);
            }
        };
        hits += (order_of_residue(a, p, p_minus_one) == order_of_residue(b, p, p_minus_one)) as u64;
    }
    hits
}

/// Cap on the average-order sweep.
pub const AVG_ORDER_BUDGET: u64 = 1_000_000;

/// Average multiplicative order of an integer u over moduli n in [2, x]
/// coprime to u: (1/x) sum of ord_n(u). Orders in (Z/n)^x come from the
/// lcm of the prime-power component orders, with a smallest-prime-factor
/// sieve doing all the factoring.
pub fn avg_order(x: u64, u: &RationalBase) -> Result<f64> {
    if u.denominator() != 1 {
        return Err(Error::InvalidInput(format!(
            "average order needs an integer base, got {u}"
        )));
    }
    if x < 2 || x > AVG_ORDER_BUDGET {
        return Err(Error::InvalidInput(format!(
            "average order needs 2 <= x <= {AVG_ORDER_BUDGET}, got {x}"
        )));
    }
    let u_abs = u.numerator().unsigned_abs();
    // spf[n] = smallest prime factor of n.
    let n_max = x as usize;
    let mut spf = vec![0u32; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let order_mod_prime_power = |residue: u64, q: u64, e: u32, modulus: u64| -> u64 {
        // Group exponent: phi(q^e) for odd q, halved once more for 2^e, e >= 3.
        let lambda = if q == 2 {
            match e {
                1 => 1,
                2 => 2,
                _ => 1u64 << (e - 2),
            }
        } else {
            q.pow(e - 1) * (q - 1)
        };
        let mut k = lambda;
        let mut l = lambda;
        while l > 1 {
            let ell = spf[l as usize] as u64;
            while k % ell == 0 && pow_mod_raw(residue, k / ell, modulus) == 1 {
                k /= ell;
            }
            while l % ell == 0 {
                l /= ell;
            }
        }
        k
    };
    let mut total: u64 = 0;
    for n in 2..=x {
        if gcd(u_abs, n) != 1 {
            continue;
        }
        // Component orders over the prime powers of n.
        let mut rest = n;
        let mut ord = 1u64;
        while rest > 1 {
            let q = spf[rest as usize] as u64;
            let mut e = 0u32;
            let mut modulus = 1u64;
            while rest % q == 0 {
                rest /= q;
                e += 1;
                modulus *= q;
            }
            let residue = (u.numerator().rem_euclid(modulus as i64)) as u64;
            let component = if modulus == 2 {
                1
            } else {
                order_mod_prime_power(residue, q, e, modulus)
            };
            ord = ord / gcd(ord, component) * component;
        }
        total += ord;
    }
    Ok(total as f64 / x as f64)
}
