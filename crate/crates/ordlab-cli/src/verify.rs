//! The verification suite behind `ordlab verify` and the acceptance test
//! target: fourteen criteria with pinned ranges and tolerances, each
//! reporting one deterministic pass/fail line. `Quick` trims the ranges
//! to stay under half a minute; `Full` runs the complete budgets.

use ordlab_core::arith::{factorize, gcd, mul_mod, PrimeContext, RationalBase};
use ordlab_core::census::{decomposition_audit, main_term, CensusQuery};
use ordlab_core::expsum::{
    coprime_kernel_sum, coprime_periodic_sum, divisor_count, double_sum, kernel_sum,
    weil_power_sum, PeriodicElement,
};
use ordlab_core::indicator::{indicator_direct, OrderSpec};
use ordlab_core::primes::simple_sieve;
use ordlab_core::stats::{
    avg_order, equal_order_coprime_exhaustive, equal_order_probability_exact,
    equal_order_probability_sampled,
};
use ordlab_core::{Complex64, Result};

use crate::commands::census_rows;
use crate::parallel::{census_parallel, indicator_sweep_parallel};
use crate::report::{fmt12, render_csv};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{:2}] {} {:<24} {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn outcome(id: u32, name: &'static str, pass: bool, detail: String) -> CriterionOutcome {
    CriterionOutcome {
        id,
        name,
        pass,
        detail,
    }
}

fn failure(id: u32, name: &'static str, err: ordlab_core::Error) -> CriterionOutcome {
    outcome(id, name, false, format!("error: {err}"))
}

fn odd_primes_below(limit: u64) -> Vec<u64> {
    simple_sieve(limit.saturating_sub(1))
        .into_iter()
        .filter(|&p| p >= 3)
        .collect()
}

fn spec(u: i64, d: u64) -> OrderSpec {
    OrderSpec::new(RationalBase::integer(u).expect("fixed base"), d).expect("fixed index")
}

/// Census oracle: plain sieve plus multiply-until-one order scans; no
/// factorization, no indicator machinery.
fn census_oracle(x: u64, specs: &[(i64, u64)]) -> u64 {
    let primes = simple_sieve(2 * x);
    let mut count = 0;
    'prime: for &p in primes.iter().filter(|&&p| p >= x.max(3)) {
        for &(u, d) in specs {
            if (p - 1) % d != 0 {
                continue 'prime;
            }
            let r = (u.rem_euclid(p as i64)) as u64;
            if r == 0 {
                continue 'prime;
            }
            let mut acc = r;
            let mut ord = 1u64;
            while acc != 1 {
                acc = mul_mod(acc, r, p);
                ord += 1;
            }
            if ord != (p - 1) / d {
                continue 'prime;
            }
        }
        count += 1;
    }
    count
}

/// 1: rounded additive indicators equal the direct test for all
/// u in [1, p-1], d | p-1, p below the level budget; character and d = 1
/// additive forms included; residuals under 1e-6 p.
pub fn criterion_1(level: Level, workers: usize) -> CriterionOutcome {
    let limit = match level {
        Level::Quick => 500,
        Level::Full => 2000,
    };
    let primes = odd_primes_below(limit);
    match indicator_sweep_parallel(&primes, workers) {
        Ok(stats) => outcome(
            1,
            "indicator-equivalence",
            stats.mismatches == 0,
            format!(
                "p<{limit} checked={} mismatches={} max_residual={}",
                stats.checked,
                stats.mismatches,
                fmt12(stats.max_residual)
            ),
        ),
        Err(e) => failure(1, "indicator-equivalence", e),
    }
}

/// 2: for every d | p-1 the residues of order (p-1)/d number exactly
/// phi((p-1)/d), and every residue has exactly one index.
pub fn criterion_2(level: Level, workers: usize) -> CriterionOutcome {
    let limit = match level {
        Level::Quick => 500,
        Level::Full => 2000,
    };
    let primes = odd_primes_below(limit);
    match indicator_sweep_parallel(&primes, workers) {
        Ok(stats) => outcome(
            2,
            "element-count-identity",
            stats.count_identity_ok && stats.partition_ok,
            format!(
                "p<{limit} count_identity={} partition={}",
                stats.count_identity_ok, stats.partition_ok
            ),
        ),
        Err(e) => failure(2, "element-count-identity", e),
    }
}

/// 3: kernel direct sum vs geometric closed form to 1e-9 over a grid of
/// at least 500 (p, q, t) points, and the folded bound never violated.
pub fn criterion_3(level: Level) -> CriterionOutcome {
    let run = || -> Result<(u64, f64, f64)> {
        let (p_cap, stride) = match level {
            Level::Quick => (700, 8),
            Level::Full => (2600, 6),
        };
        let primes: Vec<u64> = odd_primes_below(p_cap)
            .into_iter()
            .step_by(stride)
            .collect();
        let mut points = 0u64;
        let mut max_gap: f64 = 0.0;
        let mut max_ratio: f64 = 0.0;
        for &p in &primes {
            let ctx = PrimeContext::new(p)?;
            let q = ctx.q();
            let mut ts = vec![1, 2, 3, 5, q / 4, q / 2, 3 * q / 4, q - 3, q - 2, q - 1];
            ts.retain(|&t| t >= 1 && t <= q - 1);
            ts.sort_unstable();
            ts.dedup();
            for t in ts {
                let r = kernel_sum(&ctx, t)?;
                let gap = (r.value - r.closed_form.expect("kernel carries closed form")).norm();
                max_gap = max_gap.max(gap);
                max_ratio = max_ratio.max(r.ratio);
                points += 1;
            }
        }
        Ok((points, max_gap, max_ratio))
    };
    match run() {
        Ok((points, max_gap, max_ratio)) => {
            let enough = match level {
                Level::Quick => points >= 150,
                Level::Full => points >= 500,
            };
            outcome(
                3,
                "kernel-closed-form",
                enough && max_gap <= 1e-9 && max_ratio <= 1.0,
                format!(
                    "points={points} max_gap={} max_bound_ratio={}",
                    fmt12(max_gap),
                    fmt12(max_ratio)
                ),
            )
        }
        Err(e) => failure(3, "kernel-closed-form", e),
    }
}

/// 4: direct vs Moebius-expanded evaluation of the coprime kernel and
/// coprime periodic sums agree to 1e-9 on every grid point.
pub fn criterion_4(level: Level) -> CriterionOutcome {
    let run = || -> Result<(u64, f64)> {
        let (p_cap, stride) = match level {
            Level::Quick => (400, 8),
            Level::Full => (1300, 6),
        };
        let mut points = 0u64;
        let mut max_gap: f64 = 0.0;
        for p in odd_primes_below(p_cap).into_iter().step_by(stride) {
            let ctx = PrimeContext::new(p)?;
            let q = ctx.q();
            let divisors = factorize(p - 1)?.divisors();
            for &d in divisors.iter().filter(|&&d| d <= 12) {
                for t in [1, 3, q - 2] {
                    let r = coprime_kernel_sum(&ctx, t, d)?;
                    let gap = (r.value - r.closed_form.expect("expansion attached")).norm();
                    max_gap = max_gap.max(gap);
                    points += 1;
                }
            }
        }
        for (m, w) in [
            (9u64, 2u64),
            (15, 2),
            (21, 2),
            (33, 5),
            (45, 2),
            (100, 3),
            (255, 2),
        ] {
            let probe = PeriodicElement::new(m, w, 1)?;
            let period = probe.period();
            let mut cutoffs = vec![1, period / 2, period - 1, period];
            cutoffs.retain(|&c| c >= 1 && c <= period);
            cutoffs.dedup();
            for cutoff in cutoffs {
                let elem = PeriodicElement::new(m, w, cutoff)?;
                for a in [1, 2, m - 1] {
                    let r = coprime_periodic_sum(&elem, a)?;
                    let gap = (r.value - r.closed_form.expect("expansion attached")).norm();
                    max_gap = max_gap.max(gap);
                    points += 1;
                }
            }
        }
        Ok((points, max_gap))
    };
    match run() {
        Ok((points, max_gap)) => outcome(
            4,
            "moebius-agreement",
            max_gap <= 1e-9,
            format!("points={points} max_gap={}", fmt12(max_gap)),
        ),
        Err(e) => failure(4, "moebius-agreement", e),
    }
}

/// 5: quadratic Gauss magnitude. The nonzero-argument sum W relates to the
/// complete sum by W + 1, and |W + 1| = sqrt(p) to 1e-6 for every odd
/// prime under the budget and every shift a.
pub fn criterion_5(level: Level) -> CriterionOutcome {
    let limit = match level {
        Level::Quick => 200,
        Level::Full => 500,
    };
    let run = || -> Result<(u64, f64)> {
        let mut checked = 0u64;
        let mut worst: f64 = 0.0;
        for p in odd_primes_below(limit) {
            let ctx = PrimeContext::new(p)?;
            let root_p = (p as f64).sqrt();
            for a in 1..p {
                let w = weil_power_sum(&ctx, 2, a)?;
                let complete = (w.value + Complex64::new(1.0, 0.0)).norm();
                worst = worst.max((complete - root_p).abs());
                checked += 1;
            }
        }
        Ok((checked, worst))
    };
    match run() {
        Ok((checked, worst)) => outcome(
            5,
            "quadratic-gauss",
            worst <= 1e-6,
            format!("p<{limit} checked={checked} max_deviation={}", fmt12(worst)),
        ),
        Err(e) => failure(5, "quadratic-gauss", e),
    }
}

/// 6: double-sum collapse to p * indicator - phi((p-1)/d) within 1e-6 p
/// for p under the budget, d | p-1 with d <= 6, u in {2, 3, 5}.
pub fn criterion_6(level: Level) -> CriterionOutcome {
    let limit = match level {
        Level::Quick => 300,
        Level::Full => 1000,
    };
    let run = || -> Result<(u64, f64)> {
        let mut cases = 0u64;
        let mut worst: f64 = 0.0;
        for p in odd_primes_below(limit) {
            let ctx = PrimeContext::new(p)?;
            let fi = ctx.p_minus_one();
            for d in fi.divisors().into_iter().filter(|&d| d <= 6) {
                for u in [2i64, 3, 5] {
                    if u.rem_euclid(p as i64) == 0 {
                        continue;
                    }
                    let s = spec(u, d);
                    let r = double_sum(&s, &ctx)?;
                    let hit = indicator_direct(&s, &ctx)? as i64;
                    let phi = fi.quotient(d).expect("d | p-1").euler_phi() as i64;
                    let expected = (p as i64 * hit - phi) as f64;
                    let gap = (r.value - Complex64::new(expected, 0.0)).norm();
                    worst = worst.max(gap / p as f64);
                    cases += 1;
                }
            }
        }
        Ok((cases, worst))
    };
    match run() {
        Ok((cases, worst)) => outcome(
            6,
            "double-sum-collapse",
            worst <= 1e-6,
            format!("p<{limit} cases={cases} max_gap_over_p={}", fmt12(worst)),
        ),
        Err(e) => failure(6, "double-sum-collapse", e),
    }
}

/// 7: the complete coprime sum never exceeds tau0((p-1)/d)(sqrt(p) + 1);
/// the soft sqrt(p) log^3 p ratio is reported for p >= 100.
pub fn criterion_7(level: Level) -> CriterionOutcome {
    let limit = match level {
        Level::Quick => 800,
        Level::Full => 3000,
    };
    let run = || -> Result<(u64, u64, f64)> {
        let mut checked = 0u64;
        let mut violations = 0u64;
        let mut soft_ratio: f64 = 0.0;
        for p in odd_primes_below(limit) {
            let ctx = PrimeContext::new(p)?;
            let mut shifts = vec![1, 2, 3, p - 1];
            shifts.retain(|&a| a >= 1 && a <= p - 1);
            shifts.sort_unstable();
            shifts.dedup();
            for d in [1u64, 2, 3, 4] {
                if (p - 1) % d != 0 {
                    continue;
                }
                for &a in &shifts {
                    let r = ordlab_core::expsum::coprime_power_sum(&ctx, d, a)?;
                    let hard = divisor_count((p - 1) / d) as f64 * ((p as f64).sqrt() + 1.0);
                    violations += (r.magnitude > hard) as u64;
                    if p >= 100 {
                        soft_ratio = soft_ratio.max(r.ratio);
                    }
                    checked += 1;
                }
            }
        }
        Ok((checked, violations, soft_ratio))
    };
    match run() {
        Ok((checked, violations, soft)) => outcome(
            7,
            "rho-divisor-bound",
            violations == 0,
            format!(
                "p<{limit} checked={checked} violations={violations} max_soft_ratio={}",
                fmt12(soft)
            ),
        ),
        Err(e) => failure(7, "rho-divisor-bound", e),
    }
}

/// 8: census equals the brute-force oracle for the three pinned spec sets
/// at each x in the level's ladder.
pub fn criterion_8(level: Level, workers: usize) -> CriterionOutcome {
    let ladder: &[u64] = match level {
        Level::Quick => &[100, 1000],
        Level::Full => &[100, 1000, 10_000],
    };
    let spec_sets: [&[(i64, u64)]; 3] = [&[(3, 1), (2, 2)], &[(2, 1)], &[(3, 1), (5, 1), (2, 2)]];
    let run = || -> Result<(bool, String)> {
        let mut all_equal = true;
        let mut parts = Vec::new();
        for specs in spec_sets {
            for &x in ladder {
                let q = CensusQuery::new(x, specs.iter().map(|&(u, d)| spec(u, d)).collect(), 0.0)?;
                let got = census_parallel(&q, workers)?.matching;
                let want = census_oracle(x, specs);
                all_equal &= got == want;
                parts.push(format!("x={x}:{got}/{want}"));
            }
        }
        Ok((all_equal, parts.join(" ")))
    };
    match run() {
        Ok((all_equal, detail)) => outcome(8, "census-oracle", all_equal, detail),
        Err(e) => failure(8, "census-oracle", e),
    }
}

/// 9: positivity surrogate: R(x, (u,1),(2,2)) > 0 for u in {3, 5, 7}
/// across the x ladder; the ratio against x/(log x (log log x)^2) is
/// reported without a threshold.
pub fn criterion_9(level: Level, workers: usize) -> CriterionOutcome {
    let ladder: &[u64] = match level {
        Level::Quick => &[1000, 10_000],
        Level::Full => &[1000, 10_000, 100_000],
    };
    let run = || -> Result<(bool, String)> {
        let mut positive = true;
        let mut parts = Vec::new();
        for u in [3i64, 5, 7] {
            for &x in ladder {
                let q = CensusQuery::new(x, vec![spec(u, 1), spec(2, 2)], 0.0)?;
                let report = census_parallel(&q, workers)?;
                positive &= report.matching > 0;
                parts.push(format!(
                    "u={u},x={x}:R={},ratio={}",
                    report.matching,
                    fmt12(report.ratio)
                ));
            }
        }
        Ok((positive, parts.join(" ")))
    };
    match run() {
        Ok((positive, detail)) => outcome(9, "positivity-surrogate", positive, detail),
        Err(e) => failure(9, "positivity-surrogate", e),
    }
}

/// 10: the audited block sums reproduce R exactly and the e1/e2 blocks
/// vanish wherever the matching indicator does.
pub fn criterion_10(_level: Level) -> CriterionOutcome {
    let run = || -> Result<(bool, String)> {
        let mut ok = true;
        let mut parts = Vec::new();
        for x in [100u64, 1000] {
            let q = CensusQuery::new(x, vec![spec(3, 1), spec(2, 2)], 0.0)?;
            let audit = decomposition_audit(&q)?;
            let total = audit.sum_main + audit.sum_e1 + audit.sum_e2 + audit.sum_e3;
            let float_gap = (total - audit.matching as f64).abs();
            ok &= audit.identity_exact
                && audit.e1_vanishing_ok
                && audit.e2_vanishing_ok
                && float_gap < 1e-9;
            parts.push(format!(
                "x={x}:R={} exact={} e1_ok={} e2_ok={} e3_ratio={}",
                audit.matching,
                audit.identity_exact,
                audit.e1_vanishing_ok,
                audit.e2_vanishing_ok,
                fmt12(audit.e3_ratio)
            ));
        }
        Ok((ok, parts.join(" ")))
    };
    match run() {
        Ok((ok, detail)) => outcome(10, "decomposition-audit", ok, detail),
        Err(e) => failure(10, "decomposition-audit", e),
    }
}

/// 11: main term equals the four-prime hand value at x = 10 to 1e-12 and
/// an independent trial-division oracle at the level's x to 1e-9.
pub fn criterion_11(level: Level) -> CriterionOutcome {
    let x_big = match level {
        Level::Quick => 1000,
        Level::Full => 10_000,
    };
    let run = || -> Result<(bool, String)> {
        let hand = 16.0 / 121.0 + 16.0 / 169.0 + 64.0 / 289.0 + 36.0 / 361.0;
        let at_ten = main_term(10, 1, 1)?;
        let hand_ok = (at_ten - hand).abs() <= 1e-12;

        // Independent oracle: trial-division phi, naive accumulation.
        let phi_naive = |mut n: u64| -> u64 {
            let mut phi = n;
            let mut f = 2u64;
            while f * f <= n {
                if n % f == 0 {
                    phi -= phi / f;
                    while n % f == 0 {
                        n /= f;
                    }
                }
                f += 1;
            }
            if n > 1 {
                phi -= phi / n;
            }
            phi
        };
        let mut worst: f64 = 0.0;
        for (d, e) in [(1u64, 1u64), (2, 2), (2, 3)] {
            let l = d * e / gcd(d, e);
            let mut oracle = 0.0;
            for p in simple_sieve(2 * x_big)
                .into_iter()
                .filter(|&p| p >= x_big.max(3))
            {
                if (p - 1) % l != 0 {
                    continue;
                }
                oracle += phi_naive((p - 1) / d) as f64 * phi_naive((p - 1) / e) as f64
                    / (p as f64 * p as f64);
            }
            worst = worst.max((main_term(x_big, d, e)? - oracle).abs());
        }
        let detail = format!(
            "x=10 gap={} x={x_big} max_oracle_gap={}",
            fmt12((at_ten - hand).abs()),
            fmt12(worst)
        );
        Ok((hand_ok && worst <= 1e-9, detail))
    };
    match run() {
        Ok((ok, detail)) => outcome(11, "main-term-oracle", ok, detail),
        Err(e) => failure(11, "main-term-oracle", e),
    }
}

/// 12: the probability chain in exact integers for every prime under the
/// budget, the pair-count cross-check under 200, and the seeded sampler
/// within four sigma of the exhaustive coprime reference at p = 7, 101.
pub fn criterion_12(level: Level, seed: u64) -> CriterionOutcome {
    let (p_cap, pair_cap, trials) = match level {
        Level::Quick => (2000u64, 100u64, 10_000u64),
        Level::Full => (10_000, 200, 100_000),
    };
    let run = || -> Result<(bool, String)> {
        let mut chain_ok = true;
        let mut pair_ok = true;
        let mut chain_checked = 0u64;
        for p in odd_primes_below(p_cap) {
            let r = equal_order_probability_exact(p)?;
            let den = (p - 1) as u128 * (p - 1) as u128;
            let scale = den / r.alpha2_den;
            let num = r.alpha2_num * scale; // sum of phi(d)^2, unreduced
            let phi = factorize(p - 1)?.euler_phi() as u128;
            chain_ok &= num >= 1;
            chain_ok &= num <= phi * (p - 1) as u128;
            chain_ok &= 2 * phi <= (p - 1) as u128;
            chain_checked += 1;
            if p < pair_cap {
                // Uniform-pair oracle: count equal-order pairs directly.
                let ctx = PrimeContext::new(p)?;
                let orders: Vec<u64> = (1..p).map(|u| ctx.order_of_residue(u)).collect();
                let mut equal = 0u128;
                for &a in &orders {
                    for &b in &orders {
                        equal += (a == b) as u128;
                    }
                }
                pair_ok &= equal == num;
            }
        }
        let mut sampler_ok = true;
        let mut sampler_parts = Vec::new();
        for p in [7u64, 101] {
            let (_, _, reference) = equal_order_coprime_exhaustive(p)?;
            let est = equal_order_probability_sampled(p, trials, seed)?
                .sampled
                .expect("sampled run")
                .estimate;
            let sigma = (reference * (1.0 - reference) / trials as f64).sqrt();
            sampler_ok &= (est - reference).abs() <= 4.0 * sigma;
            sampler_parts.push(format!(
                "p={p}:est={} ref={} sigma={}",
                fmt12(est),
                fmt12(reference),
                fmt12(sigma)
            ));
        }
        let detail = format!(
            "p<{p_cap} chain_checked={chain_checked} chain={chain_ok} pairs={pair_ok} {}",
            sampler_parts.join(" ")
        );
        Ok((chain_ok && pair_ok && sampler_ok, detail))
    };
    match run() {
        Ok((ok, detail)) => outcome(12, "probability-chain", ok, detail),
        Err(e) => failure(12, "probability-chain", e),
    }
}

/// 13: T_2(10) = 1.5 exactly, oracle equality at x = 1000 for u in
/// {2, 3, 5}, and growth from x = 1000 to x = 10000.
pub fn criterion_13(_level: Level) -> CriterionOutcome {
    let run = || -> Result<(bool, String)> {
        let two = RationalBase::integer(2).expect("2");
        let exact_ok = avg_order(10, &two)? == 1.5;
        let mut oracle_ok = true;
        let mut growth_ok = true;
        let mut parts = vec![format!("T_2(10)=1.5:{exact_ok}")];
        for u in [2i64, 3, 5] {
            let base = RationalBase::integer(u).expect("fixed");
            // Brute multiply-scan oracle at x = 1000.
            let mut total = 0u64;
            for n in 2..=1000u64 {
                if gcd(u.unsigned_abs(), n) != 1 {
                    continue;
                }
                let r = u.rem_euclid(n as i64) as u64;
                let mut acc = r % n;
                let mut ord = 1u64;
                while acc != 1 {
                    acc = mul_mod(acc, r, n);
                    ord += 1;
                }
                total += ord;
            }
            let at_1000 = avg_order(1000, &base)?;
            oracle_ok &= at_1000 == total as f64 / 1000.0;
            let at_10000 = avg_order(10_000, &base)?;
            growth_ok &= at_10000 > at_1000;
            parts.push(format!(
                "u={u}:T(1e3)={} T(1e4)={}",
                fmt12(at_1000),
                fmt12(at_10000)
            ));
        }
        Ok((exact_ok && oracle_ok && growth_ok, parts.join(" ")))
    };
    match run() {
        Ok((ok, detail)) => outcome(13, "avg-order-oracle", ok, detail),
        Err(e) => failure(13, "avg-order-oracle", e),
    }
}

/// 14: worker-count determinism: the rendered census report and the
/// merged indicator sweep are byte-identical for 1 and 4 workers.
pub fn criterion_14(_level: Level) -> CriterionOutcome {
    let run = || -> Result<(bool, String)> {
        let q = CensusQuery::new(1000, vec![spec(3, 1), spec(2, 2)], 0.0)?;
        let csv_one = render_csv(&census_rows(&census_parallel(&q, 1)?));
        let csv_four = render_csv(&census_rows(&census_parallel(&q, 4)?));
        let census_same = csv_one == csv_four;
        let primes = odd_primes_below(300);
        let sweep_one = indicator_sweep_parallel(&primes, 1)?;
        let sweep_four = indicator_sweep_parallel(&primes, 4)?;
        let sweep_same = sweep_one == sweep_four;
        Ok((
            census_same && sweep_same,
            format!("census={census_same} sweep={sweep_same}"),
        ))
    };
    match run() {
        Ok((ok, detail)) => outcome(14, "worker-determinism", ok, detail),
        Err(e) => failure(14, "worker-determinism", e),
    }
}

/// Runs the whole suite in order.
pub fn run_suite(level: Level, workers: usize, seed: u64) -> Vec<CriterionOutcome> {
    vec![
        criterion_1(level, workers),
        criterion_2(level, workers),
        criterion_3(level),
        criterion_4(level),
        criterion_5(level),
        criterion_6(level),
        criterion_7(level),
        criterion_8(level, workers),
        criterion_9(level, workers),
        criterion_10(level),
        criterion_11(level),
        criterion_12(level, seed),
        criterion_13(level),
        criterion_14(level),
    ]
}

/// The printable report: one line per criterion plus a summary line.
pub fn render_suite(outcomes: &[CriterionOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        out.push_str(&o.line());
        out.push('\n');
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    out.push_str(&format!("{} criteria, {} failed\n", outcomes.len(), failed));
    out
}
