//! Deterministic worker pools. Jobs are indexed up front, workers claim
//! indices from an atomic counter, and results land in their slot, so the
//! merged output never depends on scheduling or worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use ordlab_core::census::{count_segment, finalize, CensusPartial, CensusQuery, CensusReport};
use ordlab_core::indicator::{exhaustive_indicator_check, IndicatorSweepStats};
use ordlab_core::stats::{
    equal_order_probability_exact, sample_stream, ChaCha12Rng, ProbabilityReport, SampledEstimate,
    SeedableGenerator,
};
use ordlab_core::Result;

/// Worker count: an explicit flag wins over ORDLAB_THREADS, default 1.
pub fn resolve_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("ORDLAB_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .filter(|&w| w >= 1)
    .unwrap_or(1)
}

/// Runs `f` over job indices 0..jobs on `workers` threads; results come
/// back in job order.
pub fn run_jobs<T, F>(jobs: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if workers <= 1 || jobs <= 1 {
        return (0..jobs).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers.min(jobs) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs {
                    break;
                }
                let out = f(i);
                slots.lock().expect("worker poisoned the slots")[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .expect("worker poisoned the slots")
        .into_iter()
        .map(|s| s.expect("every job index was claimed"))
        .collect()
}

/// Census across the query's fixed segment grid; segment order in the
/// merge makes the report identical for every worker count.
pub fn census_parallel(query: &CensusQuery, workers: usize) -> Result<CensusReport> {
    let segments = query.segments();
    let partials = run_jobs(segments.len(), workers, |i| {
        let (lo, hi) = segments[i];
        count_segment(query, lo, hi)
    });
    let mut acc: Option<CensusPartial> = None;
    for partial in partials {
        let partial = partial?;
        acc = Some(match acc {
            None => partial,
            Some(prev) => prev.merge(partial),
        });
    }
    finalize(query, acc.expect("grid is never empty"))
}

/// Exhaustive indicator sweep over a prime list; the merge is a
/// commutative fold (counts, flags, max residual).
pub fn indicator_sweep_parallel(primes: &[u64], workers: usize) -> Result<IndicatorSweepStats> {
    let stats = run_jobs(primes.len(), workers, |i| {
        exhaustive_indicator_check(primes[i])
    });
    let mut acc: Option<IndicatorSweepStats> = None;
    for s in stats {
        let s = s?;
        acc = Some(match acc {
            None => s,
            Some(prev) => prev.merge(s),
        });
    }
    acc.ok_or_else(|| ordlab_core::Error::InvalidInput("empty prime list".into()))
}

/// Sampling partitioned over workers: worker i draws its share of the
/// trials from ChaCha stream i of the same seed, so a fixed
/// (seed, worker count) pair reproduces exactly.
pub fn sampled_parallel(
    p: u64,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<ProbabilityReport> {
    let mut report = equal_order_probability_exact(p)?;
    let fi = ordlab_core::arith::factorize(p - 1)?;
    let workers = workers.max(1).min(trials.max(1) as usize);
    let share = trials / workers as u64;
    let extra = trials % workers as u64;
    let hits: u64 = run_jobs(workers, workers, |i| {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let t = share + if (i as u64) < extra { 1 } else { 0 };
        sample_stream(&mut rng, p, t, &fi)
    })
    .into_iter()
    .sum();
    report.sampled = Some(SampledEstimate {
        trials,
        hits,
        estimate: hits as f64 / trials as f64,
        seed,
    });
    Ok(report)
}
