//! Prime censuses of simultaneous prescribed multiplicative orders over
//! [x, 2x] (both ends included): the raw count R, the totient-product
//! main term, the exact four-block decomposition audit for pairs, and an
//! empirical estimator for the progression constants of the main term.
//!
//! Sweeps run over a fixed segment grid. Each segment is a pure function
//! of the query, and partial reports merge associatively in segment
//! order, so a parallel driver reproduces the sequential result exactly.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;

use crate::arith::{factored, gcd, is_admissible, lcm, order_of_residue};
use crate::error::{Error, Result};
use crate::indicator::{decompose_terms, indicator_direct, OrderSpec};
use crate::primes::{sieve_segment, simple_sieve, PrimeRange};
use crate::{arith, numeric::CompensatedSum};

/// How many witness primes a report keeps.
pub const WITNESS_CAP: usize = 32;

/// Numbers spanned by one census segment.
pub const CENSUS_SEGMENT_SPAN: u64 = 1 << 16;

/// A census request: count primes p in [x, 2x] where every base meets its
/// prescribed order (p-1)/d_i. `b_exponent` is the reporting exponent B
/// in the analytic lower bound; it does not gate computation.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusQuery {
    x: u64,
    specs: Vec<OrderSpec>,
    b_exponent: f64,
}

impl CensusQuery {
    pub fn new(x: u64, specs: Vec<OrderSpec>, b_exponent: f64) -> Result<Self> {
        if x < 2 {
            return Err(Error::InvalidInput(format!("census needs x >= 2, got {x}")));
        }
        if specs.is_empty() || specs.len() > 8 {
            return Err(Error::InvalidInput(format!(
                "census needs 1..=8 specs, got {}",
                specs.len()
            )));
        }
        if !b_exponent.is_finite() || b_exponent < 0.0 {
            return Err(Error::InvalidInput(
                "B exponent must be finite and >= 0".into(),
            ));
        }
        let bases: Vec<_> = specs.iter().map(|s| *s.base()).collect();
        if !is_admissible(&bases)?.is_admissible() {
            return Err(Error::InadmissibleTuple);
        }
        Ok(CensusQuery {
            x,
            specs,
            b_exponent,
        })
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn specs(&self) -> &[OrderSpec] {
        &self.specs
    }

    pub fn b_exponent(&self) -> f64 {
        self.b_exponent
    }

    /// "u1:d1;u2:d2;..." echo used by reports.
    pub fn specs_string(&self) -> String {
        let parts: Vec<String> = self.specs.iter().map(|s| format!("{s}")).collect();
        parts.join(";")
    }

    /// lcm of all the indices: the progression filter of the main term.
    pub fn index_lcm(&self) -> u64 {
        self.specs.iter().fold(1, |acc, s| lcm(acc, s.index()))
    }

    /// Product of all the indices, the progression modulus the main-term
    /// statement is phrased with; reported next to the lcm.
    pub fn index_product(&self) -> u64 {
        self.specs.iter().map(|s| s.index()).product()
    }

    /// x / ((log x)^(2Bk+1) (log log x)^k).
    pub fn analytic_lower_bound(&self) -> f64 {
        let x = self.x as f64;
        let k = self.specs.len() as f64;
        let logx = Float::ln(x);
        let loglogx = Float::ln(logx);
        x / (logx.powf(2.0 * self.b_exponent * k + 1.0) * loglogx.powf(k))
    }

    /// The fixed segment grid `[lo, hi]` pairs covering [x, 2x].
    pub fn segments(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let mut lo = self.x;
        let hi = 2 * self.x;
        while lo <= hi {
            let seg_hi = hi.min(lo + (CENSUS_SEGMENT_SPAN - 1));
            out.push((lo, seg_hi));
            lo = seg_hi + 1;
        }
        out
    }
}

/// Partial census over one segment; merges associatively.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusPartial {
    pub prime_count: u64,
    pub matching: u64,
    pub skipped: u64,
    pub main_term: f64,
    /// Signed e1/e2/e3 block totals, tracked for pair queries only.
    pub e_blocks: Option<(f64, f64, f64)>,
    pub witnesses: Vec<u64>,
}

impl CensusPartial {
    fn empty(track_blocks: bool) -> Self {
        CensusPartial {
            prime_count: 0,
            matching: 0,
            skipped: 0,
            main_term: 0.0,
            e_blocks: if track_blocks {
                Some((0.0, 0.0, 0.0))
            } else {
                None
            },
            witnesses: Vec::new(),
        }
    }

    /// Segment-order merge; witness lists concatenate then truncate.
    pub fn merge(mut self, other: CensusPartial) -> CensusPartial {
        self.prime_count += other.prime_count;
        self.matching += other.matching;
        self.skipped += other.skipped;
        self.main_term += other.main_term;
        self.e_blocks = match (self.e_blocks, other.e_blocks) {
            (Some(a), Some(b)) => Some((a.0 + b.0, a.1 + b.1, a.2 + b.2)),
            _ => None,
        };
        self.witnesses.extend(other.witnesses);
        self.witnesses.truncate(WITNESS_CAP);
        self
    }
}

/// The finished census.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub query: CensusQuery,
    pub prime_count_total: u64,
    /// R: primes meeting every order condition.
    pub matching: u64,
    /// Primes where some index fails to divide p-1 or a base is not
    /// invertible; they contribute 0 to R.
    pub skipped: u64,
    /// Totient-product main term over the progression p = 1 mod lcm(d_i).
    pub main_term: f64,
    /// |sum of e3 blocks| for pair queries.
    pub e3_abs: Option<f64>,
    pub analytic_lower_bound: f64,
    /// R over the analytic lower bound.
    pub ratio: f64,
    /// First matching primes, at most `WITNESS_CAP`.
    pub witnesses: Vec<u64>,
}

/// Census over one segment [lo, hi] of the query's grid.
pub fn count_segment(query: &CensusQuery, lo: u64, hi: u64) -> Result<CensusPartial> {
    let base = simple_sieve(arith::isqrt(hi).max(2));
    let track_blocks = query.specs.len() == 2;
    let mut part = CensusPartial::empty(track_blocks);
    let index_lcm = query.index_lcm();
    let mut main_acc = CompensatedSum::new();
    let mut e_acc = (
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
    );
    for p in sieve_segment(lo, hi, &base) {
        part.prime_count += 1;
        // p = 2 has a trivial unit group; tally it as skipped.
        if p < 3 || (p - 1) % index_lcm != 0 {
            part.skipped += 1;
            continue;
        }
        let fi = factored(p - 1);
        let mut residues = Vec::with_capacity(query.specs.len());
        let mut invertible = true;
        for spec in &query.specs {
            match spec.base().reduce_mod(p) {
                Ok(r) => residues.push(r),
                Err(Error::NotInvertible { .. }) => {
                    invertible = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !invertible {
            part.skipped += 1;
            continue;
        }
        // Main term: this prime is on the progression p = 1 mod lcm.
        let mut product = 1.0;
        for spec in &query.specs {
            let phi = fi.quotient(spec.index()).expect("lcm filter").euler_phi();
            product *= phi as f64 / p as f64;
        }
        main_acc.add(product);

        let mut all = true;
        let mut hits = [false; 8];
        for (i, spec) in query.specs.iter().enumerate() {
            let hit = order_of_residue(residues[i], p, &fi) == (p - 1) / spec.index();
            hits[i] = hit;
            all &= hit;
        }
        if track_blocks {
            let phi_u = fi
                .quotient(query.specs[0].index())
                .expect("divides")
                .euler_phi() as i128;
            let phi_v = fi
                .quotient(query.specs[1].index())
                .expect("divides")
                .euler_phi() as i128;
            let pp = p as i128;
            let full_u = pp * hits[0] as i128;
            let full_v = pp * hits[1] as i128;
            let den = (pp * pp) as f64;
            e_acc.0.add((full_u * (full_v - phi_v)) as f64 / den);
            e_acc.1.add(((full_u - phi_u) * full_v) as f64 / den);
            e_acc
                .2
                .add(-((full_u - phi_u) * (full_v - phi_v)) as f64 / den);
        }
        if all {
            part.matching += 1;
            if part.witnesses.len() < WITNESS_CAP {
                part.witnesses.push(p);
            }
        }
    }
    part.main_term = main_acc.total();
    if track_blocks {
        part.e_blocks = Some((e_acc.0.total(), e_acc.1.total(), e_acc.2.total()));
    }
    Ok(part)
}

/// Assembles the report from a fully merged partial.
pub fn finalize(query: &CensusQuery, part: CensusPartial) -> Result<CensusReport> {
    // Witnesses go back through the indicator path as a cross-check.
    for &p in &part.witnesses {
        let ctx = arith::PrimeContext::new(p)?;
        for spec in &query.specs {
            if indicator_direct(spec, &ctx)? != 1 {
                return Err(Error::InvalidInput(format!(
                    "witness {p} failed re-validation for spec {spec}"
                )));
            }
        }
    }
    let bound = query.analytic_lower_bound();
    Ok(CensusReport {
        prime_count_total: part.prime_count,
        matching: part.matching,
        skipped: part.skipped,
        main_term: part.main_term,
        e3_abs: part.e_blocks.map(|(_, _, e3)| Float::abs(e3)),
        analytic_lower_bound: bound,
        ratio: part.matching as f64 / bound,
        witnesses: part.witnesses,
        query: query.clone(),
    })
}

/// Sequential census: folds the segment grid in order.
pub fn count_simultaneous(query: &CensusQuery) -> Result<CensusReport> {
    let mut acc = CensusPartial::empty(query.specs.len() == 2);
    for (lo, hi) in query.segments() {
        acc = acc.merge(count_segment(query, lo, hi)?);
    }
    finalize(query, acc)
}

/// Totient-product main term: primes p in [x, 2x] with p = 1 mod lcm(d, e),
/// summing phi((p-1)/d) phi((p-1)/e) / p^2 with compensated accumulation.
pub fn main_term(x: u64, d: u64, e: u64) -> Result<f64> {
    if x < 10 {
        return Err(Error::InvalidInput(format!(
            "main term needs x >= 10, got {x}"
        )));
    }
    if d == 0 || e == 0 {
        return Err(Error::InvalidInput("main term indices must be >= 1".into()));
    }
    let l = lcm(d, e);
    let range = if l == 1 {
        PrimeRange::all(x, 2 * x)?
    } else {
        PrimeRange::new(x, 2 * x, l, 1 % l)?
    };
    let mut acc = CompensatedSum::new();
    for p in crate::primes::primes_in_range(&range) {
        if p < 3 {
            continue;
        }
        let fi = factored(p - 1);
        let phi_d = fi.quotient(d).expect("progression filter").euler_phi();
        let phi_e = fi.quotient(e).expect("progression filter").euler_phi();
        acc.add(phi_d as f64 * phi_e as f64 / (p as f64 * p as f64));
    }
    Ok(acc.total())
}

/// Decomposition audit for a pair query: per-prime exact identity
/// main + e1 + e2 + e3 = indicator product, block-vanishing checks, and
/// the e3 total against x^(1-2 eps) at eps = 0.1.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub x: u64,
    pub specs: String,
    /// Primes audited (both indices divide p-1, both bases invertible).
    pub audited: u64,
    pub skipped: u64,
    /// R restricted to the audited primes; skipped primes cannot match.
    pub matching: u64,
    pub sum_main: f64,
    pub sum_e1: f64,
    pub sum_e2: f64,
    pub sum_e3: f64,
    /// Every per-prime identity held exactly in integers.
    pub identity_exact: bool,
    /// e1 vanished on every prime where the first order condition failed.
    pub e1_vanishing_ok: bool,
    /// e2 vanished on every prime where the second order condition failed.
    pub e2_vanishing_ok: bool,
    pub e3_abs: f64,
    pub e3_bound: f64,
    pub e3_ratio: f64,
}

pub fn decomposition_audit(query: &CensusQuery) -> Result<AuditReport> {
    if query.specs.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "decomposition audit needs exactly 2 specs, got {}",
            query.specs.len()
        )));
    }
    let (spec_u, spec_v) = (&query.specs[0], &query.specs[1]);
    let mut audited = 0u64;
    let mut skipped = 0u64;
    let mut matching = 0u64;
    let mut sums = (
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
    );
    let mut identity_exact = true;
    let mut e1_vanishing_ok = true;
    let mut e2_vanishing_ok = true;
    for p in crate::primes::primes_in_range(&PrimeRange::all(query.x, 2 * query.x)?) {
        if p < 3 || (p - 1) % spec_u.index() != 0 || (p - 1) % spec_v.index() != 0 {
            skipped += 1;
            continue;
        }
        let ctx = arith::PrimeContext::new(p)?;
        let dec = match decompose_terms(spec_u, spec_v, &ctx) {
            Ok(dec) => dec,
            Err(Error::NotInvertible { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        audited += 1;
        matching += dec.product as u64;
        sums.0.add(dec.main);
        sums.1.add(dec.e1);
        sums.2.add(dec.e2);
        sums.3.add(dec.e3);
        identity_exact &= dec.identity_holds();
        if indicator_direct(spec_u, &ctx)? == 0 {
            e1_vanishing_ok &= dec.e1_num == 0;
        }
        if indicator_direct(spec_v, &ctx)? == 0 {
            e2_vanishing_ok &= dec.e2_num == 0;
        }
    }
    let e3_abs = Float::abs(sums.3.total());
    let e3_bound = (query.x as f64).powf(0.8);
    Ok(AuditReport {
        x: query.x,
        specs: query.specs_string(),
        audited,
        skipped,
        matching,
        sum_main: sums.0.total(),
        sum_e1: sums.1.total(),
        sum_e2: sums.2.total(),
        sum_e3: sums.3.total(),
        identity_exact,
        e1_vanishing_ok,
        e2_vanishing_ok,
        e3_abs,
        e3_bound,
        e3_ratio: e3_abs / e3_bound,
    })
}

/// Empirical probe for the conjectured progression constant: sums the
/// totient product over p = a mod q in [x, 2x] and scales it by
/// phi(q) log x / x. Purely empirical; nothing is asserted about it.
#[derive(Debug, Clone, PartialEq)]
pub struct TotientAvgReport {
    pub x: u64,
    pub q: u64,
    pub a: u64,
    pub indices: Vec<u64>,
    pub primes_in_progression: u64,
    /// Primes where every index divides p-1 (the others contribute 0).
    pub used: u64,
    pub s_sum: f64,
    pub a_hat: f64,
}

pub fn totient_product_avg(x: u64, q: u64, a: u64, indices: &[u64]) -> Result<TotientAvgReport> {
    if x < 10 {
        return Err(Error::InvalidInput(format!(
            "estimator needs x >= 10, got {x}"
        )));
    }
    if q == 0 || (q > 1 && gcd(a, q) != 1) || (q > 1 && a >= q) {
        return Err(Error::InvalidInput(format!(
            "progression {a} mod {q} is not primitive"
        )));
    }
    if indices.is_empty() || indices.iter().any(|&d| d == 0) {
        return Err(Error::InvalidInput(
            "indices must be nonempty and >= 1".into(),
        ));
    }
    let range = if q == 1 {
        PrimeRange::all(x, 2 * x)?
    } else {
        PrimeRange::new(x, 2 * x, q, a % q)?
    };
    let mut primes_in_progression = 0u64;
    let mut used = 0u64;
    let mut acc = CompensatedSum::new();
    for p in crate::primes::primes_in_range(&range) {
        if p < 3 {
            continue;
        }
        primes_in_progression += 1;
        if indices.iter().any(|&d| (p - 1) % d != 0) {
            continue;
        }
        used += 1;
        let fi = factored(p - 1);
        let mut product = 1.0;
        for &d in indices {
            product *= fi.quotient(d).expect("checked").euler_phi() as f64 / (p - 1) as f64;
        }
        acc.add(product);
    }
    let s_sum = acc.total();
    let phi_q = factored(q).euler_phi();
    Ok(TotientAvgReport {
        x,
        q,
        a,
        indices: indices.to_vec(),
        primes_in_progression,
        used,
        s_sum,
        a_hat: s_sum * phi_q as f64 * Float::ln(x as f64) / x as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{mul_mod, RationalBase};

    fn spec(u: i64, d: u64) -> OrderSpec {
        OrderSpec::new(RationalBase::integer(u).unwrap(), d).unwrap()
    }

    fn query(x: u64, specs: &[(i64, u64)]) -> CensusQuery {
        CensusQuery::new(x, specs.iter().map(|&(u, d)| spec(u, d)).collect(), 0.0).unwrap()
    }

    /// Census oracle: brute-force order scans, no factorization machinery.
    fn oracle_count(x: u64, specs: &[(i64, u64)]) -> u64 {
        let primes = simple_sieve(2 * x);
        let mut count = 0;
        'prime: for &p in primes.iter().filter(|&&p| p >= x && p >= 3) {
            for &(u, d) in specs {
                if (p - 1) % d != 0 {
                    continue 'prime;
                }
                let r = ((u % p as i64) + p as i64) as u64 % p;
                if r == 0 {
                    continue 'prime;
                }
                let mut acc = r;
                let mut ord = 1;
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

    #[test]
    fn tiny_census() {
        // x=4: primes 5 and 7; only p=7 passes ((3,1),(2,2)).
        let report = count_simultaneous(&query(4, &[(3, 1), (2, 2)])).unwrap();
        assert_eq!(report.matching, 1);
        assert_eq!(report.witnesses, alloc::vec![7]);
        assert_eq!(report.prime_count_total, 2);
    }

    #[test]
    fn census_matches_oracle() {
        for specs in [
            &[(3i64, 1u64), (2, 2)][..],
            &[(2, 1)][..],
            &[(3, 1), (5, 1), (2, 2)][..],
        ] {
            for x in [100u64, 1000] {
                let got = count_simultaneous(&query(x, specs)).unwrap();
                assert_eq!(
                    got.matching,
                    oracle_count(x, specs),
                    "x={x} specs={specs:?}"
                );
            }
        }
    }

    #[test]
    fn primitive_root_census_x10() {
        // Primes in [10, 20] where 2 is a primitive root: 11, 13, 19.
        let report = count_simultaneous(&query(10, &[(2, 1)])).unwrap();
        assert_eq!(report.matching, 3);
        assert_eq!(report.witnesses, alloc::vec![11, 13, 19]);
    }

    #[test]
    fn monotone_refinement() {
        // Adding a spec never increases R.
        let wide = count_simultaneous(&query(500, &[(3, 1)])).unwrap();
        let narrow = count_simultaneous(&query(500, &[(3, 1), (2, 2)])).unwrap();
        assert!(narrow.matching <= wide.matching);
    }

    #[test]
    fn skipped_primes_are_tallied() {
        // [2, 4]: p = 2 is trivial and p = 3 divides the base.
        let report = count_simultaneous(&query(2, &[(3, 1)])).unwrap();
        assert_eq!(report.prime_count_total, 2);
        assert_eq!(report.skipped, 2);
        assert_eq!(report.matching, 0);
    }

    #[test]
    fn inadmissible_tuple_rejected() {
        let specs = alloc::vec![spec(3, 1), spec(5, 1), spec(15, 1)];
        assert!(matches!(
            CensusQuery::new(100, specs, 0.0),
            Err(Error::InadmissibleTuple)
        ));
    }

    #[test]
    fn segment_merge_equals_sequential() {
        let q = query(1000, &[(3, 1), (2, 2)]);
        let mut acc = CensusPartial::empty(true);
        for (lo, hi) in q.segments() {
            acc = acc.merge(count_segment(&q, lo, hi).unwrap());
        }
        let seq = count_simultaneous(&q).unwrap();
        let merged = finalize(&q, acc).unwrap();
        assert_eq!(seq, merged);
    }

    #[test]
    fn main_term_hand_value() {
        // Primes 11, 13, 17, 19: phi(p-1)^2 / p^2 summed.
        let expected = 16.0 / 121.0 + 16.0 / 169.0 + 64.0 / 289.0 + 36.0 / 361.0;
        assert!((main_term(10, 1, 1).unwrap() - expected).abs() < 1e-12);
        // d = e = 2: all four primes are odd.
        let expected2: f64 = [(11u64, 10u64), (13, 12), (17, 16), (19, 18)]
            .iter()
            .map(|&(p, t)| {
                let phi = factored(t / 2).euler_phi() as f64;
                phi * phi / (p * p) as f64
            })
            .sum();
        assert!((main_term(10, 2, 2).unwrap() - expected2).abs() < 1e-12);
        // Empty progression.
        assert_eq!(main_term(10, 7, 11).unwrap(), 0.0);
        assert!(main_term(9, 1, 1).is_err());
    }

    #[test]
    fn audit_identity() {
        let q = query(100, &[(3, 1), (2, 2)]);
        let audit = decomposition_audit(&q).unwrap();
        assert!(audit.identity_exact);
        assert!(audit.e1_vanishing_ok);
        assert!(audit.e2_vanishing_ok);
        let census = count_simultaneous(&q).unwrap();
        assert_eq!(audit.matching, census.matching);
        let total = audit.sum_main + audit.sum_e1 + audit.sum_e2 + audit.sum_e3;
        assert!((total - audit.matching as f64).abs() < 1e-9);
    }

    #[test]
    fn audit_zero_case() {
        // No prime in [20, 40] has 7 | p-1 and 11 | p-1 at once.
        let q = query(20, &[(3, 7), (2, 11)]);
        let audit = decomposition_audit(&q).unwrap();
        assert_eq!(audit.matching, 0);
        assert_eq!(audit.audited, 0);
        assert_eq!(
            audit.sum_main + audit.sum_e1 + audit.sum_e2 + audit.sum_e3,
            0.0
        );
    }

    #[test]
    fn totient_avg_probe() {
        // q=1, k=1, d=1: S = sum of phi(p-1)/(p-1) over [1000, 2000].
        let report = totient_product_avg(1000, 1, 0, &[1]).unwrap();
        let mut oracle = 0.0;
        for p in simple_sieve(2000).into_iter().filter(|&p| p >= 1000) {
            oracle += factored(p - 1).euler_phi() as f64 / (p - 1) as f64;
        }
        assert!((report.s_sum - oracle).abs() < 1e-9);
        assert_eq!(report.used, report.primes_in_progression);
        // Degenerate progression: no primes = 1 mod big q in range.
        let report = totient_product_avg(10, 1009, 1, &[1]).unwrap();
        assert_eq!(report.s_sum, 0.0);
        assert!(totient_product_avg(1000, 4, 2, &[1]).is_err());
    }

    #[test]
    fn lower_bound_formula() {
        let q = CensusQuery::new(1000, alloc::vec![spec(3, 1), spec(2, 2)], 0.0).unwrap();
        let x = 1000.0f64;
        let expect = x / (x.ln() * x.ln().ln().powi(2));
        assert!((q.analytic_lower_bound() - expect).abs() < 1e-12);
        assert_eq!(q.index_lcm(), 2);
        assert_eq!(q.index_product(), 2);
        assert_eq!(q.specs_string(), "3:1;2:2");
    }
}
