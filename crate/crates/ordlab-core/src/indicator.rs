//! Indicators for "u has order (p-1)/d": the direct order test, the
//! divisor-dependent character sum evaluated through discrete logarithms,
//! and the divisor-free additive double sum. The additive form expands a
//! product of two indicators into frequency blocks whose partial sums are
//! computed exactly in integer arithmetic.
//!
//! The additive double sums use the full inner range k in [0, p-1] with a
//! 1/p normalization, which is what character orthogonality needs for a
//! 0/1 detector, together with the outer range n in [1, (p-1)/d].

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arith::{
    discrete_log, gcd, mul_mod, order_of_residue, FactoredInteger, PrimeContext, RationalBase,
};
use crate::error::{Error, Result};
use crate::numeric::{PairwiseSum, Roots};

/// A base together with a prescribed index d, meaning ord_p(u) = (p-1)/d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderSpec {
    base: RationalBase,
    index: u64,
}

impl OrderSpec {
    pub fn new(base: RationalBase, index: u64) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidInput("order index must be >= 1".into()));
        }
        Ok(OrderSpec { base, index })
    }

    pub fn base(&self) -> &RationalBase {
        &self.base
    }

    pub fn index(&self) -> u64 {
        self.index
    }
}

impl core::fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}:{}", self.base, self.index)
    }
}

impl core::str::FromStr for OrderSpec {
    type Err = Error;

    /// Parses "u:d" with u a rational "n" or "n/m".
    fn from_str(s: &str) -> Result<Self> {
        let (u, d) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("spec '{s}' is not of the form u:d")))?;
        let base: RationalBase = u.parse()?;
        let index: u64 = d
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("spec index '{d}' is not an integer")))?;
        OrderSpec::new(base, index)
    }
}

/// A floating indicator evaluation: the raw sum, the rounded 0/1 value,
/// and how far the sum sat from that bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorValue {
    pub value: f64,
    pub rounded: u8,
    pub residual: f64,
    /// Total summed terms (outer times inner).
    pub term_count: u64,
}

impl IndicatorValue {
    /// Rounds at 1/2. A residual above the budget means the identity the
    /// sum realizes is broken, so it is an error, not a warning.
    fn checked(value: f64, term_count: u64, budget: f64) -> Result<Self> {
        let rounded = if value >= 0.5 { 1 } else { 0 };
        let residual = (value - rounded as f64).abs();
        if residual > budget {
            return Err(Error::ResidualExceeded { residual, budget });
        }
        Ok(IndicatorValue {
            value,
            rounded,
            residual,
            term_count,
        })
    }
}

/// Shared semantics of every representation: d divides p-1 and the
/// residue has order exactly (p-1)/d.
pub(crate) fn direct_order_match(residue: u64, d: u64, p: u64, fi: &FactoredInteger) -> bool {
    (p - 1) % d == 0 && order_of_residue(residue, p, fi) == (p - 1) / d
}

/// Ground truth for the two sum representations: 1 iff d | p-1 and
/// ord_p(base) = (p-1)/d.
pub fn indicator_direct(spec: &OrderSpec, ctx: &PrimeContext) -> Result<u8> {
    let residue = spec.base.reduce_mod(ctx.p())?;
    Ok(direct_order_match(residue, spec.index, ctx.p(), ctx.p_minus_one()) as u8)
}

/// Divisor-dependent character-sum indicator for primitive roots:
/// (phi(p-1)/(p-1)) * sum over d | p-1 of (mu(d)/phi(d)) * sum of chi(u)
/// over the phi(d) characters of exact order d. Characters are evaluated
/// through the discrete logarithm L of u, so chi_j(u) = e(jL/d).
pub fn indicator_char_sum(u: u64, ctx: &PrimeContext) -> Result<IndicatorValue> {
    let p = ctx.p();
    if u == 0 || u >= p {
        return Err(Error::InvalidInput(format!(
            "residue {u} outside [1, {}]",
            p - 1
        )));
    }
    let log_u = discrete_log(ctx, u)?;
    let fi = ctx.p_minus_one();
    let phi_total = fi.euler_phi();
    let mut acc = Complex64::new(0.0, 0.0);
    for &d in fi.divisors().iter() {
        let fd = fi.quotient((p - 1) / d).expect("divisor of p-1");
        let mu = fd.moebius();
        if mu == 0 {
            continue;
        }
        let phi_d = fd.euler_phi();
        // Sum over characters of exact order d at tau^L: e(j*L/d) for
        // j coprime to d (a Ramanujan-type sum).
        let roots = Roots::for_modulus(d);
        let mut char_sum = Complex64::new(0.0, 0.0);
        for j in 1..=d {
            if gcd(j, d) == 1 {
                char_sum += roots.get(mul_mod(j % d, log_u % d, d));
            }
        }
        acc += char_sum * (mu as f64 / phi_d as f64);
    }
    acc *= phi_total as f64 / (p - 1) as f64;
    let rounded_target = if acc.re >= 0.5 { 1.0 } else { 0.0 };
    let distance = (acc - rounded_target).norm();
    let value = IndicatorValue::checked(acc.re, p - 1, 1e-6 * p as f64)?;
    if distance > 1e-6 * p as f64 {
        return Err(Error::ResidualExceeded {
            residual: distance,
            budget: 1e-6 * p as f64,
        });
    }
    Ok(value)
}

/// Divisor-free indicator for primitive roots: the d = 1 additive form.
pub fn indicator_exp_sum(u: u64, ctx: &PrimeContext) -> Result<IndicatorValue> {
    indicator_exp_sum_residue(u, 1, ctx)
}

/// Divisor-free indicator for "ord_p(base) = (p-1)/d" with the base given
/// as an `OrderSpec`.
pub fn indicator_exp_sum_indexed(spec: &OrderSpec, ctx: &PrimeContext) -> Result<IndicatorValue> {
    let residue = spec.base.reduce_mod(ctx.p())?;
    indicator_exp_sum_residue(residue, spec.index, ctx)
}

/// sum over n in [1, (p-1)/d] coprime to (p-1)/d of
/// (1/p) sum over k in [0, p-1] of e((tau^(dn) - u) k / p).
pub fn indicator_exp_sum_residue(u: u64, d: u64, ctx: &PrimeContext) -> Result<IndicatorValue> {
    let p = ctx.p();
    if u == 0 || u >= p {
        return Err(Error::InvalidInput(format!(
            "residue {u} outside [1, {}]",
            p - 1
        )));
    }
    if (p - 1) % d != 0 {
        return Err(Error::IndexNotDividing { d, p });
    }
    let m = (p - 1) / d;
    let roots = Roots::for_modulus(p);
    let mut outer = PairwiseSum::new();
    let mut power = 1u64; // tau^(d*n) walked incrementally
    let step = ctx.pow_tau(d);
    let mut terms = 0u64;
    for n in 1..=m {
        power = crate::arith::mul_mod(power, step, p);
        if gcd(n, m) != 1 {
            continue;
        }
        let w = (power + p - u) % p;
        // Inner additive-character sum at frequency w, summed directly.
        let mut inner = Complex64::new(0.0, 0.0);
        let mut idx = 0u64;
        for _ in 0..p {
            inner += roots.get(idx);
            idx += w;
            if idx >= p {
                idx -= p;
            }
        }
        outer.push(inner);
        terms += p;
    }
    let value = outer.total() / p as f64;
    let rounded_target = if value.re >= 0.5 { 1.0 } else { 0.0 };
    let distance = (value - rounded_target).norm();
    if distance > 1e-6 * p as f64 {
        return Err(Error::ResidualExceeded {
            residual: distance,
            budget: 1e-6 * p as f64,
        });
    }
    IndicatorValue::checked(value.re, terms, 1e-6 * p as f64)
}

/// The four frequency blocks of a product of two indicators, computed
/// exactly: each full additive-character sum collapses to p times a hit
/// count, so every block is a ratio of integers over p^2.
///
/// `main` is the (0,0) block. `e1` couples the complete u-frequency sum
/// (which vanishes exactly when the u order condition fails) with the
/// nonzero v-frequencies; `e2` couples the nonzero u-frequencies with the
/// complete v-frequency sum; `e3` is minus the product of the two nonzero
/// blocks, which makes the four parts add up to the indicator product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermDecomposition {
    pub main: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    /// Exact numerators over denominator p^2.
    pub main_num: i128,
    pub e1_num: i128,
    pub e2_num: i128,
    pub e3_num: i128,
    pub denominator: i128,
    /// indicator(u,d) * indicator(v,e).
    pub product: u8,
}

impl TermDecomposition {
    /// main + e1 + e2 + e3 = product, checked in integers.
    pub fn identity_holds(&self) -> bool {
        self.main_num + self.e1_num + self.e2_num + self.e3_num
            == self.product as i128 * self.denominator
    }
}

pub fn decompose_terms(
    spec_u: &OrderSpec,
    spec_v: &OrderSpec,
    ctx: &PrimeContext,
) -> Result<TermDecomposition> {
    let p = ctx.p();
    let fi = ctx.p_minus_one();
    for spec in [spec_u, spec_v] {
        if (p - 1) % spec.index != 0 {
            return Err(Error::IndexNotDividing { d: spec.index, p });
        }
    }
    let ru = spec_u.base.reduce_mod(p)?;
    let rv = spec_v.base.reduce_mod(p)?;
    let hit_u = direct_order_match(ru, spec_u.index, p, fi) as i128;
    let hit_v = direct_order_match(rv, spec_v.index, p, fi) as i128;
    let phi_u = fi.quotient(spec_u.index).expect("d | p-1").euler_phi() as i128;
    let phi_v = fi.quotient(spec_v.index).expect("e | p-1").euler_phi() as i128;
    let p = p as i128;
    // Complete frequency sums are p * hit; the zero frequency alone is phi.
    let full_u = p * hit_u;
    let full_v = p * hit_v;
    let den = p * p;
    let main_num = phi_u * phi_v;
    let e1_num = full_u * (full_v - phi_v);
    let e2_num = (full_u - phi_u) * full_v;
    let e3_num = -(full_u - phi_u) * (full_v - phi_v);
    let dec = TermDecomposition {
        main: main_num as f64 / den as f64,
        e1: e1_num as f64 / den as f64,
        e2: e2_num as f64 / den as f64,
        e3: e3_num as f64 / den as f64,
        main_num,
        e1_num,
        e2_num,
        e3_num,
        denominator: den,
        product: (hit_u * hit_v) as u8,
    };
    debug_assert!(dec.identity_holds());
    Ok(dec)
}

/// Aggregate of the exhaustive per-prime agreement sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorSweepStats {
    pub p: u64,
    /// (u, d) pairs checked across all three representations.
    pub checked: u64,
    /// Rounded-value disagreements with the direct indicator.
    pub mismatches: u64,
    pub max_residual: f64,
    /// Residues of order (p-1)/d number phi((p-1)/d), for every divisor.
    pub count_identity_ok: bool,
    /// Every residue has exactly one index.
    pub partition_ok: bool,
}

impl IndicatorSweepStats {
    pub fn merge(self, other: IndicatorSweepStats) -> IndicatorSweepStats {
        IndicatorSweepStats {
            p: self.p.max(other.p),
            checked: self.checked + other.checked,
            mismatches: self.mismatches + other.mismatches,
            max_residual: self.max_residual.max(other.max_residual),
            count_identity_ok: self.count_identity_ok && other.count_identity_ok,
            partition_ok: self.partition_ok && other.partition_ok,
        }
    }
}

/// Checks, for one prime, every representation against the direct order
/// test: the additive form for all u in [1, p-1] and all d | p-1, and the
/// character form plus the d = 1 additive form for all u. The inner
/// additive-character sums are shared across (u, d) pairs through a table
/// indexed by frequency; each table entry is the same direct float
/// summation the single-shot evaluators perform.
pub fn exhaustive_indicator_check(p: u64) -> Result<IndicatorSweepStats> {
    let ctx = PrimeContext::new(p)?;
    let fi = ctx.p_minus_one();
    let n = p as usize;
    let roots = Roots::for_modulus(p);

    // inner_sum[w] = sum over k in [0, p-1] of e(w k / p).
    let mut inner_sum = Vec::with_capacity(n);
    for w in 0..p {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut idx = 0u64;
        for _ in 0..p {
            acc += roots.get(idx);
            idx += w;
            if idx >= p {
                idx -= p;
            }
        }
        inner_sum.push(acc);
    }

    // Discrete-log and order tables by walking the generator.
    let mut dlog = alloc::vec![0u64; n];
    let mut power = 1u64;
    for e in 0..p - 1 {
        dlog[power as usize] = e;
        power = crate::arith::mul_mod(power, ctx.tau(), p);
    }
    let order_of = |u: u64| (p - 1) / gcd(dlog[u as usize], p - 1);

    let budget = 1e-6 * p as f64;
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    let mut max_residual: f64 = 0.0;
    let mut count_identity_ok = true;

    for &d in fi.divisors().iter() {
        let m = (p - 1) / d;
        // Residues tau^(d n) for n in [1, m] coprime to m.
        let step = ctx.pow_tau(d);
        let mut coprime_residues = Vec::new();
        let mut power = 1u64;
        for i in 1..=m {
            power = crate::arith::mul_mod(power, step, p);
            if gcd(i, m) == 1 {
                coprime_residues.push(power);
            }
        }
        let mut order_count = 0u64;
        for u in 1..p {
            let mut acc = Complex64::new(0.0, 0.0);
            for &r in &coprime_residues {
                acc += inner_sum[((r + p - u) % p) as usize];
            }
            let value = acc / p as f64;
            let direct = order_of(u) == m;
            order_count += direct as u64;
            let rounded = value.re >= 0.5;
            let residual = (value - if rounded { 1.0 } else { 0.0 }).norm();
            if residual > budget {
                return Err(Error::ResidualExceeded { residual, budget });
            }
            max_residual = max_residual.max(residual);
            mismatches += (rounded != direct) as u64;
            checked += 1;
        }
        let phi_m = fi.quotient(d).expect("d | p-1").euler_phi();
        count_identity_ok &= order_count == phi_m;
    }

    // Character-sum route, d = 1 only: psi(u) detects primitive roots.
    let divisors = fi.divisors();
    let mut char_tables = Vec::with_capacity(divisors.len());
    for &d in divisors.iter() {
        let fd = fi.quotient((p - 1) / d).expect("divisor");
        char_tables.push((d, fd.moebius(), fd.euler_phi(), Roots::for_modulus(d)));
    }
    let phi_total = fi.euler_phi();
    for u in 1..p {
        let log_u = dlog[u as usize];
        let mut acc = Complex64::new(0.0, 0.0);
        for &(d, mu, phi_d, ref roots_d) in &char_tables {
            if mu == 0 {
                continue;
            }
            let mut char_sum = Complex64::new(0.0, 0.0);
            for j in 1..=d {
                if gcd(j, d) == 1 {
                    char_sum += roots_d.get(mul_mod(j % d, log_u % d, d));
                }
            }
            acc += char_sum * (mu as f64 / phi_d as f64);
        }
        acc *= phi_total as f64 / (p - 1) as f64;
        let direct = order_of(u) == p - 1;
        let rounded = acc.re >= 0.5;
        let residual = (acc - if rounded { 1.0 } else { 0.0 }).norm();
        if residual > budget {
            return Err(Error::ResidualExceeded { residual, budget });
        }
        max_residual = max_residual.max(residual);
        mismatches += (rounded != direct) as u64;
        checked += 1;
    }

    // Partition of unity from the order table: each u has exactly one
    // order, and it divides p-1.
    let partition_ok = (1..p).all(|u| (p - 1) % order_of(u) == 0);

    Ok(IndicatorSweepStats {
        p,
        checked,
        mismatches,
        max_residual,
        count_identity_ok,
        partition_ok,
    })
}
