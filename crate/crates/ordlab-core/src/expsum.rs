//! Exponential-sum toolbox: geometric kernels over an auxiliary prime q,
//! Gauss/Weil/resolvent sums mixing characters mod q and mod p, incomplete
//! and complete coprime power sums, periodic sums to a general modulus,
//! and the frequency-by-power double sum with its exact collapse identity.
//!
//! Every result reports the magnitude next to a reference bound and their
//! ratio. Only provable inequalities are asserted (the trivial term-count
//! bound, the kernel bound with the frequency folded to min(t, q-t), and
//! the divisor bound on complete coprime sums); the rest are empirical
//! targets surfaced through the ratio field.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::arith::{factored, factorize, gcd, mul_mod, pow_mod, PrimeContext};
use crate::error::{Error, Result};
use crate::indicator::{indicator_direct, OrderSpec};
use crate::numeric::{PairwiseSum, Roots};

use core::f64::consts::PI;

fn ln(x: f64) -> f64 {
    Float::ln(x)
}

fn sqrt(x: f64) -> f64 {
    Float::sqrt(x)
}

/// One evaluated exponential sum: value, magnitude, the reference bound at
/// these parameters, their ratio, and the number of summed terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpSumResult {
    pub value: Complex64,
    pub magnitude: f64,
    pub bound: f64,
    pub ratio: f64,
    pub term_count: u64,
    /// Second evaluation path when one exists (closed form or Moebius
    /// expansion); always within 1e-9 of `value`.
    pub closed_form: Option<Complex64>,
    /// Divisor bound for complete coprime sums; the magnitude never
    /// exceeds it.
    pub hard_bound: Option<f64>,
    /// Classical comparison bound for Weil sums, reported for context.
    pub classical_bound: Option<f64>,
}

impl ExpSumResult {
    fn new(value: Complex64, bound: f64, term_count: u64) -> Self {
        let magnitude = value.norm();
        assert!(
            magnitude <= term_count as f64 + 1e-6,
            "magnitude {magnitude} exceeds the trivial bound {term_count}"
        );
        ExpSumResult {
            value,
            magnitude,
            bound,
            ratio: magnitude / bound,
            term_count,
            closed_form: None,
            hard_bound: None,
            classical_bound: None,
        }
    }

    fn with_second_path(mut self, other: Complex64) -> Self {
        let gap = (self.value - other).norm();
        assert!(gap <= 1e-9, "evaluation paths disagree by {gap:e}");
        self.closed_form = Some(other);
        self
    }
}

/// An element w of known multiplicative order Q in (Z/m)^x, with a cutoff
/// P <= Q for incomplete sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicElement {
    m: u64,
    w: u64,
    period: u64,
    cutoff: u64,
}

impl PeriodicElement {
    /// Computes the exact period of w mod m and validates P <= Q.
    pub fn new(m: u64, w: u64, cutoff: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput(format!(
                "periodic modulus must be >= 2, got {m}"
            )));
        }
        let w = w % m;
        if gcd(w, m) != 1 {
            return Err(Error::InvalidInput(format!(
                "element {w} shares a factor with {m}"
            )));
        }
        let phi = factorize(m)?.euler_phi();
        let phi_factored = factored(phi);
        // Order of w in a group of order phi(m), by stripping primes.
        let mut period = phi;
        for &(ell, _) in phi_factored.factors() {
            while period % ell == 0 && pow_mod(w, period / ell, m)? == 1 {
                period /= ell;
            }
        }
        if cutoff == 0 || cutoff > period {
            return Err(Error::InvalidInput(format!(
                "cutoff {cutoff} outside [1, period {period}]"
            )));
        }
        Ok(PeriodicElement {
            m,
            w,
            period,
            cutoff,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn element(&self) -> u64 {
        self.w
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }
}

fn check_frequency(t: u64, q: u64) -> Result<()> {
    if t == 0 || t % q == 0 || t > q - 1 {
        return Err(Error::InvalidInput(format!(
            "frequency {t} outside [1, {}]",
            q - 1
        )));
    }
    Ok(())
}

fn check_index(d: u64, p: u64) -> Result<()> {
    if d == 0 || (p - 1) % d != 0 {
        return Err(Error::IndexNotDividing { d, p });
    }
    Ok(())
}

fn check_shift(a: u64, p: u64) -> Result<()> {
    if a == 0 || a >= p {
        return Err(Error::InvalidInput(format!(
            "shift {a} outside [1, {}]",
            p - 1
        )));
    }
    Ok(())
}

/// The folded frequency min(t, q-t). The raw-t kernel bound fails for t
/// near q, while the magnitude is symmetric under t -> q-t.
fn folded(t: u64, q: u64) -> u64 {
    t.min(q - t)
}

/// Geometric kernel sum over the auxiliary prime q:
/// sum for n in [1, p-1] of e(t n / q), with the closed form
/// (w^t - w^(tp)) / (1 - w^t) attached; bound 2q / (pi min(t, q-t)).
pub fn kernel_sum(ctx: &PrimeContext, t: u64) -> Result<ExpSumResult> {
    let (p, q) = (ctx.p(), ctx.q());
    check_frequency(t, q)?;
    let roots = Roots::for_modulus(q);
    let mut acc = PairwiseSum::new();
    let mut idx = 0u64;
    for _ in 1..p {
        idx += t;
        if idx >= q {
            idx -= q;
        }
        acc.push(roots.get(idx));
    }
    let w_t = roots.get(t);
    let w_tp = roots.get(mul_mod(t, p, q));
    let closed = (w_t - w_tp) / (Complex64::new(1.0, 0.0) - w_t);
    let bound = 2.0 * q as f64 / (PI * folded(t, q) as f64);
    Ok(ExpSumResult::new(acc.total(), bound, p - 1).with_second_path(closed))
}

/// Kernel sum restricted to n coprime to (p-1)/d, evaluated directly and
/// through the Moebius expansion over divisors of (p-1)/d; the two paths
/// must agree. Bound 4q log log p / (pi min(t, q-t)).
pub fn coprime_kernel_sum(ctx: &PrimeContext, t: u64, d: u64) -> Result<ExpSumResult> {
    let (p, q) = (ctx.p(), ctx.q());
    check_frequency(t, q)?;
    check_index(d, p)?;
    let m = (p - 1) / d;
    let roots = Roots::for_modulus(q);
    let mut direct = PairwiseSum::new();
    let mut idx = 0u64;
    let mut terms = 0u64;
    for n in 1..=m {
        idx += t;
        if idx >= q {
            idx -= q;
        }
        if gcd(n, m) == 1 {
            direct.push(roots.get(idx));
            terms += 1;
        }
    }
    // Moebius path: mu(r) times the geometric sum over multiples of r,
    // each in closed form. tr is never divisible by q, so 1 - w^(tr) != 0.
    let m_factored = factored(m);
    let mut expanded = Complex64::new(0.0, 0.0);
    for (r, mu) in m_factored.squarefree_divisors() {
        let s = mul_mod(t, r, q);
        let j = m / r;
        let w_s = roots.get(s);
        let w_sj1 = roots.get(mul_mod(s, j + 1, q));
        let geometric = (w_s - w_sj1) / (Complex64::new(1.0, 0.0) - w_s);
        expanded += geometric * mu as f64;
    }
    let bound = 4.0 * q as f64 * ln(ln(p as f64)) / (PI * folded(t, q) as f64);
    Ok(ExpSumResult::new(direct.total(), bound, terms).with_second_path(expanded))
}

/// Gauss resolvent mixing a character mod q with one mod p:
/// sum for t in [1, q-1] of e(t/q) e(tau^t / p); bound 2 sqrt(q) log q.
pub fn gauss_resolvent(ctx: &PrimeContext) -> Result<ExpSumResult> {
    power_resolvent_raw(ctx, 1)
}

/// Resolvent with the generator stepped d at a time:
/// sum for t in [1, q-1] of e(t/q) e(tau^(dt) / p); bound 2d sqrt(q) log q.
pub fn power_resolvent(ctx: &PrimeContext, d: u64) -> Result<ExpSumResult> {
    check_index(d, ctx.p())?;
    power_resolvent_raw(ctx, d)
}

fn power_resolvent_raw(ctx: &PrimeContext, d: u64) -> Result<ExpSumResult> {
    let (p, q) = (ctx.p(), ctx.q());
    let roots_q = Roots::for_modulus(q);
    let roots_p = Roots::for_modulus(p);
    let tau_step = ctx.pow_tau(d);
    let mut acc = PairwiseSum::new();
    let mut power = 1u64; // tau^(d t), walked multiplicatively
    for t in 1..q {
        power = mul_mod(power, tau_step, p);
        acc.push(roots_q.get(t) * roots_p.get(power));
    }
    let bound = 2.0 * d as f64 * sqrt(q as f64) * ln(q as f64);
    Ok(ExpSumResult::new(acc.total(), bound, q - 1))
}

/// Weil power sum: z over [1, p-1] of e(a z^d / p). The reference bound is
/// 2d sqrt(p) log p; the classical complete-sum comparison (d-1) sqrt(p) + 1
/// rides along.
pub fn weil_power_sum(ctx: &PrimeContext, d: u64, a: u64) -> Result<ExpSumResult> {
    let p = ctx.p();
    check_shift(a, p)?;
    if d == 0 {
        return Err(Error::InvalidInput("power degree must be >= 1".into()));
    }
    let roots = Roots::for_modulus(p);
    let mut acc = PairwiseSum::new();
    for z in 1..p {
        let zd = pow_mod(z, d, p)?;
        acc.push(roots.get(mul_mod(a, zd, p)));
    }
    let bound = 2.0 * d as f64 * sqrt(p as f64) * ln(p as f64);
    let mut out = ExpSumResult::new(acc.total(), bound, p - 1);
    out.classical_bound = Some((d as f64 - 1.0) * sqrt(p as f64) + 1.0);
    Ok(out)
}

/// Incomplete power sum: n over [1, x] of e(a tau^(dn) / p);
/// bound sqrt(p) log^3 p with implied constant 1.
pub fn incomplete_power_sum(ctx: &PrimeContext, d: u64, a: u64, x: u64) -> Result<ExpSumResult> {
    let p = ctx.p();
    check_index(d, p)?;
    check_shift(a, p)?;
    if x == 0 || x > p - 1 {
        return Err(Error::InvalidInput(format!(
            "cutoff {x} outside [1, {}]",
            p - 1
        )));
    }
    let roots = Roots::for_modulus(p);
    let step = ctx.pow_tau(d);
    let mut acc = PairwiseSum::new();
    let mut power = 1u64;
    for _ in 1..=x {
        power = mul_mod(power, step, p);
        acc.push(roots.get(mul_mod(a, power, p)));
    }
    let bound = sqrt(p as f64) * ln(p as f64).powi(3);
    Ok(ExpSumResult::new(acc.total(), bound, x))
}

/// Complete coprime power sum: n over [1, (p-1)/d] coprime to (p-1)/d of
/// e(a tau^(dn) / p). Reported against sqrt(p) log^3 p; additionally
/// carries, and never exceeds, the divisor bound tau0((p-1)/d)(sqrt(p)+1).
pub fn coprime_power_sum(ctx: &PrimeContext, d: u64, a: u64) -> Result<ExpSumResult> {
    let p = ctx.p();
    check_index(d, p)?;
    check_shift(a, p)?;
    let roots = Roots::for_modulus(p);
    let value = coprime_power_sum_raw(ctx, d, a, &roots);
    let m = (p - 1) / d;
    let m_factored = factored(m);
    let terms = m_factored.euler_phi();
    let bound = sqrt(p as f64) * ln(p as f64).powi(3);
    let divisor_bound = m_factored.divisor_count() as f64 * (sqrt(p as f64) + 1.0);
    let mut out = ExpSumResult::new(value, bound, terms);
    assert!(
        out.magnitude <= divisor_bound + 1e-6,
        "coprime power sum breached its divisor bound: {} > {divisor_bound}",
        out.magnitude
    );
    out.hard_bound = Some(divisor_bound);
    Ok(out)
}

fn coprime_power_sum_raw(ctx: &PrimeContext, d: u64, a: u64, roots: &Roots) -> Complex64 {
    let p = ctx.p();
    let m = (p - 1) / d;
    let step = ctx.pow_tau(d);
    let mut acc = PairwiseSum::new();
    let mut power = 1u64;
    for n in 1..=m {
        power = mul_mod(power, step, p);
        if gcd(n, m) == 1 {
            acc.push(roots.get(mul_mod(a, power, p)));
        }
    }
    acc.total()
}

/// Difference of the complete coprime sum at shift a against shift 1;
/// identically zero at a = 1. Bound 16 sqrt(p) log^4 p.
pub fn coprime_power_sum_diff(ctx: &PrimeContext, d: u64, a: u64) -> Result<ExpSumResult> {
    let p = ctx.p();
    check_index(d, p)?;
    check_shift(a, p)?;
    let roots = Roots::for_modulus(p);
    let at_a = coprime_power_sum_raw(ctx, d, a, &roots);
    let at_one = coprime_power_sum_raw(ctx, d, 1, &roots);
    let m_factored = factored((p - 1) / d);
    let bound = 16.0 * sqrt(p as f64) * ln(p as f64).powi(4);
    Ok(ExpSumResult::new(
        at_a - at_one,
        bound,
        2 * m_factored.euler_phi(),
    ))
}

/// Incomplete periodic sum to a general modulus: n over [1, P] of
/// e(a w^n / m); bound P^(1-eps) with eps = log P / log m and reference
/// constants c0 = c1 = 1.
pub fn periodic_sum(elem: &PeriodicElement, a: u64) -> Result<ExpSumResult> {
    let m = elem.m;
    if a == 0 || a >= m {
        return Err(Error::InvalidInput(format!(
            "shift {a} outside [1, {}]",
            m - 1
        )));
    }
    let roots = Roots::for_modulus(m);
    let mut acc = PairwiseSum::new();
    let mut power = 1u64;
    for _ in 1..=elem.cutoff {
        power = mul_mod(power, elem.w, m);
        acc.push(roots.get(mul_mod(a, power, m)));
    }
    let eps = ln(elem.cutoff as f64) / ln(m as f64);
    let bound = (elem.cutoff as f64).powf(1.0 - eps);
    Ok(ExpSumResult::new(acc.total(), bound, elem.cutoff))
}

/// Periodic sum over n coprime to phi(m), direct and through the Moebius
/// expansion over divisors of phi(m); the two paths must agree.
/// Bound m^eps P^(1-2eps) with 2 eps = log P / log m.
pub fn coprime_periodic_sum(elem: &PeriodicElement, a: u64) -> Result<ExpSumResult> {
    let m = elem.m;
    if a == 0 || a >= m {
        return Err(Error::InvalidInput(format!(
            "shift {a} outside [1, {}]",
            m - 1
        )));
    }
    let phi_factored = factored(factorize(m)?.euler_phi());
    let phi = phi_factored.value();
    let roots = Roots::for_modulus(m);
    let mut direct = PairwiseSum::new();
    let mut power = 1u64;
    let mut terms = 0u64;
    for n in 1..=elem.cutoff {
        power = mul_mod(power, elem.w, m);
        if gcd(n, phi) == 1 {
            direct.push(roots.get(mul_mod(a, power, m)));
            terms += 1;
        }
    }
    // Moebius path: inner power sums over multiples r, 2r, 3r, ...
    let mut expanded = Complex64::new(0.0, 0.0);
    for (r, mu) in phi_factored.squarefree_divisors() {
        if r > elem.cutoff {
            continue;
        }
        let w_r = pow_mod(elem.w, r, m)?;
        let mut inner = Complex64::new(0.0, 0.0);
        let mut power = 1u64;
        for _ in 1..=elem.cutoff / r {
            power = mul_mod(power, w_r, m);
            inner += roots.get(mul_mod(a, power, m));
        }
        expanded += inner * mu as f64;
    }
    let eps = ln(elem.cutoff as f64) / (2.0 * ln(m as f64));
    let bound = (m as f64).powf(eps) * (elem.cutoff as f64).powf(1.0 - 2.0 * eps);
    Ok(ExpSumResult::new(direct.total(), bound, terms).with_second_path(expanded))
}

/// Frequency-by-power double sum: a over [1, p-1] of e(-a u / p) times the
/// complete coprime power sum at shift a. Orthogonality collapses it to
/// p * indicator - phi((p-1)/d) exactly; the evaluation must land within
/// 1e-6 p of that integer. Bound p^(1-eps) at the reference eps = 0.1.
pub fn double_sum(spec: &OrderSpec, ctx: &PrimeContext) -> Result<ExpSumResult> {
    let p = ctx.p();
    let d = spec.index();
    check_index(d, p)?;
    let u = spec.base().reduce_mod(p)?;
    let m = (p - 1) / d;
    let roots = Roots::for_modulus(p);
    // Residues tau^(dn) over the coprime n, walked once.
    let step = ctx.pow_tau(d);
    let mut residues = Vec::new();
    let mut power = 1u64;
    for n in 1..=m {
        power = mul_mod(power, step, p);
        if gcd(n, m) == 1 {
            residues.push(power);
        }
    }
    let mut outer = PairwiseSum::new();
    for a in 1..p {
        let mut inner = Complex64::new(0.0, 0.0);
        for &r in &residues {
            inner += roots.get(mul_mod(a, r, p));
        }
        // times e(-a u / p)
        outer.push(inner * roots.get(p - mul_mod(a, u, p)));
    }
    let value = outer.total();
    let phi_m = residues.len() as i64;
    let hit = indicator_direct(spec, ctx)? as i64;
    let expected = (p as i64 * hit - phi_m) as f64;
    let gap = (value - Complex64::new(expected, 0.0)).norm();
    assert!(
        gap <= 1e-6 * p as f64,
        "double sum strayed {gap:e} from its collapse value {expected}"
    );
    let bound = (p as f64).powf(0.9);
    let terms = (p - 1) * residues.len() as u64;
    Ok(ExpSumResult::new(value, bound, terms))
}

/// Divisor-count helper for the rho hard bound, exposed for reporting.
pub fn divisor_count(n: u64) -> u64 {
    factored(n.max(1)).divisor_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalBase;
    use crate::numeric::unit_root;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    /// Direct trig-sum oracle for the kernel.
    fn kernel_oracle(p: u64, q: u64, t: u64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..p {
            acc += unit_root(q, (t as u128 * n as u128 % q as u128) as u64);
        }
        acc
    }

    #[test]
    fn kernel_against_oracle() {
        let c = ctx(7);
        assert_eq!(c.q(), 11);
        for t in 1..11 {
            let r = kernel_sum(&c, t).unwrap();
            assert!((r.value - kernel_oracle(7, 11, t)).norm() < 1e-12);
            assert!((r.value - r.closed_form.unwrap()).norm() < 1e-9);
            assert!(r.ratio <= 1.0, "t={t} ratio={}", r.ratio);
        }
        assert!(kernel_sum(&c, 0).is_err());
        assert!(kernel_sum(&c, 11).is_err());
    }

    #[test]
    fn kernel_conjugate_symmetry() {
        for p in [7u64, 101, 499] {
            let c = ctx(p);
            let q = c.q();
            for t in [1u64, 2, 5, (q - 1) / 2] {
                let a = kernel_sum(&c, t).unwrap();
                let b = kernel_sum(&c, q - t).unwrap();
                assert!((a.magnitude - b.magnitude).abs() < 1e-9, "p={p} t={t}");
            }
        }
        // The folded bound holds where the raw-t form fails.
        let c = ctx(101);
        let q = c.q();
        let r = kernel_sum(&c, q - 1).unwrap();
        assert!(r.magnitude <= r.bound);
        assert!(
            r.magnitude > 2.0 * q as f64 / (PI * (q - 1) as f64),
            "raw bound would fail"
        );
        // Mid-frequency case.
        let r = kernel_sum(&c, 51).unwrap();
        assert!(r.ratio <= 1.0);
    }

    #[test]
    fn coprime_kernel_examples() {
        let c = ctx(7);
        // d=1: n over {1, 5}.
        let r = coprime_kernel_sum(&c, 1, 1).unwrap();
        let hand = unit_root(11, 1) + unit_root(11, 5);
        assert!((r.value - hand).norm() < 1e-12);
        assert_eq!(r.term_count, 2);
        // d=3: m=2, n over {1}.
        let r = coprime_kernel_sum(&c, 2, 3).unwrap();
        assert!((r.value - unit_root(11, 2)).norm() < 1e-12);
        // Larger case: the Moebius path is checked inside.
        let c = ctx(211);
        assert_eq!(c.q(), 223);
        let r = coprime_kernel_sum(&c, 5, 2).unwrap();
        assert!(r.ratio.is_finite());
        assert!((r.value - r.closed_form.unwrap()).norm() < 1e-9);
    }

    #[test]
    fn resolvent_cases() {
        let c = ctx(7);
        let g = gauss_resolvent(&c).unwrap();
        // 10-term direct oracle.
        let mut oracle = Complex64::new(0.0, 0.0);
        for t in 1..11u64 {
            oracle += unit_root(11, t) * unit_root(7, pow_mod(3, t % 6, 7).unwrap());
        }
        assert!((g.value - oracle).norm() < 1e-12);
        assert!(g.magnitude <= 2.0 * sqrt(11.0) * ln(11.0));
        // d = 1 resolvent reduces to the Gauss resolvent.
        let r = power_resolvent(&c, 1).unwrap();
        assert!((r.value - g.value).norm() < 1e-12);
        let r = power_resolvent(&c, 2).unwrap();
        let mut oracle = Complex64::new(0.0, 0.0);
        for t in 1..11u64 {
            oracle += unit_root(11, t) * unit_root(7, pow_mod(3, 2 * t % 6, 7).unwrap());
        }
        assert!((r.value - oracle).norm() < 1e-12);
        // Tiny case: trivial bound only.
        let c3 = ctx(3);
        let g = gauss_resolvent(&c3).unwrap();
        assert!(g.magnitude <= 4.0 + 1e-9);
        let c101 = ctx(101);
        let r = power_resolvent(&c101, 4).unwrap();
        assert!(r.ratio.is_finite());
        assert!(power_resolvent(&c101, 3).is_err()); // 3 does not divide 100
    }

    #[test]
    fn weil_cases() {
        let c = ctx(7);
        // Full additive character sum minus the z = 0 term.
        let r = weil_power_sum(&c, 1, 3).unwrap();
        assert!((r.value - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        // Quadratic sums: |sum over z != 0| = |G(a) - 1| with |G| = sqrt(p).
        let c11 = ctx(11);
        let r = weil_power_sum(&c11, 2, 1).unwrap();
        assert!(((r.value + Complex64::new(1.0, 0.0)).norm() - sqrt(11.0)).abs() < 1e-9);
        assert_eq!(r.classical_bound, Some(sqrt(11.0) + 1.0));
        let c13 = ctx(13);
        let r = weil_power_sum(&c13, 3, 2).unwrap();
        assert!(r.magnitude <= 2.0 * sqrt(13.0));
        // Conjugate symmetry in the shift.
        let a = weil_power_sum(&c13, 3, 4).unwrap();
        let b = weil_power_sum(&c13, 3, 9).unwrap();
        assert!((a.magnitude - b.magnitude).abs() < 1e-9);
    }

    #[test]
    fn incomplete_cases() {
        let c = ctx(7);
        // tau^n sweeps every nonzero residue once.
        let r = incomplete_power_sum(&c, 1, 1, 6).unwrap();
        assert!((r.value - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        // d=2, x=3: tau^2, tau^4, tau^6 = 2, 4, 1 mod 7.
        let r = incomplete_power_sum(&c, 2, 1, 3).unwrap();
        let hand = unit_root(7, 2) + unit_root(7, 4) + unit_root(7, 1);
        assert!((r.value - hand).norm() < 1e-12);
        let c499 = ctx(499);
        let r = incomplete_power_sum(&c499, 1, 7, 249).unwrap();
        assert!(r.ratio.is_finite());
        assert!(incomplete_power_sum(&c, 1, 1, 7).is_err());
    }

    #[test]
    fn rho_cases() {
        let c = ctx(7);
        // d=3: m=2, single term at tau^3 = 6.
        let r = coprime_power_sum(&c, 3, 1).unwrap();
        assert!((r.magnitude - 1.0).abs() < 1e-12);
        assert!((r.value - unit_root(7, 6)).norm() < 1e-12);
        // d=1: two-term sum over the primitive roots 3 and 5.
        let r = coprime_power_sum(&c, 1, 1).unwrap();
        let hand = unit_root(7, 3) + unit_root(7, 5);
        assert!((r.value - hand).norm() < 1e-12);
        // Hard divisor bound.
        let c1009 = ctx(1009);
        let r = coprime_power_sum(&c1009, 2, 11).unwrap();
        assert!(r.magnitude <= r.hard_bound.unwrap());
        // Conjugate symmetry a vs p-a.
        let x = coprime_power_sum(&c1009, 2, 5).unwrap();
        let y = coprime_power_sum(&c1009, 2, 1004).unwrap();
        assert!((x.magnitude - y.magnitude).abs() < 1e-9);
    }

    #[test]
    fn rho_diff_cases() {
        let c = ctx(7);
        let r = coprime_power_sum_diff(&c, 1, 1).unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
        let r = coprime_power_sum_diff(&c, 1, 3).unwrap();
        let hand = (unit_root(7, 9) + unit_root(7, 15)) - (unit_root(7, 3) + unit_root(7, 5));
        assert!((r.value - hand).norm() < 1e-12);
        let c499 = ctx(499);
        let r = coprime_power_sum_diff(&c499, 2, 5).unwrap();
        assert!(r.ratio <= 1.0);
    }

    #[test]
    fn periodic_cases() {
        // m=15, w=2: period 4; P=3 sums over 2, 4, 8.
        let e = PeriodicElement::new(15, 2, 3).unwrap();
        assert_eq!(e.period(), 4);
        let r = periodic_sum(&e, 1).unwrap();
        let hand = unit_root(15, 2) + unit_root(15, 4) + unit_root(15, 8);
        assert!((r.value - hand).norm() < 1e-12);
        // m=9, w=2: period 6.
        let e = PeriodicElement::new(9, 2, 5).unwrap();
        assert_eq!(e.period(), 6);
        let r = periodic_sum(&e, 1).unwrap();
        let mut hand = Complex64::new(0.0, 0.0);
        let mut pw = 1u64;
        for _ in 0..5 {
            pw = pw * 2 % 9;
            hand += unit_root(9, pw);
        }
        assert!((r.value - hand).norm() < 1e-12);
        // Full period of a primitive root mod 7 sweeps all nonzero residues.
        let e = PeriodicElement::new(7, 3, 6).unwrap();
        let r = periodic_sum(&e, 1).unwrap();
        assert!((r.value - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(PeriodicElement::new(15, 3, 1).is_err()); // gcd(3,15) > 1
        assert!(PeriodicElement::new(15, 2, 5).is_err()); // cutoff past period
    }

    #[test]
    fn coprime_periodic_cases() {
        // phi(15) = 8; n in {1, 3} of P = 3.
        let e = PeriodicElement::new(15, 2, 3).unwrap();
        let r = coprime_periodic_sum(&e, 1).unwrap();
        let hand = unit_root(15, 2) + unit_root(15, 8);
        assert!((r.value - hand).norm() < 1e-12);
        assert_eq!(r.term_count, 2);
        // Moebius agreement on a composite modulus.
        let e = PeriodicElement::new(9, 2, 5).unwrap();
        let r = coprime_periodic_sum(&e, 2).unwrap();
        assert!((r.value - r.closed_form.unwrap()).norm() < 1e-9);
        // Single term.
        let e = PeriodicElement::new(9, 2, 1).unwrap();
        let r = coprime_periodic_sum(&e, 1).unwrap();
        assert!((r.magnitude - 1.0).abs() < 1e-12);
    }

    #[test]
    fn double_sum_collapse() {
        let c = ctx(7);
        let spec = |u: i64, d: u64| OrderSpec::new(RationalBase::integer(u).unwrap(), d).unwrap();
        // ord(2) = 3 = 6/2: collapse to 7 - phi(3) = 5.
        let r = double_sum(&spec(2, 2), &c).unwrap();
        assert!((r.value - Complex64::new(5.0, 0.0)).norm() < 1e-9);
        // ord(3) = 6 != 3: collapse to -phi(3) = -2.
        let r = double_sum(&spec(3, 2), &c).unwrap();
        assert!((r.value - Complex64::new(-2.0, 0.0)).norm() < 1e-9);
        // Identity residue: 8 = 1 mod 7 has order 1 = (p-1)/6, so the sum
        // collapses to 7 - phi(1) = 6.
        let r = double_sum(&spec(8, 6), &c).unwrap();
        assert!((r.value - Complex64::new(6.0, 0.0)).norm() < 1e-9);
        // -1 mod 7 has order 2 != 1: collapse to -phi(1) = -1.
        let r = double_sum(&spec(6, 6), &c).unwrap();
        assert!((r.value - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn trivial_bound_is_asserted() {
        let r = kernel_sum(&ctx(101), 3).unwrap();
        assert!(r.magnitude <= r.term_count as f64 + 1e-6);
    }
}
