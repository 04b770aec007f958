//! Exact integer and modular arithmetic: 64-bit factorization
//! (deterministic Miller-Rabin plus Brent-cycle Pollard rho), totient and
//! Moebius functions, modular orders and indices, canonical primitive
//! roots, baby-step/giant-step discrete logarithms, and multiplicative
//! independence of rational tuples.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Least common multiple; callers keep arguments small enough not to overflow.
pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Widened modular multiplication, exact for any 64-bit modulus.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn pow_mod_raw(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

/// Square-and-multiply `base^exponent mod modulus` with widened multiplies.
pub fn pow_mod(base: u64, exponent: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::InvalidInput(format!(
            "pow_mod needs modulus >= 2, got {modulus}"
        )));
    }
    Ok(pow_mod_raw(base, exponent, modulus))
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin; the witness set covers all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_raw(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Integer square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = 1u64 << (n.ilog2() / 2 + 1);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Brent-cycle Pollard rho; returns a nontrivial factor of an odd composite.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && !is_prime(n));
    let mut c = 1u64;
    loop {
        let step = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut saved = 2u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                saved = y;
                let limit = BATCH.min(r - k);
                for _ in 0..limit {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += limit;
            }
            r *= 2;
        }
        if g == n {
            // Batched gcd overshot the cycle; replay one step at a time.
            g = 1;
            y = saved;
            while g == 1 {
                y = step(y);
                g = gcd(x.abs_diff(y), n);
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// A positive integer carried together with its full prime factorization,
/// primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

/// Unique factorization of `n` with 2 <= n < 2^63.
pub fn factorize(n: u64) -> Result<FactoredInteger> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "factorize needs n >= 2, got {n}"
        )));
    }
    if n >= 1 << 63 {
        return Err(Error::InvalidInput(format!(
            "factorize needs n < 2^63, got {n}"
        )));
    }
    Ok(FactoredInteger::of_unchecked(n))
}

/// Factorization for internal callers that legitimately hit n = 1.
pub(crate) fn factored(n: u64) -> FactoredInteger {
    debug_assert!(n >= 1);
    if n == 1 {
        FactoredInteger::one()
    } else {
        FactoredInteger::of_unchecked(n)
    }
}

impl FactoredInteger {
    /// The empty product.
    pub fn one() -> Self {
        FactoredInteger {
            value: 1,
            factors: Vec::new(),
        }
    }

    pub(crate) fn of_unchecked(n: u64) -> Self {
        let mut factors: BTreeMap<u64, u32> = BTreeMap::new();
        let mut stack = vec![n];
        while let Some(mut m) = stack.pop() {
            if m == 1 {
                continue;
            }
            while m % 2 == 0 {
                *factors.entry(2).or_insert(0) += 1;
                m /= 2;
            }
            // Strip small primes before handing the rest to rho.
            for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
                while m % p == 0 {
                    *factors.entry(p).or_insert(0) += 1;
                    m /= p;
                }
            }
            if m == 1 {
                continue;
            }
            if is_prime(m) {
                *factors.entry(m).or_insert(0) += 1;
            } else {
                let d = pollard_rho(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
        FactoredInteger {
            value: n,
            factors: factors.into_iter().collect(),
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// (prime, exponent) pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Euler totient, prod p^(e-1) (p-1).
    pub fn euler_phi(&self) -> u64 {
        let mut phi = 1u64;
        for &(p, e) in &self.factors {
            phi *= p.pow(e - 1) * (p - 1);
        }
        phi
    }

    /// Moebius function: 0 on square factors, else (-1)^omega.
    pub fn moebius(&self) -> i32 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            return 0;
        }
        if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Number-of-divisors function.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| (e + 1) as u64).product()
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = divs.len();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                for i in 0..prev {
                    divs.push(divs[i] * pe);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Squarefree divisors with their Moebius signs.
    pub fn squarefree_divisors(&self) -> Vec<(u64, i32)> {
        let primes: Vec<u64> = self.distinct_primes().collect();
        let mut out = Vec::with_capacity(1 << primes.len());
        for mask in 0u32..(1 << primes.len()) {
            let mut d = 1u64;
            for (i, &p) in primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    d *= p;
                }
            }
            let mu = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            out.push((d, mu));
        }
        out
    }

    /// Factorization of `value / d` when `d` divides `value`.
    pub fn quotient(&self, d: u64) -> Option<FactoredInteger> {
        if d == 0 || self.value % d != 0 {
            return None;
        }
        let mut rem = d;
        let mut factors = Vec::with_capacity(self.factors.len());
        for &(p, e) in &self.factors {
            let mut e = e;
            while rem % p == 0 && e > 0 {
                rem /= p;
                e -= 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        if rem != 1 {
            return None;
        }
        Some(FactoredInteger {
            value: self.value / d,
            factors,
        })
    }
}

/// A nonzero rational base in lowest terms; 0, 1, and -1 are excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalBase {
    num: i64,
    den: u64,
}

impl RationalBase {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput(
                "rational base with zero denominator".into(),
            ));
        }
        if num == 0 {
            return Err(Error::InvalidInput("rational base must be nonzero".into()));
        }
        let (mut num, mut den) = if den < 0 {
            (-num, -(den as i128))
        } else {
            (num, den as i128)
        };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs() as u64) as i64;
        num /= g;
        den /= g as i128;
        if den == 1 && (num == 1 || num == -1) {
            return Err(Error::InvalidInput(
                "rational base must not be 1 or -1".into(),
            ));
        }
        Ok(RationalBase {
            num,
            den: den as u64,
        })
    }

    pub fn integer(n: i64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// 1/u; stays a valid base since |u| is neither 0 nor 1.
    pub fn inverse(&self) -> Self {
        let sign = if self.num < 0 { -1 } else { 1 };
        RationalBase {
            num: sign * self.den as i64,
            den: self.num.unsigned_abs(),
        }
    }

    /// num * den^(-1) mod p, in [1, p-1]. Errors when p divides either part,
    /// which tells censuses to skip the prime.
    pub fn reduce_mod(&self, p: u64) -> Result<u64> {
        debug_assert!(is_prime(p));
        let num = (self.num as i128).rem_euclid(p as i128) as u64;
        if num == 0 || self.den % p == 0 {
            return Err(Error::NotInvertible { p });
        }
        let inv = pow_mod_raw(self.den % p, p - 2, p);
        Ok(mul_mod(num, inv, p))
    }
}

impl core::fmt::Display for RationalBase {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl core::str::FromStr for RationalBase {
    type Err = Error;

    /// Parses "n" or "n/d".
    fn from_str(s: &str) -> Result<Self> {
        let bad = |_| Error::InvalidInput(format!("cannot parse rational base '{s}'"));
        match s.split_once('/') {
            None => RationalBase::integer(s.trim().parse().map_err(bad)?),
            Some((n, d)) => RationalBase::new(
                n.trim().parse().map_err(bad)?,
                d.trim().parse().map_err(bad)?,
            ),
        }
    }
}

/// A prime p >= 3 with the factored totient, the least primitive root tau,
/// and an auxiliary prime q > p (least by default) acting as the Fourier
/// modulus for the kernel sums.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    p: u64,
    p_minus_one: FactoredInteger,
    tau: u64,
    q: u64,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        let q = crate::primes::next_prime_above(p)?;
        Self::with_aux_prime(p, q)
    }

    /// Same context with an explicit auxiliary prime q > p.
    pub fn with_aux_prime(p: u64, q: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidInput(format!(
                "context needs a prime p >= 3, got {p}"
            )));
        }
        if q <= p || !is_prime(q) {
            return Err(Error::InvalidInput(format!(
                "auxiliary modulus {q} must be a prime > {p}"
            )));
        }
        let p_minus_one = factorize(p - 1)?;
        let tau = primitive_root_with(p, &p_minus_one);
        Ok(PrimeContext {
            p,
            p_minus_one,
            tau,
            q,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p_minus_one(&self) -> &FactoredInteger {
        &self.p_minus_one
    }

    pub fn tau(&self) -> u64 {
        self.tau
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// tau^e mod p with the exponent reduced mod p-1 first.
    pub fn pow_tau(&self, e: u64) -> u64 {
        pow_mod_raw(self.tau, e % (self.p - 1), self.p)
    }

    /// Multiplicative order of a residue in [1, p-1].
    pub fn order_of_residue(&self, u: u64) -> u64 {
        debug_assert!(u >= 1 && u < self.p);
        order_of_residue(u, self.p, &self.p_minus_one)
    }
}

/// Order of `u mod p` by stripping primes of p-1 from the group order.
pub(crate) fn order_of_residue(u: u64, p: u64, p_minus_one: &FactoredInteger) -> u64 {
    let mut k = p - 1;
    for &(ell, _) in p_minus_one.factors() {
        while k % ell == 0 && pow_mod_raw(u, k / ell, p) == 1 {
            k /= ell;
        }
    }
    k
}

fn primitive_root_with(p: u64, p_minus_one: &FactoredInteger) -> u64 {
    'candidate: for tau in 2..p {
        for ell in p_minus_one.distinct_primes() {
            if pow_mod_raw(tau, (p - 1) / ell, p) == 1 {
                continue 'candidate;
            }
        }
        return tau;
    }
    unreachable!("every prime p >= 3 has a primitive root below p")
}

/// Smallest primitive root mod p; the canonical generator every
/// downstream sum depends on.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidInput(format!(
            "primitive_root needs a prime p >= 3, got {p}"
        )));
    }
    let fi = factorize(p - 1)?;
    Ok(primitive_root_with(p, &fi))
}

/// Least k >= 1 with u^k = 1 mod p; always divides p-1.
pub fn order_mod(u: &RationalBase, ctx: &PrimeContext) -> Result<u64> {
    let r = u.reduce_mod(ctx.p())?;
    Ok(ctx.order_of_residue(r))
}

/// The cofactor (p-1)/ord_p(u).
pub fn index_mod(u: &RationalBase, ctx: &PrimeContext) -> Result<u64> {
    Ok((ctx.p() - 1) / order_mod(u, ctx)?)
}

/// Baby-step/giant-step budget: the table holds sqrt(p) entries.
const DLOG_BUDGET: u64 = 1 << 40;

/// Discrete logarithm of u base tau: the L in [0, p-2] with tau^L = u.
pub fn discrete_log(ctx: &PrimeContext, u: u64) -> Result<u64> {
    let p = ctx.p();
    if p >= DLOG_BUDGET {
        return Err(Error::DlogBudgetExceeded { p });
    }
    if u == 0 || u >= p {
        return Err(Error::InvalidInput(format!(
            "dlog argument {u} outside [1, {}]",
            p - 1
        )));
    }
    let n = p - 1;
    let m = isqrt(n - 1) + 1;
    let mut baby: BTreeMap<u64, u64> = BTreeMap::new();
    let mut acc = 1u64;
    for j in 0..m {
        baby.entry(acc).or_insert(j);
        acc = mul_mod(acc, ctx.tau(), p);
    }
    // tau^(-m) via the group order.
    let giant = pow_mod_raw(ctx.tau(), n - m % n, p);
    let mut gamma = u;
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            return Ok((i * m + j) % n);
        }
        gamma = mul_mod(gamma, giant, p);
    }
    unreachable!("BSGS covers the whole group")
}

/// Outcome of the multiplicative-independence test for a tuple of bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// `witness` is a nonzero integer exponent vector with
    /// prod u_i^(w_i) = +1 or -1; the sign separates a plain dependence
    /// from one that only reaches -1.
    Inadmissible {
        witness: Vec<i64>,
        product_is_minus_one: bool,
    },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Tests multiplicative independence over Q by integer elimination on the
/// prime-exponent vectors of the bases. Enumeration cannot decide this:
/// the defining condition quantifies over all nonzero integer exponents.
pub fn is_admissible(tuple: &[RationalBase]) -> Result<Admissibility> {
    if tuple.is_empty() || tuple.len() > 16 {
        return Err(Error::InvalidInput(format!(
            "admissibility needs 1..=16 bases, got {}",
            tuple.len()
        )));
    }
    // Column index per prime appearing in any numerator or denominator.
    let mut primes: Vec<u64> = Vec::new();
    let mut rows: Vec<Vec<(u64, i64)>> = Vec::with_capacity(tuple.len());
    for base in tuple {
        let mut row: Vec<(u64, i64)> = Vec::new();
        let num_abs = base.numerator().unsigned_abs();
        if num_abs > 1 {
            for &(p, e) in factorize(num_abs)?.factors() {
                row.push((p, e as i64));
            }
        }
        if base.denominator() > 1 {
            for &(p, e) in factorize(base.denominator())?.factors() {
                row.push((p, -(e as i64)));
            }
        }
        for &(p, _) in &row {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        rows.push(row);
    }
    primes.sort_unstable();

    let k = tuple.len();
    let m = primes.len();
    // [A | I]: exponent matrix augmented with the identity, so a row whose
    // A-part is eliminated to zero carries its integer combination.
    let mut mat: Vec<Vec<i128>> = Vec::with_capacity(k);
    for (i, row) in rows.iter().enumerate() {
        let mut full = vec![0i128; m + k];
        for &(p, e) in row {
            let col = primes.binary_search(&p).expect("prime was collected");
            full[col] += e as i128;
        }
        full[m + i] = 1;
        mat.push(full);
    }

    let mut pivot_row = 0usize;
    for col in 0..m {
        let Some(r) = (pivot_row..k).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(pivot_row, r);
        let pivot = mat[pivot_row][col];
        for r in pivot_row + 1..k {
            let entry = mat[r][col];
            if entry == 0 {
                continue;
            }
            for c in 0..m + k {
                mat[r][c] = mat[r][c]
                    .checked_mul(pivot)
                    .and_then(|x| x.checked_sub(mat[pivot_row][c].checked_mul(entry)?))
                    .ok_or_else(|| Error::InvalidInput("exponent elimination overflowed".into()))?;
            }
            let g = mat[r].iter().fold(0i128, |g, &x| gcd_i128(g, x));
            if g > 1 {
                for c in 0..m + k {
                    mat[r][c] /= g;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == k {
            break;
        }
    }

    for r in pivot_row..k {
        if mat[r][..m].iter().all(|&x| x == 0) {
            let mut witness: Vec<i128> = mat[r][m..].to_vec();
            let g = witness.iter().fold(0i128, |g, &x| gcd_i128(g, x));
            if g > 1 {
                witness.iter_mut().for_each(|x| *x /= g);
            }
            if let Some(first) = witness.iter().find(|&&x| x != 0) {
                if *first < 0 {
                    witness.iter_mut().for_each(|x| *x = -*x);
                }
            }
            let witness: Vec<i64> = witness.iter().map(|&x| x as i64).collect();
            let minus_signs: i64 = witness
                .iter()
                .zip(tuple)
                .filter(|(_, b)| b.numerator() < 0)
                .map(|(&w, _)| w)
                .sum();
            return Ok(Admissibility::Inadmissible {
                witness,
                product_is_minus_one: minus_signs.rem_euclid(2) == 1,
            });
        }
    }
    Ok(Admissibility::Admissible)
}
