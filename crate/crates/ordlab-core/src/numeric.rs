//! Floating-point accumulation and roots-of-unity tables shared by the
//! indicator and exponential-sum modules.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Float;

/// Pairwise (binary-tree) complex summation with a fixed tree shape, so
/// results do not depend on how a sweep is scheduled. Error grows like
/// O(log n) instead of O(n) for long sums.
#[derive(Debug, Clone, Default)]
pub struct PairwiseSum {
    partials: Vec<Complex64>,
    count: u64,
}

impl PairwiseSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, term: Complex64) {
        let mut carry = term;
        let mut level = 0;
        let mut c = self.count;
        while c & 1 == 1 {
            carry += self.partials[level];
            level += 1;
            c >>= 1;
        }
        if level == self.partials.len() {
            self.partials.push(carry);
        } else {
            self.partials[level] = carry;
        }
        self.count += 1;
    }

    /// Folds the outstanding partials from the lowest level up.
    pub fn total(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut c = self.count;
        for level in 0..self.partials.len() {
            if c & 1 == 1 {
                acc += self.partials[level];
            }
            c >>= 1;
        }
        acc
    }
}

/// Neumaier-compensated real summation for main-term accumulation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// e^(2*pi*i * r / modulus) with the index reduced mod the modulus first.
pub fn unit_root(modulus: u64, r: u64) -> Complex64 {
    let r = r % modulus;
    let (s, c) = Float::sin_cos(TAU * (r as f64) / (modulus as f64));
    Complex64::new(c, s)
}

/// Table caps memory for large moduli; beyond the cap, roots are computed
/// term by term from the same angle formula, so values are identical.
const TABLE_CAP: u64 = 1 << 22;

/// Roots of unity for one modulus, tabulated when the modulus is small.
pub enum Roots {
    Table(Vec<Complex64>),
    Direct { modulus: u64 },
}

impl Roots {
    pub fn for_modulus(modulus: u64) -> Self {
        if modulus <= TABLE_CAP {
            let m = modulus as usize;
            let mut table = Vec::with_capacity(m);
            for r in 0..modulus {
                table.push(unit_root(modulus, r));
            }
            Roots::Table(table)
        } else {
            Roots::Direct { modulus }
        }
    }

    #[inline]
    pub fn get(&self, r: u64) -> Complex64 {
        match self {
            Roots::Table(t) => t[(r as usize) % t.len()],
            Roots::Direct { modulus } => unit_root(*modulus, r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive() {
        let mut acc = PairwiseSum::new();
        let mut naive = Complex64::new(0.0, 0.0);
        for k in 0..1000u64 {
            let t = unit_root(1009, k * k + 1);
            acc.push(t);
            naive += t;
        }
        assert!((acc.total() - naive).norm() < 1e-9);
    }

    #[test]
    fn compensated_small_terms() {
        let mut acc = CompensatedSum::new();
        acc.add(1.0);
        for _ in 0..1000 {
            acc.add(1e-18);
        }
        assert!((acc.total() - (1.0 + 1000.0 * 1e-18)).abs() < 1e-20);
    }

    #[test]
    fn full_cycle_sums_to_zero() {
        let roots = Roots::for_modulus(97);
        let mut acc = PairwiseSum::new();
        for r in 0..97 {
            acc.push(roots.get(r));
        }
        assert!(acc.total().norm() < 1e-12);
    }
}
