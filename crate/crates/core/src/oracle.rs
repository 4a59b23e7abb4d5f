//! Brute-force ground truth for desk-scale instances.
//!
//! These routines deliberately avoid cumulative histograms and dot sets:
//! pairwise work comes from matching sorted point positions, and the
//! multi-histogram EMD is a minimum over every candidate common target.

use crate::error::{Error, Result};
use crate::histogram::{check_same_shape, Histogram};

/// Default cap on the number of candidate targets enumerated.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A weak composition of `m` into `n` parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u64>);

impl Composition {
    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn to_histogram(&self) -> Histogram {
        Histogram::new(self.0.clone()).expect("compositions have at least one part")
    }
}

/// Weak compositions of `m` into `n` parts in ascending lexicographic order,
/// from `(0, …, 0, m)` to `(m, 0, …, 0)`.
#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<u64>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let n = current.len();
        let mut succ = current.clone();
        // rightmost non-final slot with mass somewhere after it
        let mut suffix = succ[n - 1];
        for i in (0..n - 1).rev() {
            if suffix > 0 {
                succ[i] += 1;
                for slot in &mut succ[i + 1..n - 1] {
                    *slot = 0;
                }
                succ[n - 1] = suffix - 1;
                self.next = Some(succ);
                break;
            }
            suffix += succ[i];
        }
        Some(Composition(current))
    }
}

/// Panics if `n == 0`.
pub fn enumerate_compositions(n: usize, m: u64) -> Compositions {
    assert!(n >= 1, "compositions need at least one part");
    let mut first = vec![0; n];
    first[n - 1] = m;
    Compositions { next: Some(first) }
}

/// `C(m + n - 1, n - 1)`, or `None` if it does not fit in a `u128`.
pub fn composition_count(n: usize, m: u64) -> Option<u128> {
    if n == 0 {
        return Some(0);
    }
    let k = (n - 1) as u128;
    let top = m as u128 + k;
    // C(top, k) built incrementally; each partial product is itself a binomial
    let k = k.min(top - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(top - i)? / (i + 1);
    }
    Some(acc)
}

/// Work to turn `h0` into `h1` by matching the `k`-th smallest point position
/// of one histogram with the `k`-th smallest of the other.
pub fn sorted_matching_emd(h0: &Histogram, h1: &Histogram) -> Result<u64> {
    check_same_shape([h0, h1])?;
    let (a, b) = (h0.counts(), h1.counts());
    let (mut i, mut j) = (0usize, 0usize);
    let (mut left_a, mut left_b) = (a[0], b[0]);
    let mut work = 0u64;
    loop {
        while left_a == 0 && i + 1 < a.len() {
            i += 1;
            left_a = a[i];
        }
        while left_b == 0 && j + 1 < b.len() {
            j += 1;
            left_b = b[j];
        }
        if left_a == 0 || left_b == 0 {
            break;
        }
        let moved = left_a.min(left_b);
        let step = moved
            .checked_mul(i.abs_diff(j) as u64)
            .ok_or(Error::Overflow)?;
        work = work.checked_add(step).ok_or(Error::Overflow)?;
        left_a -= moved;
        left_b -= moved;
    }
    Ok(work)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub value: u64,
    /// Lexicographically least optimal common target.
    pub argmin: Composition,
    /// Number of targets examined.
    pub candidates: u64,
}

/// Minimum over every common target `g` of `Σ_i work(h_i → g)`.
pub fn brute_force_emd(hs: &[Histogram], budget: u64) -> Result<BruteForce> {
    let first = hs.first().ok_or(Error::EmptyFamily)?;
    check_same_shape(hs)?;
    let (n, m) = (first.n(), first.m());
    let count = composition_count(n, m).unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded { count, budget });
    }
    let mut best: Option<(u64, Composition)> = None;
    let mut candidates = 0;
    for target in enumerate_compositions(n, m) {
        candidates += 1;
        let g = target.to_histogram();
        let mut total = 0u64;
        for h in hs {
            total = total
                .checked_add(sorted_matching_emd(h, &g)?)
                .ok_or(Error::Overflow)?;
        }
        // strict improvement keeps the earliest, i.e. lexicographically least, minimizer
        if best.as_ref().is_none_or(|(v, _)| total < *v) {
            best = Some((total, target));
        }
    }
    let (value, argmin) = best.expect("at least one composition exists");
    Ok(BruteForce {
        value,
        argmin,
        candidates,
    })
}
