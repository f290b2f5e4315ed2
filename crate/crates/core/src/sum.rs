//! Deterministic compensated summation.
//!
//! Every sum in the crate goes through [`pairwise_sum`]: the slice is split at
//! its midpoint recursively until blocks of at most [`LEAF`] values remain,
//! and each leaf is reduced with Neumaier's compensated addition. The tree
//! shape depends only on the length, so the parallel and sequential paths
//! produce bit-identical results.

use crate::exec::Exec;

/// Leaf block size of the reduction tree.
pub const LEAF: usize = 32;

/// Above this length the parallel path forks the two halves.
const FORK_MIN: usize = 1 << 14;

/// Neumaier running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

fn combine(a: f64, b: f64) -> f64 {
    let mut acc = Neumaier::new();
    acc.add(a);
    acc.add(b);
    acc.total()
}

/// Pairwise sum with the default execution mode.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    pairwise_sum_with(values, Exec::default())
}

/// Pairwise sum; the result does not depend on `exec`.
pub fn pairwise_sum_with(values: &[f64], exec: Exec) -> f64 {
    pairwise_sum_by_with(values.len(), exec, |i| values[i])
}

/// Pairwise sum of `term(0), ..., term(n - 1)` without materializing the terms.
///
/// Same reduction tree as [`pairwise_sum`] over the collected values.
pub fn pairwise_sum_by<F>(n: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    range_sum(0, n, Exec::Sequential, &term)
}

pub fn pairwise_sum_by_with<F>(n: usize, exec: Exec, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    range_sum(0, n, exec, &term)
}

fn range_sum<F>(start: usize, len: usize, exec: Exec, term: &F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    if len <= LEAF {
        let mut acc = Neumaier::new();
        for i in start..start + len {
            acc.add(term(i));
        }
        return acc.total();
    }
    let mid = len / 2;
    let (a, b) = if len >= FORK_MIN && exec == Exec::Parallel {
        exec.join(
            || range_sum(start, mid, exec, term),
            || range_sum(start + mid, len - mid, exec, term),
        )
    } else {
        (
            range_sum(start, mid, exec, term),
            range_sum(start + mid, len - mid, exec, term),
        )
    };
    combine(a, b)
}

/// Compensated running prefix sums: `out[k] = values[0] + ... + values[k-1]`,
/// with `out[0] = 0`.
pub fn prefix_sums(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len() + 1);
    let mut acc = Neumaier::new();
    out.push(0.0);
    for &v in values {
        acc.add(v);
        out.push(acc.total());
    }
    out
}
