//! Binary expansions, the limit vectors `θ` and the functionals `G(θ; s)`
//! and `Λ(θ)`, plus bounded searches for their extreme values.
//!
//! The set of limit vectors is infinite. Searches run over a finite
//! [`Frontier`] and report one-sided bounds only: the largest `G` found is a
//! lower bound for its supremum, the smallest `G` or `Λ` found is an upper
//! bound for the infimum.

use std::f64::consts::{E, LN_2};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exec::Exec;

/// Number of ones in the binary representation of `n`.
pub fn tau_b(n: u64) -> Result<u32> {
    if n == 0 {
        return domain("tau_b is defined for N >= 1");
    }
    Ok(n.count_ones())
}

/// Exponents `n_1 > n_2 > ... > n_p >= 0` with `N = Σ 2^{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryExpansion {
    exponents: Vec<u32>,
}

impl BinaryExpansion {
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `τ_b(N)`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn value(&self) -> u64 {
        self.exponents.iter().map(|&e| 1u64 << e).sum()
    }

    /// Powers `2^{n_k}` in decreasing order.
    pub fn powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.iter().map(|&e| 1u64 << e)
    }
}

pub fn decompose(n: u64) -> Result<BinaryExpansion> {
    if n == 0 {
        return domain("decompose is defined for N >= 1");
    }
    let exponents = (0..64u32).rev().filter(|&b| n >> b & 1 == 1).collect();
    Ok(BinaryExpansion { exponents })
}

/// A limit vector `(2^{n_1}/M, ..., 2^{n_t}/M, 0, ..., 0)` with `M` odd.
///
/// Components are exact rationals over the odd denominator `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaVector {
    odd_denominator: u64,
    exponents: Vec<u32>,
    trailing_zeros: usize,
}

impl ThetaVector {
    pub fn odd_denominator(&self) -> u64 {
        self.odd_denominator
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn trailing_zeros(&self) -> usize {
        self.trailing_zeros
    }

    /// Number of nonzero components `t`.
    pub fn nonzero(&self) -> usize {
        self.exponents.len()
    }

    /// Dimension `p = t + trailing zeros`.
    pub fn dim(&self) -> usize {
        self.exponents.len() + self.trailing_zeros
    }

    /// Numerators over `M`, zeros included.
    pub fn numerators(&self) -> Vec<u64> {
        self.exponents
            .iter()
            .map(|&e| 1u64 << e)
            .chain(std::iter::repeat_n(0, self.trailing_zeros))
            .collect()
    }

    pub fn components(&self) -> Vec<f64> {
        let m = self.odd_denominator as f64;
        self.numerators().into_iter().map(|a| a as f64 / m).collect()
    }

    /// `Σ θ_k = 1`, checked in integer arithmetic.
    pub fn sums_to_one(&self) -> bool {
        self.numerators().iter().map(|&a| a as u128).sum::<u128>() == self.odd_denominator as u128
    }

    /// `θ_k ≤ 2^{-(k-1)}` for every `k`, checked in integer arithmetic.
    pub fn is_dyadically_dominated(&self) -> bool {
        self.exponents.iter().enumerate().all(|(k, &e)| {
            ((1u128 << e) << k) <= self.odd_denominator as u128
        })
    }
}

/// The vector generated by the odd number `m`, padded with zeros to length `p`.
pub fn theta_from_odd(m: u64, p: usize) -> Result<ThetaVector> {
    if m.is_multiple_of(2) {
        return domain(format!("M = {m} must be odd"));
    }
    let expansion = decompose(m)?;
    if p < expansion.len() {
        return domain(format!(
            "p = {p} is smaller than tau_b({m}) = {}",
            expansion.len()
        ));
    }
    Ok(ThetaVector {
        odd_denominator: m,
        trailing_zeros: p - expansion.len(),
        exponents: expansion.exponents,
    })
}

/// All vectors with odd `M < 2^max_bits` and `τ_b(M) ≤ p`, padded to length
/// `p`, in ascending `M`.
pub fn enumerate_theta(p: usize, max_bits: u32) -> Vec<ThetaVector> {
    enumerate_theta_with(p, max_bits, Exec::default())
}

pub fn enumerate_theta_with(p: usize, max_bits: u32, exec: Exec) -> Vec<ThetaVector> {
    let max_bits = max_bits.clamp(1, 63);
    let count = 1usize << (max_bits - 1);
    exec.map(count, |i| {
        let m = 2 * i as u64 + 1;
        if m.count_ones() as usize <= p {
            theta_from_odd(m, p).ok()
        } else {
            None
        }
    })
    .into_iter()
    .flatten()
    .collect()
}

/// `G(θ; s) = Σ θ_k^s`; zero components contribute nothing.
pub fn g_value(theta: &ThetaVector, s: f64) -> f64 {
    theta
        .components()
        .into_iter()
        .filter(|&x| x > 0.0)
        .map(|x| x.powf(s))
        .sum()
}

/// `Λ(θ) = Σ θ_k log θ_k` with `0 log 0 = 0`.
pub fn lambda_value(theta: &ThetaVector) -> f64 {
    theta
        .components()
        .into_iter()
        .filter(|&x| x > 0.0)
        .map(|x| x * x.ln())
        .sum()
}

/// `1/(2^s - 1)`: the value approached by `G` along `M = 2^t - 1`.
pub fn g_landmark(s: f64) -> f64 {
    1.0 / (s.exp2() - 1.0)
}

/// `2^s/(2^s - 1)`: strict upper bound of `G` for `0 < s < 1`.
pub fn g_upper_bound(s: f64) -> f64 {
    s.exp2() / (s.exp2() - 1.0)
}

/// `-2 log 2`: upper bound for the infimum of `Λ`.
pub const LAMBDA_LANDMARK: f64 = -2.0 * LN_2;

/// Constructive lower bound `-K/e - 2 log 2` for `Λ`, with the smallest
/// `K` satisfying `2^{-K} < 1/e` (`K = 2`).
pub fn lambda_lower_bound() -> f64 {
    -2.0 / E - 2.0 * LN_2
}

/// Search region: all odd `M < 2^max_bits`, plus `M = 2^t - 1` for
/// `t ≤ family_depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frontier {
    pub max_bits: u32,
    pub family_depth: u32,
}

impl Frontier {
    /// Enumeration only; the structured family is not extended.
    pub fn bits(max_bits: u32) -> Self {
        Frontier {
            max_bits,
            family_depth: max_bits,
        }
    }

    pub fn with_family_depth(mut self, depth: u32) -> Self {
        self.family_depth = depth.min(63);
        self
    }

    fn candidates(&self, exec: Exec) -> Vec<ThetaVector> {
        let max_bits = self.max_bits.clamp(1, 63);
        let mut out = enumerate_theta_with(max_bits as usize, max_bits, exec);
        for t in (max_bits + 1)..=self.family_depth.min(63) {
            let m = (1u64 << t) - 1;
            out.push(theta_from_odd(m, t as usize).expect("odd"));
        }
        out
    }
}

impl Default for Frontier {
    fn default() -> Self {
        Frontier::bits(16).with_family_depth(60)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GSearch {
    pub s: f64,
    pub sup_found: f64,
    pub inf_found: f64,
    pub sup_witness: ThetaVector,
    pub inf_witness: ThetaVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaSearch {
    pub inf_found: f64,
    pub witness: ThetaVector,
}

/// Largest and smallest `G(·; s)` over the frontier. Ties keep the first
/// candidate (smallest `M`).
pub fn search_g_extremes(s: f64, frontier: &Frontier) -> Result<GSearch> {
    search_g_extremes_with(s, frontier, Exec::default())
}

pub fn search_g_extremes_with(s: f64, frontier: &Frontier, exec: Exec) -> Result<GSearch> {
    if !(s.is_finite() && s > 0.0) {
        return domain(format!("search needs s > 0, got {s}"));
    }
    if s == 1.0 {
        return Err(Error::Degenerate("G(θ; 1) = 1 for every θ".into()));
    }
    let cands = frontier.candidates(exec);
    let values = exec.map_slice(&cands, |t| g_value(t, s));
    let (mut hi, mut lo) = (0usize, 0usize);
    for (i, &v) in values.iter().enumerate() {
        if v > values[hi] {
            hi = i;
        }
        if v < values[lo] {
            lo = i;
        }
    }
    Ok(GSearch {
        s,
        sup_found: values[hi],
        inf_found: values[lo],
        sup_witness: cands[hi].clone(),
        inf_witness: cands[lo].clone(),
    })
}

/// Smallest `Λ` over the frontier.
pub fn search_lambda(frontier: &Frontier) -> LambdaSearch {
    search_lambda_with(frontier, Exec::default())
}

pub fn search_lambda_with(frontier: &Frontier, exec: Exec) -> LambdaSearch {
    let cands = frontier.candidates(exec);
    let values = exec.map_slice(&cands, lambda_value);
    let mut lo = 0usize;
    for (i, &v) in values.iter().enumerate() {
        if v < values[lo] {
            lo = i;
        }
    }
    LambdaSearch {
        inf_found: values[lo],
        witness: cands[lo].clone(),
    }
}
