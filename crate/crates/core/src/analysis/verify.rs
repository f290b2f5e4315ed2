//! Identity and inequality checks across the crate, run as one report.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::binary::tau_b;
use crate::circle::{
    energy, leja_sup_norm_log, midpoint_potential, potential, roots_energy, roots_of_unity,
    Configuration, RieszParameter,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::sequences::{canonical_structural, extremal_values_structural};
use crate::special::{continuous_energy, critical_constant, dyadic_constant};

use super::limits::MAX_N;
use super::series::{log_ratio, normalized_series, SeriesKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub s: Option<f64>,
    pub status: Status,
    /// Worst residual seen; for ordering checks, the worst violation (0 when none).
    pub residual: f64,
    pub tolerance: f64,
    /// Largest `N` evaluated.
    pub budget: u64,
}

impl CheckResult {
    fn new(name: &str, s: Option<f64>, residual: f64, tolerance: f64, budget: u64) -> Self {
        let status = if residual <= tolerance { Status::Pass } else { Status::Fail };
        CheckResult {
            name: name.to_string(),
            s,
            status,
            residual,
            tolerance,
            budget,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n_max: u64,
    pub s_grid: Vec<f64>,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

pub const DEFAULT_N_MAX: u64 = 2048;
pub const DEFAULT_S_GRID: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

/// Residuals below this are treated as converged.
const ROUNDING_FLOOR: f64 = 1e-12;

type Check = Box<dyn Fn() -> Result<CheckResult> + Send + Sync>;

pub fn verify_all(n_max: u64, s_grid: &[f64]) -> Result<VerificationReport> {
    verify_all_with(n_max, s_grid, Exec::default())
}

/// Run every check; sub-checks run concurrently under `exec` and are
/// reported in a fixed order.
pub fn verify_all_with(n_max: u64, s_grid: &[f64], exec: Exec) -> Result<VerificationReport> {
    if n_max > MAX_N {
        return Err(Error::Budget {
            requested: n_max,
            limit: MAX_N,
        });
    }
    let n_max = n_max.max(2);
    for &s in s_grid {
        RieszParameter::new(s)?;
    }

    let mut checks: Vec<Check> = vec![
        Box::new(move || norm_identity(n_max)),
        Box::new(move || log_ratio_attained(n_max)),
        Box::new(|| Ok(log_ratio_decreasing())),
    ];
    for &s in s_grid {
        if s > 0.0 {
            checks.push(Box::new(move || binary_decomposition(s, n_max)));
            checks.push(Box::new(move || roots_formula(s, n_max.min(1024))));
            checks.push(Box::new(move || midpoint_formula(s, n_max.min(1024))));
        }
        if s > 0.0 && s < 1.0 {
            checks.push(Box::new(move || below_continuous_energy(s, n_max)));
            checks.push(Box::new(move || w_from_r(s, (n_max / 2).clamp(1, 1024))));
            checks.push(Box::new(move || dyadic_convergence(SeriesKind::WSubcritical, s, n_max)));
        }
        if s == 1.0 {
            checks.push(Box::new(move || dyadic_convergence(SeriesKind::TCritical, s, n_max)));
        }
        if s > 1.0 {
            checks.push(Box::new(move || {
                dyadic_convergence(SeriesKind::WSupercritical, s, n_max)
            }));
        }
        if s == 2.0 {
            checks.push(Box::new(move || quadratic_exact(n_max)));
        }
    }

    let results = exec.map_slice(&checks, |c| c());
    let checks = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        n_max,
        s_grid: s_grid.to_vec(),
        passed: checks.iter().all(CheckResult::passed),
        checks,
    })
}

/// `Σ_k log|a_N - a_k| = τ_b(N) log 2` on the canonical sequence.
fn norm_identity(n_max: u64) -> Result<CheckResult> {
    let c = canonical_structural(n_max as usize + 1);
    let mut worst: f64 = 0.0;
    for n in 1..=n_max as usize {
        let direct = leja_sup_norm_log(&c.section(n), &c.points()[n])?;
        let expected = tau_b(n as u64)? as f64 * LN_2;
        worst = worst.max((direct - expected).abs());
    }
    Ok(CheckResult::new("norm_identity", Some(0.0), worst, 1e-7, n_max))
}

/// The ratio `log‖P_N‖/log(N+1)` is exactly 1 at `N = 2^m - 1`.
fn log_ratio_attained(n_max: u64) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut m = 1;
    while (1u64 << m) - 1 <= n_max {
        worst = worst.max((log_ratio((1u64 << m) - 1)? - 1.0).abs());
        m += 1;
    }
    Ok(CheckResult::new("log_ratio_attained", Some(0.0), worst, 0.0, n_max))
}

/// `k ↦ log‖P_{2^k N}‖/log(2^k N + 1)` strictly decreases, `N ≤ 64`, `k ≤ 6`.
fn log_ratio_decreasing() -> CheckResult {
    let mut worst: f64 = 0.0;
    for n in 1..=64u64 {
        let r: Vec<f64> = (0..=6).map(|k| log_ratio(n << k).expect("n >= 1")).collect();
        for w in r.windows(2) {
            if w[1] >= w[0] {
                worst = worst.max(w[1] - w[0]).max(f64::MIN_POSITIVE);
            }
        }
    }
    CheckResult::new("log_ratio_decreasing", Some(0.0), worst, 0.0, 64 << 6)
}

/// Direct potential at `a_N` against `Σ_k U_s(2^{n_k})`, relative.
fn binary_decomposition(s: f64, n_max: u64) -> Result<CheckResult> {
    let p = RieszParameter::new(s)?;
    let c = canonical_structural(n_max as usize + 1);
    let table = extremal_values_structural(n_max as usize, p)?;
    let mut worst: f64 = 0.0;
    for n in 1..=n_max as usize {
        let direct = potential(&c.section(n), &c.points()[n], p)?;
        worst = worst.max(((direct - table[n - 1]) / direct).abs());
    }
    Ok(CheckResult::new("binary_decomposition", Some(s), worst, 1e-9, n_max))
}

/// Potential of the other roots at one root equals `L_s(N)/N`.
fn roots_formula(s: f64, n_max: u64) -> Result<CheckResult> {
    let p = RieszParameter::new(s)?;
    let mut worst: f64 = 0.0;
    for n in 2..=n_max {
        let roots = roots_of_unity(n as usize);
        let others = Configuration::from_vec_unchecked(roots.points()[1..].to_vec());
        let direct = potential(&others, &roots.points()[0], p)?;
        let l = roots_energy(n, p)? / n as f64;
        worst = worst.max(((direct - l) / l).abs());
    }
    Ok(CheckResult::new("roots_formula", Some(s), worst, 1e-10, n_max))
}

/// `U_s(N) = L_s(2N)/(2N) - L_s(N)/N`, relative.
fn midpoint_formula(s: f64, n_max: u64) -> Result<CheckResult> {
    let p = RieszParameter::new(s)?;
    let mut worst: f64 = 0.0;
    for n in 1..=n_max {
        let u = midpoint_potential(n, p)?;
        let rhs = roots_energy(2 * n, p)? / (2 * n) as f64 - roots_energy(n, p)? / n as f64;
        worst = worst.max(((u - rhs) / u).abs());
    }
    Ok(CheckResult::new("midpoint_formula", Some(s), worst, 1e-10, n_max))
}

/// `U_{N,s}(a_N) < N I_s(σ)`; the residual is the largest excess (0 if none).
fn below_continuous_energy(s: f64, n_max: u64) -> Result<CheckResult> {
    let i = continuous_energy(s)?;
    let v = extremal_values_structural(n_max as usize, RieszParameter::new(s)?)?;
    let mut worst: f64 = 0.0;
    for (k, &u) in v.iter().enumerate() {
        let excess = u - (k + 1) as f64 * i;
        if excess >= 0.0 {
            worst = worst.max(excess).max(f64::MIN_POSITIVE);
        }
    }
    Ok(CheckResult::new("below_continuous_energy", Some(s), worst, 0.0, n_max))
}

/// `W_s(N) = 2^s R_s(2N) - R_s(N)`.
fn w_from_r(s: f64, n_max: u64) -> Result<CheckResult> {
    let n_max = n_max.max(2);
    let r = normalized_series(SeriesKind::RSubcritical, s, 2 * n_max)?;
    let w = normalized_series(SeriesKind::WSubcritical, s, n_max)?;
    let mut worst: f64 = 0.0;
    for &(n, wv) in &w.entries {
        let rhs = s.exp2() * r.value_at(2 * n).unwrap_or(f64::NAN)
            - r.value_at(n).unwrap_or(f64::NAN);
        worst = worst.max((wv - rhs).abs());
    }
    Ok(CheckResult::new("w_from_r", Some(s), worst, 1e-12, 2 * n_max))
}

/// The dyadic values of a roots-of-unity series approach their limit, and
/// the residual shrinks from `N/2` to `N` at the largest power of two `N ≤ n_max`.
fn dyadic_convergence(kind: SeriesKind, s: f64, n_max: u64) -> Result<CheckResult> {
    let limit = match kind {
        SeriesKind::TCritical => critical_constant(),
        _ => dyadic_constant(s)?,
    };
    let n = 1u64 << (63 - n_max.max(2).leading_zeros());
    let series = normalized_series(kind, s, n)?;
    let at = |m: u64| (series.value_at(m).unwrap_or(f64::NAN) - limit).abs();
    let (coarse, fine) = (at(n / 2), at(n));
    // passes when the residual at N is below the one at N/2, or already at
    // rounding level
    let pass = fine < coarse || fine <= ROUNDING_FLOOR;
    Ok(CheckResult {
        name: format!("{}_dyadic_convergence", kind.name()),
        s: Some(s),
        status: if pass { Status::Pass } else { Status::Fail },
        residual: fine,
        tolerance: coarse,
        budget: n,
    })
}

/// `U_2(N) = N²/4` for `N ≤ max(n_max, 4096)` and `L_2(N) = N(N² - 1)/12`
/// against brute-force energies of the roots for `N ≤ 64`.
fn quadratic_exact(n_max: u64) -> Result<CheckResult> {
    let p = RieszParameter::new(2.0)?;
    let mut worst: f64 = 0.0;
    for n in 2..=64u64 {
        let brute = energy(&roots_of_unity(n as usize), p)?;
        let nf = n as f64;
        worst = worst.max((brute / (nf * (nf * nf - 1.0) / 12.0) - 1.0).abs());
    }
    let top = n_max.max(4096);
    for n in 1..=top {
        let nf = n as f64;
        worst = worst.max((midpoint_potential(n, p)? / (nf * nf / 4.0) - 1.0).abs());
    }
    Ok(CheckResult::new("quadratic_exact", Some(2.0), worst, 1e-10, top))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = verify_all(256, &DEFAULT_S_GRID).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{c:?}");
        }
        assert!(r.passed);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(verify_all(MAX_N + 1, &[0.5]), Err(Error::Budget { .. })));
    }

    #[test]
    fn order_is_fixed() {
        let a = verify_all_with(64, &[0.5, 2.0], Exec::Sequential).unwrap();
        let b = verify_all_with(64, &[0.5, 2.0], Exec::default()).unwrap();
        assert_eq!(a, b);
    }
}
