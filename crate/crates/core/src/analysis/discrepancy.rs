//! Equidistribution diagnostics for greedy runs.

use serde::{Deserialize, Serialize};

use crate::circle::{regime_of, Regime};
use crate::error::{domain, Result};
use crate::sequences::GreedyRun;
use crate::special::continuous_energy;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub n: usize,
    pub star_discrepancy: f64,
    /// `E_s(α_N)/N² - I_s(σ)`.
    pub energy_gap: f64,
}

/// Star discrepancy of angles in `[0, 1)` against arc length, over arcs
/// `[0, x)`: `max_i max(i/N - x_(i), x_(i) - (i-1)/N)` on the sorted sample.
/// An empty sample has discrepancy 1.
pub fn star_discrepancy(turns: &[f64]) -> f64 {
    if turns.is_empty() {
        return 1.0;
    }
    let mut x = turns.to_vec();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &xi)| {
            let i = i as f64;
            ((i + 1.0) / n - xi).max(xi - i / n)
        })
        .fold(0.0, f64::max)
}

/// Discrepancy and energy gap of the first `n` points of `run`.
pub fn uniform_distribution_report(run: &GreedyRun, n: usize) -> Result<DiscrepancyReport> {
    let s = run.s.value();
    if !matches!(regime_of(s), Regime::Log | Regime::Subcritical) {
        return domain(format!("equidistribution of energy is only asserted for 0 <= s < 1, got {s}"));
    }
    if n == 0 || n > run.len() {
        return domain(format!("section size {n} outside 1..={}", run.len()));
    }
    let energies = run.energy_series()?;
    let nf = n as f64;
    Ok(DiscrepancyReport {
        n,
        star_discrepancy: star_discrepancy(&run.points.section(n).turns()),
        energy_gap: energies[n - 1] / (nf * nf) - continuous_energy(s)?,
    })
}
