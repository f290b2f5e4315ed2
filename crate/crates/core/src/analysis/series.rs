//! Normalized series built from the roots-of-unity quantities and from the
//! extremal values of the canonical sequence.

use std::f64::consts::{LN_2, PI};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::binary::{decompose, tau_b};
use crate::circle::{midpoint_potential_with, roots_energy_with, RieszParameter};
use crate::error::{domain, Result};
use crate::exec::Exec;
use crate::sequences::extremal_values_structural_with;
use crate::special::continuous_energy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `(L_s(N) - N² I_s)/N^{1+s}`, `0 < s < 1`.
    RSubcritical,
    /// `(U_s(N) - N I_s)/N^s`, `0 < s < 1`.
    WSubcritical,
    /// `U_1(N)/(N log N)`, `N ≥ 2`.
    W1Critical,
    /// `(U_1(N) - N log N/π)/N`.
    TCritical,
    /// `U_s(N)/N^s`, `s > 1`.
    WSupercritical,
    /// `log‖P_N‖/log(N+1)` for the canonical sequence.
    LogRatio,
    /// `(U_{N,1}(a_N) - N log N/π)/N`.
    SecondOrder1,
    /// `(U_{N,s}(a_N) - N I_s)/N^s`, `0 < s < 1`.
    ExtremalSubcritical,
    /// `U_{N,1}(a_N)/(N log N)`, `N ≥ 2`.
    ExtremalW1,
    /// `U_{N,s}(a_N)/N^s`, `s > 1`.
    ExtremalSupercritical,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 10] = [
        SeriesKind::RSubcritical,
        SeriesKind::WSubcritical,
        SeriesKind::W1Critical,
        SeriesKind::TCritical,
        SeriesKind::WSupercritical,
        SeriesKind::LogRatio,
        SeriesKind::SecondOrder1,
        SeriesKind::ExtremalSubcritical,
        SeriesKind::ExtremalW1,
        SeriesKind::ExtremalSupercritical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::RSubcritical => "r_subcritical",
            SeriesKind::WSubcritical => "w_subcritical",
            SeriesKind::W1Critical => "w1_critical",
            SeriesKind::TCritical => "t_critical",
            SeriesKind::WSupercritical => "w_supercritical",
            SeriesKind::LogRatio => "log_ratio",
            SeriesKind::SecondOrder1 => "second_order_1",
            SeriesKind::ExtremalSubcritical => "extremal_subcritical",
            SeriesKind::ExtremalW1 => "extremal_w1",
            SeriesKind::ExtremalSupercritical => "extremal_supercritical",
        }
    }

    pub fn parse(name: &str) -> Option<SeriesKind> {
        SeriesKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// First index at which the series is defined.
    pub fn first_n(self) -> u64 {
        match self {
            SeriesKind::W1Critical | SeriesKind::ExtremalW1 => 2,
            _ => 1,
        }
    }

    fn check_s(self, s: f64) -> Result<()> {
        let ok = match self {
            SeriesKind::RSubcritical
            | SeriesKind::WSubcritical
            | SeriesKind::ExtremalSubcritical => s > 0.0 && s < 1.0,
            SeriesKind::W1Critical
            | SeriesKind::TCritical
            | SeriesKind::SecondOrder1
            | SeriesKind::ExtremalW1 => s == 1.0,
            SeriesKind::WSupercritical | SeriesKind::ExtremalSupercritical => {
                s > 1.0 && s.is_finite()
            }
            SeriesKind::LogRatio => s == 0.0,
        };
        if ok {
            Ok(())
        } else {
            domain(format!("series {} is not defined at s = {s}", self.name()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedSeries {
    pub s: f64,
    pub kind: SeriesKind,
    pub entries: Vec<(u64, f64)>,
}

impl NormalizedSeries {
    pub fn value_at(&self, n: u64) -> Option<f64> {
        let first = self.entries.first()?.0;
        self.entries
            .get(n.checked_sub(first)? as usize)
            .filter(|e| e.0 == n)
            .map(|e| e.1)
    }

    /// CSV with header `N,value`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "N,value")?;
        for &(n, v) in &self.entries {
            writeln!(w, "{n},{v:.16e}")?;
        }
        Ok(())
    }
}

/// `log‖P_N‖/log(N+1) = τ_b(N) log 2 / log(N+1)`.
pub fn log_ratio(n: u64) -> Result<f64> {
    Ok(tau_b(n)? as f64 * LN_2 / ((n + 1) as f64).ln())
}

/// The series `kind` for `N = first..=n_max`.
pub fn normalized_series(kind: SeriesKind, s: f64, n_max: u64) -> Result<NormalizedSeries> {
    normalized_series_with(kind, s, n_max, Exec::default())
}

pub fn normalized_series_with(
    kind: SeriesKind,
    s: f64,
    n_max: u64,
    exec: Exec,
) -> Result<NormalizedSeries> {
    kind.check_s(s)?;
    if n_max < 2 {
        return domain("series need N_max >= 2");
    }
    let first = kind.first_n();
    let ns: Vec<u64> = (first..=n_max).collect();
    let param = RieszParameter::new(s)?;
    let values: Vec<f64> = match kind {
        SeriesKind::LogRatio => ns.iter().map(|&n| log_ratio(n)).collect::<Result<_>>()?,
        SeriesKind::RSubcritical => {
            let i = continuous_energy(s)?;
            let l = per_n(&ns, exec, |n| roots_energy_with(n, param, Exec::Sequential))?;
            ns.iter()
                .zip(l)
                .map(|(&n, l)| {
                    let nf = n as f64;
                    (l - nf * nf * i) / nf.powf(1.0 + s)
                })
                .collect()
        }
        SeriesKind::WSubcritical | SeriesKind::W1Critical | SeriesKind::TCritical
        | SeriesKind::WSupercritical => {
            let u = per_n(&ns, exec, |n| midpoint_potential_with(n, param, Exec::Sequential))?;
            let i = if kind == SeriesKind::WSubcritical { continuous_energy(s)? } else { 0.0 };
            ns.iter().zip(u).map(|(&n, u)| transform(kind, s, i, n, u)).collect()
        }
        SeriesKind::SecondOrder1
        | SeriesKind::ExtremalSubcritical
        | SeriesKind::ExtremalW1
        | SeriesKind::ExtremalSupercritical => {
            let u = extremal_values_structural_with(n_max as usize, param, exec)?;
            let i = if kind == SeriesKind::ExtremalSubcritical { continuous_energy(s)? } else { 0.0 };
            ns.iter()
                .map(|&n| transform(kind, s, i, n, u[n as usize - 1]))
                .collect()
        }
    };
    Ok(NormalizedSeries {
        s,
        kind,
        entries: ns.into_iter().zip(values).collect(),
    })
}

/// Normalization of a potential value `u` at index `n`; `i` is `I_s(σ)` where used.
pub fn transform(kind: SeriesKind, s: f64, i: f64, n: u64, u: f64) -> f64 {
    let nf = n as f64;
    match kind {
        SeriesKind::WSubcritical | SeriesKind::ExtremalSubcritical => (u - nf * i) / nf.powf(s),
        SeriesKind::W1Critical | SeriesKind::ExtremalW1 => u / (nf * nf.ln()),
        SeriesKind::TCritical | SeriesKind::SecondOrder1 => (u - nf * nf.ln() / PI) / nf,
        SeriesKind::WSupercritical | SeriesKind::ExtremalSupercritical => u / nf.powf(s),
        SeriesKind::RSubcritical => (u - nf * nf * i) / nf.powf(1.0 + s),
        SeriesKind::LogRatio => u / (nf + 1.0).ln(),
    }
}

fn per_n<F>(ns: &[u64], exec: Exec, f: F) -> Result<Vec<f64>>
where
    F: Fn(u64) -> Result<f64> + Sync + Send,
{
    exec.map_slice(ns, |&n| f(n)).into_iter().collect()
}

/// `(U_{N,s}(a_N) - N I_s)/N^s` for `N = 1..=n_max`, `0 < s < 1`.
pub fn extremal_second_order_series(s: f64, n_max: u64) -> Result<NormalizedSeries> {
    if !(s > 0.0 && s < 1.0) {
        return domain(format!("extremal_second_order_series needs 0 < s < 1, got {s}"));
    }
    normalized_series(SeriesKind::ExtremalSubcritical, s, n_max)
}

/// The same series rebuilt as `Σ_k W_s(2^{n_k})·(2^{n_k}/N)^s` from a table
/// of `W_s(2^j)`.
pub fn dyadic_reconstruction(s: f64, n_max: u64) -> Result<NormalizedSeries> {
    if !(s > 0.0 && s < 1.0) {
        return domain(format!("dyadic_reconstruction needs 0 < s < 1, got {s}"));
    }
    let param = RieszParameter::new(s)?;
    let i = continuous_energy(s)?;
    let max_exp = 63 - n_max.max(1).leading_zeros();
    let w: Vec<f64> = (0..=max_exp)
        .map(|j| {
            let n = 1u64 << j;
            midpoint_potential_with(n, param, Exec::default())
                .map(|u| transform(SeriesKind::WSubcritical, s, i, n, u))
        })
        .collect::<Result<_>>()?;
    let entries = (1..=n_max)
        .map(|n| {
            let nf = n as f64;
            let v = decompose(n)
                .expect("n >= 1")
                .exponents()
                .iter()
                .map(|&e| w[e as usize] * ((1u64 << e) as f64 / nf).powf(s))
                .sum();
            (n, v)
        })
        .collect();
    Ok(NormalizedSeries {
        s,
        kind: SeriesKind::ExtremalSubcritical,
        entries,
    })
}
