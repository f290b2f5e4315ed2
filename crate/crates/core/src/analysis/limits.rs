//! Limit points indexed by `θ` and their numerical witnesses.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::binary::{g_value, lambda_value, ThetaVector};
use crate::circle::{regime_of, Regime, RieszParameter};
use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::sequences::extremal_value_at;
use crate::special::{continuous_energy, critical_constant, dyadic_constant};

use super::series::{transform, SeriesKind};

/// Largest `N` any check may evaluate.
pub const MAX_N: u64 = 1 << 20;

/// The limit point of the normalized extremal sequence attached to `θ`.
pub fn theta_limit_prediction(theta: &ThetaVector, s: f64) -> Result<f64> {
    match regime_of(s) {
        Regime::Critical => Ok(critical_constant() + lambda_value(theta) / PI),
        Regime::Subcritical | Regime::Supercritical if s.is_finite() => {
            Ok(g_value(theta, s) * dyadic_constant(s)?)
        }
        _ => domain(format!("no θ limit points for s = {s}")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitPointCheck {
    pub n: u64,
    pub predicted: f64,
    pub observed: f64,
    pub gap: f64,
}

/// Index `2^depth·M + 2^z - 1` of the witness subsequence, where `z` is the
/// number of zero components of `θ`: the shifted digits of `M` give the
/// nonzero components and `z` low digits give the vanishing ones.
pub fn witness_index(theta: &ThetaVector, depth: u32) -> Result<u64> {
    let z = theta.trailing_zeros() as u32;
    if depth == 0 {
        return domain("depth must be at least 1");
    }
    if depth < z {
        return domain(format!("depth {depth} leaves no room for {z} zero components"));
    }
    let m = theta.odd_denominator();
    let shifted = (m as u128) << depth;
    let n = shifted + (1u128 << z) - 1;
    if n > MAX_N as u128 {
        return Err(Error::Budget {
            requested: n.min(u64::MAX as u128) as u64,
            limit: MAX_N,
        });
    }
    Ok(n as u64)
}

/// Evaluate the normalized extremal sequence at the witness index and
/// compare with [`theta_limit_prediction`].
pub fn limit_point_check(theta: &ThetaVector, s: f64, depth: u32) -> Result<LimitPointCheck> {
    let predicted = theta_limit_prediction(theta, s)?;
    let n = witness_index(theta, depth)?;
    let u = extremal_value_at(n, RieszParameter::new(s)?, Exec::default())?;
    let (kind, i) = match regime_of(s) {
        Regime::Subcritical => (SeriesKind::ExtremalSubcritical, continuous_energy(s)?),
        Regime::Critical => (SeriesKind::SecondOrder1, 0.0),
        _ => (SeriesKind::ExtremalSupercritical, 0.0),
    };
    let observed = transform(kind, s, i, n, u);
    Ok(LimitPointCheck {
        n,
        predicted,
        observed,
        gap: (observed - predicted).abs(),
    })
}
