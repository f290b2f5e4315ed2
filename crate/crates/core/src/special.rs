//! Gamma, Riemann zeta for real `s > 0`, the Euler–Mascheroni constant,
//! the continuous energy `I_s(σ)` of normalized arc length, and the catalog
//! of limit constants for each regime.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::binary::{
    g_landmark, g_upper_bound, lambda_lower_bound, search_g_extremes, search_lambda, Frontier,
    LAMBDA_LANDMARK,
};
use crate::circle::{regime_of, Regime};
use crate::error::{domain, Error, Result};
use crate::sum::pairwise_sum_by;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Γ(x)` for `x > 0`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return domain(format!("gamma_fn needs finite x > 0, got {x}"));
    }
    Ok(gamma_positive(x))
}

fn gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        return PI / ((PI * x).sin() * lanczos(1.0 - x));
    }
    lanczos(x)
}

fn lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// Terms used by the accelerated alternating series.
const ETA_TERMS: usize = 36;

/// Dirichlet eta `Σ_{k≥1} (-1)^{k+1} k^{-s}` with Cohen–Rodriguez
/// Villegas–Zagier weights. Relative error about `5.8^{-ETA_TERMS}`.
fn eta(s: f64) -> f64 {
    let n = ETA_TERMS as f64;
    let d = (3.0 + 8f64.sqrt()).powf(n);
    let d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = 0.0;
    for k in 0..ETA_TERMS {
        let kf = k as f64;
        c = b - c;
        sum += c * (kf + 1.0).powf(-s);
        b = (kf + n) * (kf - n) * b / ((kf + 0.5) * (kf + 1.0));
    }
    sum / d
}

/// Riemann zeta for real `s > 0`, `s ≠ 1`.
pub fn zeta(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    if !(s.is_finite() && s > 0.0) {
        return domain(format!("zeta is implemented for finite s > 0, got {s}"));
    }
    Ok(eta(s) / (1.0 - (1.0 - s).exp2()))
}

/// `I_s(σ)`, the `s`-energy of normalized arc length, for `0 ≤ s < 1`.
/// `I_0(σ) = 0`.
pub fn continuous_energy(s: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return domain(format!("I_s(σ) is finite only for 0 <= s < 1, got {s}"));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok((-s).exp2() / PI.sqrt() * gamma_positive((1.0 - s) / 2.0) / gamma_positive(1.0 - s / 2.0))
}

/// The second closed form `Γ(1-s)/Γ(1-s/2)²`.
pub fn continuous_energy_alt(s: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return domain(format!("I_s(σ) is finite only for 0 <= s < 1, got {s}"));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let g = gamma_positive(1.0 - s / 2.0);
    Ok(gamma_positive(1.0 - s) / (g * g))
}

/// `|H_n - log n - γ|`, which must stay below `1/n`.
pub fn euler_gamma_residual(n: u64) -> f64 {
    let harmonic = pairwise_sum_by(n as usize, |i| 1.0 / (n as f64 - i as f64));
    (harmonic - (n as f64).ln() - EULER_GAMMA).abs()
}

/// Check [`EULER_GAMMA`] against its defining limit at `N = 10^6`.
pub fn validate_euler_gamma() -> Result<()> {
    let n = 1_000_000;
    let r = euler_gamma_residual(n);
    if r <= 1.0 / n as f64 {
        Ok(())
    } else {
        Err(Error::Domain(format!("Euler gamma check failed: residual {r:e}")))
    }
}

/// `(2^s - 1)·2ζ(s)/(2π)^s`: the dyadic limit shared by the `0<s<1` and `s>1` regimes.
pub fn dyadic_constant(s: f64) -> Result<f64> {
    Ok((s.exp2() - 1.0) * power_constant(s)?)
}

/// `2ζ(s)/(2π)^s`: the limit along `N = 2^p - 1`.
pub fn power_constant(s: f64) -> Result<f64> {
    Ok(2.0 * zeta(s)? / (2.0 * PI).powf(s))
}

/// `(γ + log(8/π))/π`.
pub fn critical_constant() -> f64 {
    (EULER_GAMMA + (8.0 / PI).ln()) / PI
}

/// `(γ + log(2/π))/π`: the critical limit along `N = 2^p - 1`.
pub fn critical_power_constant() -> f64 {
    (EULER_GAMMA + (2.0 / PI).ln()) / PI
}

/// Theoretical limit constants for one value of `s`.
///
/// * log (`s = 0`): `U_{N,0}(a_N)/N → 0`; the ratio `log‖P_N‖/log(N+1)` has
///   limsup 1 and liminf 0.
/// * `0 < s < 1`: `U_{N,s}(a_N)/N → I_s(σ)`; the second-order sequence has
///   limsup `(2^s-1)2ζ(s)/(2π)^s`.
/// * `s = 1`: `U_{N,1}(a_N)/(N log N) → 1/π`; second-order limsup
///   `(γ + log(8/π))/π`.
/// * `s > 1`: `U_{N,s}(a_N)/N^s` diverges; `first_order` and `limsup` both hold its limsup.
///
/// The liminf bracket combines search bounds with the analytic landmarks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsCatalog {
    pub s: f64,
    pub regime: Regime,
    pub i_sigma: Option<f64>,
    pub zeta: Option<f64>,
    pub first_order: f64,
    pub limsup: Option<f64>,
    pub liminf_lower: Option<f64>,
    pub liminf_upper: Option<f64>,
}

impl ConstantsCatalog {
    pub fn liminf_bracket(&self) -> Option<(f64, f64)> {
        Some((self.liminf_lower?, self.liminf_upper?))
    }
}

pub fn limit_catalog(s: f64) -> Result<ConstantsCatalog> {
    limit_catalog_with(s, &Frontier::default())
}

pub fn limit_catalog_with(s: f64, frontier: &Frontier) -> Result<ConstantsCatalog> {
    if !(s.is_finite() && s >= 0.0) {
        return domain(format!("limit_catalog needs finite s >= 0, got {s}"));
    }
    let regime = regime_of(s);
    let cat = match regime {
        Regime::Log => ConstantsCatalog {
            s,
            regime,
            i_sigma: Some(0.0),
            zeta: None,
            first_order: 0.0,
            limsup: Some(1.0),
            liminf_lower: Some(0.0),
            liminf_upper: Some(0.0),
        },
        Regime::Subcritical => {
            let c = dyadic_constant(s)?;
            let found = search_g_extremes(s, frontier)?.sup_found;
            ConstantsCatalog {
                s,
                regime,
                i_sigma: Some(continuous_energy(s)?),
                zeta: Some(zeta(s)?),
                first_order: continuous_energy(s)?,
                limsup: Some(c),
                // c < 0: larger g-bar means smaller liminf
                liminf_lower: Some(c * g_upper_bound(s)),
                liminf_upper: Some(c * found.max(g_landmark(s))),
            }
        }
        Regime::Critical => {
            let l = critical_constant();
            let lambda_up = search_lambda(frontier).inf_found.min(LAMBDA_LANDMARK);
            ConstantsCatalog {
                s,
                regime,
                i_sigma: None,
                zeta: None,
                first_order: 1.0 / PI,
                limsup: Some(l),
                liminf_lower: Some(l + lambda_lower_bound() / PI),
                liminf_upper: Some(l + lambda_up / PI),
            }
        }
        Regime::Supercritical => {
            let c = dyadic_constant(s)?;
            let found = search_g_extremes(s, frontier)?.inf_found;
            ConstantsCatalog {
                s,
                regime,
                i_sigma: None,
                zeta: Some(zeta(s)?),
                first_order: c,
                limsup: Some(c),
                liminf_lower: Some(0.0),
                liminf_upper: Some(c * found.min(g_landmark(s))),
            }
        }
    };
    Ok(cat)
}
