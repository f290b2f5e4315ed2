//! Points on the unit circle, Riesz and logarithmic kernels, potentials,
//! discrete energies and the roots-of-unity quantities `L_s(N)` and `U_s(N)`.
//!
//! Angles are measured in turns (`1 turn = 2π`). Points produced by the
//! bit-reversal construction are dyadic rationals and are stored exactly.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::sum::{pairwise_sum_by_with, pairwise_sum_with};

/// Largest supported dyadic level.
pub const MAX_LEVEL: u32 = 63;

/// A point `exp(2πi·angle)` of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CirclePoint {
    /// `numerator / 2^level` turns, kept in lowest terms.
    Dyadic { numerator: u64, level: u32 },
    /// A real turn value in `[0, 1)`.
    Turn(f64),
}

impl CirclePoint {
    /// The point `1`.
    pub const ONE: CirclePoint = CirclePoint::Dyadic {
        numerator: 0,
        level: 0,
    };

    pub fn dyadic(numerator: u64, level: u32) -> Result<Self> {
        if level > MAX_LEVEL {
            return domain(format!("dyadic level {level} exceeds {MAX_LEVEL}"));
        }
        if numerator >= 1u64 << level {
            return domain(format!("numerator {numerator} not below 2^{level}"));
        }
        if numerator == 0 {
            return Ok(Self::ONE);
        }
        let shift = numerator.trailing_zeros().min(level);
        Ok(CirclePoint::Dyadic {
            numerator: numerator >> shift,
            level: level - shift,
        })
    }

    /// A point at `x` turns; `x` is reduced modulo 1.
    pub fn turn(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return domain(format!("angle {x} is not finite"));
        }
        let mut r = x.rem_euclid(1.0);
        if r >= 1.0 {
            r = 0.0;
        }
        Ok(CirclePoint::Turn(r))
    }

    /// Angle in turns, in `[0, 1)`.
    pub fn turns(&self) -> f64 {
        match *self {
            CirclePoint::Dyadic { numerator, level } => numerator as f64 / pow2(level),
            CirclePoint::Turn(x) => x,
        }
    }

    /// Signed turn offset `self - other` reduced to `[-1/2, 1/2]`.
    pub fn offset_from(&self, other: &CirclePoint) -> f64 {
        match (*self, *other) {
            (
                CirclePoint::Dyadic {
                    numerator: a,
                    level: la,
                },
                CirclePoint::Dyadic {
                    numerator: b,
                    level: lb,
                },
            ) => {
                let level = la.max(lb);
                let modulus = 1u128 << level;
                let a = (a as u128) << (level - la);
                let b = (b as u128) << (level - lb);
                let d = (a + modulus - b) % modulus;
                if d > modulus / 2 {
                    -((modulus - d) as f64) / pow2(level)
                } else {
                    d as f64 / pow2(level)
                }
            }
            _ => reduce_offset(self.turns() - other.turns()),
        }
    }

    pub fn same_point(&self, other: &CirclePoint) -> bool {
        self.offset_from(other) == 0.0
    }
}

fn pow2(level: u32) -> f64 {
    (2.0f64).powi(level as i32)
}

/// Reduce a turn difference to `[-1/2, 1/2]`.
pub fn reduce_offset(delta: f64) -> f64 {
    delta - delta.round()
}

/// `2·|sin(π·delta)|` for a turn offset `delta`.
#[inline]
pub fn chord_from_offset(delta: f64) -> f64 {
    2.0 * (PI * reduce_offset(delta)).sin().abs()
}

/// Euclidean distance between two points of the circle.
///
/// Coincident points give [`Error::CoincidentPoints`].
pub fn chord_distance(z: &CirclePoint, w: &CirclePoint) -> Result<f64> {
    let delta = z.offset_from(w);
    if delta == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(2.0 * (PI * delta).sin().abs())
}

/// Kernel regime selected by `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `s = 0`, logarithmic kernel.
    Log,
    /// `0 < s < 1`.
    Subcritical,
    /// `s = 1`.
    Critical,
    /// `s > 1`.
    Supercritical,
}

/// Riesz exponent `s ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct RieszParameter(f64);

impl RieszParameter {
    pub const LOG: RieszParameter = RieszParameter(0.0);

    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s < 0.0 {
            return domain(format!("Riesz exponent must be finite and non-negative, got {s}"));
        }
        Ok(RieszParameter(s))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn regime(self) -> Regime {
        regime_of(self.0)
    }

    /// `k_s` as a function of the distance `d > 0`.
    #[inline]
    pub fn kernel_of_distance(self, d: f64) -> f64 {
        let s = self.0;
        if s == 0.0 {
            -d.ln()
        } else if s == 1.0 {
            1.0 / d
        } else if s == 2.0 {
            1.0 / (d * d)
        } else if s == 0.5 {
            1.0 / d.sqrt()
        } else {
            d.powf(-s)
        }
    }
}

pub fn regime_of(s: f64) -> Regime {
    if s == 0.0 {
        Regime::Log
    } else if s < 1.0 {
        Regime::Subcritical
    } else if s == 1.0 {
        Regime::Critical
    } else {
        Regime::Supercritical
    }
}

/// `-log|z - w|` for `s = 0`, `|z - w|^{-s}` for `s > 0`.
pub fn kernel(s: RieszParameter, z: &CirclePoint, w: &CirclePoint) -> Result<f64> {
    let d = chord_distance(z, w).map_err(|_| Error::InfiniteKernel)?;
    Ok(s.kernel_of_distance(d))
}

/// An ordered list of pairwise-distinct points, in selection order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Configuration {
    points: Vec<CirclePoint>,
}

impl Configuration {
    /// Build a configuration, rejecting coincident points.
    pub fn new(points: Vec<CirclePoint>) -> Result<Self> {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].turns().total_cmp(&points[b].turns()));
        for pair in order.windows(2) {
            if points[pair[0]].same_point(&points[pair[1]]) {
                return Err(Error::DuplicatePoint {
                    index: pair[0].max(pair[1]),
                });
            }
        }
        if let (Some(&first), Some(&last)) = (order.first(), order.last()) {
            if first != last && points[first].same_point(&points[last]) {
                return Err(Error::DuplicatePoint {
                    index: first.max(last),
                });
            }
        }
        Ok(Configuration { points })
    }

    /// Wrap points without the distinctness check.
    pub fn from_vec_unchecked(points: Vec<CirclePoint>) -> Self {
        Configuration { points }
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The first `n` points.
    pub fn section(&self, n: usize) -> Configuration {
        Configuration {
            points: self.points[..n.min(self.points.len())].to_vec(),
        }
    }

    pub fn turns(&self) -> Vec<f64> {
        self.points.iter().map(CirclePoint::turns).collect()
    }
}

/// The `n`-th roots of unity `exp(2πik/n)`, `k = 0..n`.
pub fn roots_of_unity(n: usize) -> Configuration {
    let points = if n.is_power_of_two() && n.trailing_zeros() <= MAX_LEVEL {
        let level = n.trailing_zeros();
        (0..n as u64)
            .map(|k| CirclePoint::dyadic(k, level).expect("in range"))
            .collect()
    } else {
        (0..n).map(|k| CirclePoint::Turn(k as f64 / n as f64)).collect()
    };
    Configuration { points }
}

/// `U(z) = Σ_k k_s(a_k, z)` over the configuration.
pub fn potential(config: &Configuration, z: &CirclePoint, s: RieszParameter) -> Result<f64> {
    potential_with(config, z, s, Exec::default())
}

pub fn potential_with(
    config: &Configuration,
    z: &CirclePoint,
    s: RieszParameter,
    exec: Exec,
) -> Result<f64> {
    let mut terms = Vec::with_capacity(config.len());
    for (index, a) in config.points().iter().enumerate() {
        let d = chord_distance(a, z).map_err(|_| Error::InfinitePotential { index })?;
        terms.push(s.kernel_of_distance(d));
    }
    Ok(pairwise_sum_with(&terms, exec))
}

/// Potential at turn `x` of points given by their turns; `x` must not
/// coincide with any of them.
#[inline]
pub(crate) fn potential_at_turn(turns: &[f64], x: f64, s: RieszParameter) -> f64 {
    crate::sum::pairwise_sum_by(turns.len(), |k| {
        s.kernel_of_distance(chord_from_offset(x - turns[k]))
    })
}

/// First and second derivatives in `x` (per turn) of [`potential_at_turn`].
///
/// With `u = x - t`, `d/du k = -sπ cot(πu) k` for `s > 0` and `-π cot(πu)`
/// for `s = 0`.
pub(crate) fn potential_derivatives_at_turn(turns: &[f64], x: f64, s: RieszParameter) -> (f64, f64) {
    let sv = s.value();
    let term = |k: usize| {
        let u = PI * reduce_offset(x - turns[k]);
        let (sin, cos) = u.sin_cos();
        let cot = cos / sin;
        let csc2 = 1.0 / (sin * sin);
        if sv == 0.0 {
            (-PI * cot, PI * PI * csc2)
        } else {
            let k = s.kernel_of_distance(2.0 * sin.abs());
            (-sv * PI * cot * k, sv * PI * PI * k * (csc2 + sv * cot * cot))
        }
    };
    let d1 = crate::sum::pairwise_sum_by(turns.len(), |k| term(k).0);
    let d2 = crate::sum::pairwise_sum_by(turns.len(), |k| term(k).1);
    (d1, d2)
}

/// `E_s = Σ_{i≠j} k_s(x_i, x_j)`. Fewer than two points give 0.
pub fn energy(config: &Configuration, s: RieszParameter) -> Result<f64> {
    energy_with(config, s, Exec::default())
}

pub fn energy_with(config: &Configuration, s: RieszParameter, exec: Exec) -> Result<f64> {
    let pts = config.points();
    if pts.len() < 2 {
        return Ok(0.0);
    }
    let rows: Vec<Result<f64>> = exec.map(pts.len() - 1, |i| {
        let mut terms = Vec::with_capacity(pts.len() - i - 1);
        for (j, w) in pts.iter().enumerate().skip(i + 1) {
            let d = chord_distance(&pts[i], w).map_err(|_| Error::InfiniteEnergy {
                first: i,
                second: j,
            })?;
            terms.push(s.kernel_of_distance(d));
        }
        Ok(pairwise_sum_with(&terms, Exec::Sequential))
    });
    let rows = rows.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(2.0 * pairwise_sum_with(&rows, exec))
}

/// `L_s(N)`: energy of the `N`-th roots of unity, `N Σ_{k=1}^{N-1} k_s(2 sin(πk/N))`.
///
/// `L_s(1) = 0`.
pub fn roots_energy(n: u64, s: RieszParameter) -> Result<f64> {
    roots_energy_with(n, s, Exec::default())
}

pub fn roots_energy_with(n: u64, s: RieszParameter, exec: Exec) -> Result<f64> {
    if n == 0 {
        return domain("roots_energy needs N >= 1");
    }
    if n == 1 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let sum = pairwise_sum_by_with((n - 1) as usize, exec, |i| {
        let k = i as u64 + 1;
        let m = k.min(n - k);
        s.kernel_of_distance(2.0 * (PI * (m as f64 / nf)).sin())
    });
    Ok(nf * sum)
}

/// `U_s(N)`: potential of the `N`-th roots of unity at `exp(πi/N)`, summed directly.
pub fn midpoint_potential(n: u64, s: RieszParameter) -> Result<f64> {
    midpoint_potential_with(n, s, Exec::default())
}

pub fn midpoint_potential_with(n: u64, s: RieszParameter, exec: Exec) -> Result<f64> {
    if n == 0 {
        return domain("midpoint_potential needs N >= 1");
    }
    let two_n = 2 * n;
    let denom = two_n as f64;
    Ok(pairwise_sum_by_with(n as usize, exec, |i| {
        // offset (2k - 1) / 2N turns, k = i + 1
        let m = 2 * i as u64 + 1;
        let m = m.min(two_n - m);
        s.kernel_of_distance(2.0 * (PI * (m as f64 / denom)).sin())
    }))
}

/// `Σ_k log|z - a_k|`, the log of `Π_k |z - a_k|`.
pub fn leja_sup_norm_log(config: &Configuration, z: &CirclePoint) -> Result<f64> {
    let mut terms = Vec::with_capacity(config.len());
    for (index, a) in config.points().iter().enumerate() {
        let d = chord_distance(a, z).map_err(|_| Error::NegativeInfiniteLog { index })?;
        terms.push(d.ln());
    }
    Ok(pairwise_sum_with(&terms, Exec::default()))
}
