//! Greedy `s`-energy sequences: the exact bit-reversal construction started
//! at `1`, and a numerical greedy minimizer for arbitrary initial sets.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::binary::decompose;
use crate::circle::{
    energy, midpoint_potential_with, potential_at_turn, potential_derivatives_at_turn, CirclePoint,
    Configuration, RieszParameter, MAX_LEVEL,
};
use crate::error::{domain, Result};
use crate::exec::Exec;
use crate::sum::{prefix_sums, Neumaier};

/// Bit reversal of `n`: `Σ b_j 2^j ↦ Σ b_j 2^{-j-1}`, as an exact dyadic point.
pub fn bit_reversal_point(n: u64) -> CirclePoint {
    if n == 0 {
        return CirclePoint::ONE;
    }
    let level = 64 - n.leading_zeros();
    let numerator = n.reverse_bits() >> (64 - level);
    CirclePoint::dyadic(numerator, level).expect("level <= 64 and numerator < 2^level")
}

/// The first `n` points `a_0, ..., a_{n-1}` of the canonical greedy sequence.
pub fn canonical_structural(n: usize) -> Configuration {
    Configuration::from_vec_unchecked((0..n as u64).map(bit_reversal_point).collect())
}

/// `U_s(2^j)` for `j = 0..=max_exp`.
fn dyadic_midpoint_table(max_exp: u32, s: RieszParameter, exec: Exec) -> Result<Vec<f64>> {
    (0..=max_exp)
        .map(|j| {
            if s.value() == 0.0 {
                // the product over the roots at the midpoint is |z^N - 1| = 2
                Ok(-std::f64::consts::LN_2)
            } else {
                midpoint_potential_with(1u64 << j, s, exec)
            }
        })
        .collect()
}

/// `U_{N,s}(a_N)` for `N = 1..=n_max` (entry `N - 1`), assembled as
/// `Σ_k U_s(2^{n_k})` over the binary digits of `N`.
pub fn extremal_values_structural(n_max: usize, s: RieszParameter) -> Result<Vec<f64>> {
    extremal_values_structural_with(n_max, s, Exec::default())
}

pub fn extremal_values_structural_with(
    n_max: usize,
    s: RieszParameter,
    exec: Exec,
) -> Result<Vec<f64>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let max_exp = 63 - (n_max as u64).leading_zeros();
    let table = dyadic_midpoint_table(max_exp, s, exec)?;
    Ok(exec.map(n_max, |i| extremal_from_table(i as u64 + 1, &table)))
}

fn extremal_from_table(n: u64, table: &[f64]) -> f64 {
    let mut acc = Neumaier::new();
    for &e in decompose(n).expect("n >= 1").exponents() {
        acc.add(table[e as usize]);
    }
    acc.total()
}

/// `U_{N,s}(a_N)` for a single `N`, computing only the dyadic terms it needs.
pub fn extremal_value_at(n: u64, s: RieszParameter, exec: Exec) -> Result<f64> {
    let expansion = decompose(n)?;
    let mut acc = Neumaier::new();
    for &e in expansion.exponents() {
        acc.add(if s.value() == 0.0 {
            -std::f64::consts::LN_2
        } else {
            midpoint_potential_with(1u64 << e, s, exec)?
        });
    }
    Ok(acc.total())
}

/// `E_s(α_N) = 2 Σ_{j<N} U_{j,s}(a_j)` for a sequence started at a single
/// point. Input entry `j - 1` holds `U_{j,s}(a_j)`; output entry `N - 1`
/// holds `E_s(α_N)`, so the output is one longer than the input.
pub fn energy_series_from_extremal(extremal_values: &[f64]) -> Vec<f64> {
    prefix_sums(extremal_values)
        .into_iter()
        .map(|v| 2.0 * v)
        .collect()
}

/// Settings of the numerical minimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreedyOptions {
    /// Samples per full turn; every gap gets at least [`MIN_GAP_SAMPLES`].
    pub grid: usize,
    /// Golden-section iterations on the winning bracket.
    pub refine_iters: usize,
    #[serde(skip)]
    pub exec: Exec,
}

pub const MIN_GRID: usize = 64;
pub const MIN_GAP_SAMPLES: usize = 8;

impl Default for GreedyOptions {
    fn default() -> Self {
        GreedyOptions {
            grid: 4096,
            refine_iters: 40,
            exec: Exec::default(),
        }
    }
}

/// A greedy sequence grown from an initial configuration.
///
/// `extremal_values[i]` is `U_{n,s}(a_n)` for `n = initial.len() + i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyRun {
    pub s: RieszParameter,
    pub initial: Configuration,
    pub points: Configuration,
    pub extremal_values: Vec<f64>,
}

impl GreedyRun {
    /// The canonical sequence from `{1}` with its exact extremal values.
    pub fn structural(n: usize, s: RieszParameter) -> Result<Self> {
        if n == 0 {
            return domain("structural run needs N >= 1");
        }
        let mut values = extremal_values_structural(n.saturating_sub(1), s)?;
        values.truncate(n - 1);
        Ok(GreedyRun {
            s,
            initial: canonical_structural(1),
            points: canonical_structural(n),
            extremal_values: values,
        })
    }

    /// Index of the first greedy step.
    pub fn first_step(&self) -> usize {
        self.initial.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `U_{n,s}(a_n)`, or `None` for an initial point.
    pub fn extremal_at(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.first_step())
            .and_then(|i| self.extremal_values.get(i).copied())
    }

    /// `E_s(α_n)` for `n = 1..=len`: the initial energy plus twice the
    /// running sum of extremal values.
    pub fn energy_series(&self) -> Result<Vec<f64>> {
        let p = self.first_step();
        let mut out = Vec::with_capacity(self.len());
        for n in 1..=p.min(self.len()) {
            out.push(energy(&self.points.section(n), self.s)?);
        }
        let base = out.last().copied().unwrap_or(0.0);
        for v in energy_series_from_extremal(&self.extremal_values).into_iter().skip(1) {
            out.push(base + v);
        }
        Ok(out)
    }

    /// CSV with header `n,angle_turns,extremal_value`; initial points leave
    /// the last column empty.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,angle_turns,extremal_value")?;
        for (n, p) in self.points.points().iter().enumerate() {
            match self.extremal_at(n) {
                Some(v) => writeln!(w, "{n},{:.16e},{:.16e}", p.turns(), v)?,
                None => writeln!(w, "{n},{:.16e},", p.turns())?,
            }
        }
        Ok(())
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const NEWTON_POLISH: usize = 8;

/// Grow `initial` to `n` points, each new point minimizing the potential of
/// the points chosen so far (for `s = 0`, maximizing the product of distances).
///
/// Each step samples every gap between consecutive points, keeps the best
/// sample (ties within `1e-12` relative go to the smallest angle) and refines
/// its bracket by golden section.
pub fn greedy_numerical(
    initial: &Configuration,
    s: RieszParameter,
    n: usize,
    options: GreedyOptions,
) -> Result<GreedyRun> {
    if initial.is_empty() {
        return domain("greedy_numerical needs at least one initial point");
    }
    if options.grid < MIN_GRID {
        return domain(format!("grid must be at least {MIN_GRID}, got {}", options.grid));
    }
    let initial = Configuration::new(initial.points().to_vec())?;
    let mut points = initial.points().to_vec();
    let mut turns = initial.turns();
    let mut extremal_values = Vec::with_capacity(n.saturating_sub(points.len()));
    while points.len() < n {
        let (x, value) = greedy_step(&turns, s, options);
        let p = exact_if_dyadic(x);
        points.push(p);
        turns.push(p.turns());
        extremal_values.push(value);
    }
    Ok(GreedyRun {
        s,
        initial,
        points: Configuration::from_vec_unchecked(points),
        extremal_values,
    })
}

/// Snap to a short dyadic when `x` is one, so later offsets stay exact.
fn exact_if_dyadic(x: f64) -> CirclePoint {
    let scaled = x * (1u64 << 30) as f64;
    if scaled == scaled.trunc() {
        if let Ok(p) = CirclePoint::dyadic(scaled as u64, 30.min(MAX_LEVEL)) {
            return p;
        }
    }
    CirclePoint::Turn(x)
}

fn greedy_step(turns: &[f64], s: RieszParameter, options: GreedyOptions) -> (f64, f64) {
    let mut sorted = turns.to_vec();
    sorted.sort_by(f64::total_cmp);
    let f = |x: f64| potential_at_turn(turns, x, s);

    // (gap start, gap length, samples)
    let gaps: Vec<(f64, f64, usize)> = (0..sorted.len())
        .map(|i| {
            let a = sorted[i];
            let b = if i + 1 < sorted.len() { sorted[i + 1] } else { sorted[0] + 1.0 };
            let len = b - a;
            let m = ((options.grid as f64 * len).ceil() as usize).max(MIN_GAP_SAMPLES);
            (a, len, m)
        })
        .collect();
    let mut samples = Vec::new();
    for (gi, &(_, _, m)) in gaps.iter().enumerate() {
        for j in 1..=m {
            samples.push((gi, j));
        }
    }
    let at = |gi: usize, j: usize| {
        let (a, len, m) = gaps[gi];
        a + len * j as f64 / (m + 1) as f64
    };
    let values = options.exec.map_slice(&samples, |&(gi, j)| f(at(gi, j)));

    let mut best = 0usize;
    for i in 1..samples.len() {
        let (v, b) = (values[i], values[best]);
        let tol = 1e-12 * v.abs().max(b.abs()).max(1.0);
        if v < b - tol {
            best = i;
        } else if v <= b + tol {
            let (gi, j) = samples[i];
            let (gb, jb) = samples[best];
            if at(gi, j).rem_euclid(1.0) < at(gb, jb).rem_euclid(1.0) {
                best = i;
            }
        }
    }

    let (gi, j) = samples[best];
    let (mut lo, mut hi) = (at(gi, j - 1), at(gi, j + 1));
    let (mut x_best, mut v_best) = (at(gi, j), values[best]);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..options.refine_iters {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v < v_best {
            x_best = x;
            v_best = v;
        }
    }
    // The potential is strictly convex on each gap, so Newton on its
    // derivative converges from here; golden section alone stalls near
    // sqrt(eps) because the potential is flat to rounding at its minimum.
    let (gap_lo, gap_hi) = (at(gi, 0), at(gi, gaps[gi].2 + 1));
    let mut x_newton = x_best;
    for _ in 0..NEWTON_POLISH {
        let (d1, d2) = potential_derivatives_at_turn(turns, x_newton, s);
        if d2.is_nan() || d2 <= 0.0 || d1 == 0.0 {
            break;
        }
        let next = x_newton - d1 / d2;
        if !(next > gap_lo && next < gap_hi) {
            break;
        }
        let step = (next - x_newton).abs();
        x_newton = next;
        if step <= 1e-17 {
            break;
        }
    }
    // keep the polished point unless it is clearly worse
    if f(x_newton) <= v_best + 1e-9 * v_best.abs().max(1.0) {
        x_best = x_newton;
    }
    let x = x_best.rem_euclid(1.0);
    let x = if x >= 1.0 { 0.0 } else { x };
    (x, f(x))
}
