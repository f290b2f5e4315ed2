//! The plotted series, on their original parameter grids.

use crate::error::{domain, Result};

use super::series::{normalized_series, NormalizedSeries, SeriesKind};

pub const FIGURE_IDS: [u32; 4] = [1, 2, 3, 4];
pub const FIG1_N_MAX: u64 = 5000;
pub const FIG_N_MAX: u64 = 2048;
pub const FIG2_S: [f64; 6] = [0.001, 0.1, 0.3, 0.5, 0.7, 0.99];
pub const FIG4_S: [f64; 4] = [1.005, 1.5, 3.5, 5.0];

/// One series per value of `s` shown in figure `id`.
pub fn figure_series(id: u32) -> Result<Vec<NormalizedSeries>> {
    match id {
        1 => Ok(vec![normalized_series(SeriesKind::LogRatio, 0.0, FIG1_N_MAX)?]),
        2 => FIG2_S
            .iter()
            .map(|&s| normalized_series(SeriesKind::ExtremalSubcritical, s, FIG_N_MAX))
            .collect(),
        3 => Ok(vec![normalized_series(SeriesKind::SecondOrder1, 1.0, FIG_N_MAX)?]),
        4 => FIG4_S
            .iter()
            .map(|&s| normalized_series(SeriesKind::ExtremalSupercritical, s, FIG_N_MAX))
            .collect(),
        _ => domain(format!("unknown figure {id}; expected 1 to 4")),
    }
}
