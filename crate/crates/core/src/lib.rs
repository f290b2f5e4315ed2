//! Greedy Riesz energy and Leja sequences on the unit circle.
//!
//! Angles are turns in `[0, 1)`. Sums go through a fixed pairwise reduction,
//! so results do not depend on [`Exec`] or the thread count.

pub mod analysis;
pub mod binary;
pub mod circle;
pub mod error;
pub mod exec;
pub mod sequences;
pub mod special;
pub mod sum;

pub use circle::{CirclePoint, Configuration, Regime, RieszParameter};
pub use error::{Error, Result};
pub use exec::Exec;
pub use sequences::{GreedyOptions, GreedyRun};
