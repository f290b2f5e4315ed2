//! Normalized asymptotic series, limit-point witnesses, equidistribution
//! diagnostics and the verification harness.

pub mod discrepancy;
pub mod figures;
pub mod limits;
pub mod series;
pub mod verify;

pub use discrepancy::{star_discrepancy, uniform_distribution_report, DiscrepancyReport};
pub use figures::figure_series;
pub use limits::{limit_point_check, theta_limit_prediction, LimitPointCheck, MAX_N};
pub use series::{
    dyadic_reconstruction, extremal_second_order_series, log_ratio, normalized_series,
    normalized_series_with, NormalizedSeries, SeriesKind,
};
pub use verify::{verify_all, verify_all_with, CheckResult, Status, VerificationReport};
