//! Linear combinations of `σ^{-μ} e^{-σ²G} ∏ Erf(σδ)` and the factors built from them.

mod expr;
pub mod factors;
pub mod series;

pub use expr::{SigmaExpr, SigmaTerm};
pub use factors::{
    attach_gaussian_prefactor, force_factor, interval_factor, point_factor, point_factor_at,
    point_force_factor, point_force_factor_at, product, small_sigma_series, small_sigma_series_force,
};
pub use series::{
    eval_sigma_expr, laurent_series, length_scale, taylor_series, SigmaEvaluator, SERIES_ORDER, SERIES_THRESHOLD,
};
