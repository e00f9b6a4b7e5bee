//! Numeric evaluation: the error function and adaptive quadrature on the
//! half-line.

pub mod adaptive;
pub mod erf;
pub mod fallback;

pub use adaptive::{integrate, integrate_halfline, QuadOptions, QuadratureResult};
pub use fallback::{integrate_product, verify_table_identities, FactorProduct};
pub use erf::{erf_generic, erf_value, ErfScalar, ERF_LIMIT, TWO_OVER_SQRT_PI};
