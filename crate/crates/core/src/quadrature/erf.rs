//! The error function in the odd-primitive normalization
//! `Erf(ξ) = ∫_0^ξ e^{-t²} dt = (√π/2)·erf(ξ)`.

/// `√π / 2`, the limit of `Erf` at `+∞`.
pub const ERF_LIMIT: f64 = 1.0 / std::f64::consts::FRAC_2_SQRT_PI;

/// `2/√π`, the normalization of the Laplace representation of `1/√t`.
pub const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Scalars that can evaluate the standard error function.
pub trait ErfScalar: num_traits::Float {
    fn std_erf(self) -> Self;
}

impl ErfScalar for f64 {
    fn std_erf(self) -> Self {
        libm::erf(self)
    }
}

impl ErfScalar for f32 {
    fn std_erf(self) -> Self {
        libm::erff(self)
    }
}

/// `Erf(ξ)` in the odd-primitive normalization.
pub fn erf_value(xi: f64) -> f64 {
    ERF_LIMIT * xi.std_erf()
}

/// Generic form of [`erf_value`].
pub fn erf_generic<F: ErfScalar>(xi: F) -> F {
    F::from(ERF_LIMIT).expect("representable constant") * xi.std_erf()
}
