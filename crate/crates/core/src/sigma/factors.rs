//! The one-dimensional factors `f`, `f*`, `h`, `h*` as σ-expressions.

use num_traits::{One, Signed, Zero};

use super::expr::SigmaExpr;
use crate::error::{Error, Result};
use crate::exactnum::rational::{factorial, pow};
use crate::exactnum::{int, BiPoly, Rational};
use crate::moments::{
    double_primitive, force_double_primitive, force_primitive_x, primitive_a, PrimitivePair,
};

fn check_interval(a: &Rational, b: &Rational) -> Result<()> {
    if a > b {
        return Err(Error::InvalidInterval {
            lower: crate::exactnum::format_rational(a),
            upper: crate::exactnum::format_rational(b),
        });
    }
    Ok(())
}

/// Adds `scale · σ^{-shift} [P(σx, σy) e^{-σ²(x-y)²} + Q(σx, σy) Erf(σ(x-y))]`
/// at each signed corner.
fn corners_to_sigma(
    pair: &PrimitivePair,
    shift: i32,
    scale: &Rational,
    corners: &[(Rational, Rational, i64)],
) -> SigmaExpr {
    let mut e = SigmaExpr::zero();
    for (x, y, s) in corners {
        let d = x - y;
        let g = &d * &d;
        let sc = scale * int(*s);
        for (i, j, c) in pair.gauss_coeff.terms() {
            let mu = shift - (i + j) as i32;
            e.add(mu, g.clone(), Vec::new(), &sc * c * pow(x, i) * pow(y, j));
        }
        for (i, j, c) in pair.erf_coeff.terms() {
            let mu = shift - (i + j) as i32;
            e.add(mu, Rational::zero(), vec![d.clone()], &sc * c * pow(x, i) * pow(y, j));
        }
    }
    e
}

fn rect_corners(a: &Rational, b: &Rational, ap: &Rational, bp: &Rational) -> [(Rational, Rational, i64); 4] {
    [
        (b.clone(), bp.clone(), 1),
        (a.clone(), bp.clone(), -1),
        (b.clone(), ap.clone(), -1),
        (a.clone(), ap.clone(), 1),
    ]
}

/// `f(σ) = ∫_a^b ∫_{a'}^{b'} x^n y^m e^{-σ²(x-y)²} dy dx`.
pub fn interval_factor(n: u32, m: u32, a: &Rational, b: &Rational, ap: &Rational, bp: &Rational) -> Result<SigmaExpr> {
    check_interval(a, b)?;
    check_interval(ap, bp)?;
    let pair = double_primitive(n, m);
    Ok(corners_to_sigma(&pair, (n + m + 2) as i32, &Rational::one(), &rect_corners(a, b, ap, bp)))
}

/// `f*(σ) = 2σ² ∫_a^b ∫_{a'}^{b'} x^n y^m (x-y) e^{-σ²(x-y)²} dy dx`.
pub fn force_factor(n: u32, m: u32, a: &Rational, b: &Rational, ap: &Rational, bp: &Rational) -> Result<SigmaExpr> {
    check_interval(a, b)?;
    check_interval(ap, bp)?;
    let pair = force_double_primitive(n, m);
    Ok(corners_to_sigma(&pair, (n + m + 1) as i32, &int(2), &rect_corners(a, b, ap, bp)))
}

/// `h(σ) = ∫_a^b x^n e^{-σ²(x-y)²} dx` for the field coordinate `y`.
pub fn point_factor_at(n: u32, a: &Rational, b: &Rational, y: &Rational) -> Result<SigmaExpr> {
    check_interval(a, b)?;
    let corners = [(b.clone(), y.clone(), 1), (a.clone(), y.clone(), -1)];
    Ok(corners_to_sigma(&primitive_a(n), (n + 1) as i32, &Rational::one(), &corners))
}

/// `h(σ)` with the field coordinate at the origin.
pub fn point_factor(n: u32, a: &Rational, b: &Rational) -> Result<SigmaExpr> {
    point_factor_at(n, a, b, &Rational::zero())
}

/// `h*(σ) = 2σ² ∫_a^b x^n (x-y) e^{-σ²(x-y)²} dx`.
pub fn point_force_factor_at(n: u32, a: &Rational, b: &Rational, y: &Rational) -> Result<SigmaExpr> {
    check_interval(a, b)?;
    let corners = [(b.clone(), y.clone(), 1), (a.clone(), y.clone(), -1)];
    Ok(corners_to_sigma(&force_primitive_x(n), n as i32, &int(2), &corners))
}

/// `h*(σ) = 2σ² ∫_a^b x^{n+1} e^{-σ²x²} dx`.
pub fn point_force_factor(n: u32, a: &Rational, b: &Rational) -> Result<SigmaExpr> {
    point_force_factor_at(n, a, b, &Rational::zero())
}

/// Multiplies every term by `e^{-σ²ρ²}`.
pub fn attach_gaussian_prefactor(e: &SigmaExpr, rho: &Rational) -> Result<SigmaExpr> {
    if rho.is_negative() {
        return Err(Error::InvalidSpec(format!("negative ρ = {}", crate::exactnum::format_rational(rho))));
    }
    if rho.is_zero() {
        return Ok(e.clone());
    }
    let r2 = rho * rho;
    let mut out = SigmaExpr::zero();
    for (t, c) in e.terms() {
        let mut t = t.clone();
        t.gauss += &r2;
        out.add_term(t, c.clone());
    }
    Ok(out)
}

/// Distributive expansion of a product of factors.
pub fn product(factors: &[SigmaExpr]) -> SigmaExpr {
    let mut it = factors.iter();
    let Some(first) = it.next() else {
        return SigmaExpr::constant(Rational::one());
    };
    it.fold(first.clone(), |acc, f| acc.mul(f))
}

/// `(x - y)^k` as a bivariate polynomial.
fn difference_power(k: u32) -> BiPoly<Rational> {
    let d = &BiPoly::x() - &BiPoly::y();
    let mut acc = BiPoly::constant(Rational::one());
    for _ in 0..k {
        acc = &acc * &d;
    }
    acc
}

/// Taylor coefficients `c_k` of `f(σ) = Σ c_k σ^{2k}`, `k = 0..=order`, from
/// `c_k = (-1)^k/k! ∬ x^n y^m (x-y)^{2k}`.
pub fn small_sigma_series(n: u32, m: u32, a: &Rational, b: &Rational, ap: &Rational, bp: &Rational, order: u32) -> Vec<Rational> {
    let w = BiPoly::monomial(n, m, Rational::one());
    (0..=order)
        .map(|k| {
            let moment = (&w * &difference_power(2 * k)).integrate_rect(a, b, ap, bp);
            signed_inv_factorial(k) * moment
        })
        .collect()
}

/// Taylor coefficients of `f*(σ)`: `c_0 = 0`, `c_{k+1} = 2(-1)^k/k! ∬ x^n y^m (x-y)^{2k+1}`.
pub fn small_sigma_series_force(n: u32, m: u32, a: &Rational, b: &Rational, ap: &Rational, bp: &Rational, order: u32) -> Vec<Rational> {
    let w = BiPoly::monomial(n, m, Rational::one());
    let mut out = vec![Rational::zero()];
    for k in 0..order {
        let moment = (&w * &difference_power(2 * k + 1)).integrate_rect(a, b, ap, bp);
        out.push(int(2) * signed_inv_factorial(k) * moment);
    }
    out
}

fn signed_inv_factorial(k: u32) -> Rational {
    let s = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    s / Rational::from_integer(factorial(k))
}
