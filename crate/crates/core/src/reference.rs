//! Classical closed forms used as independent oracles. These are literal
//! transcriptions in plain `f64` and share no code with the σ-pipeline.

use crate::closedform::{CanonicalForm, ClosedExpr};
use crate::error::Result;
use crate::exactnum::{int, rat, SurdSum};
use crate::quadrature::{integrate, QuadOptions};

/// `∫_Q dx / |x - y|` for the box `Q = Π [a_j, b_j]`.
///
/// Sum over the eight corners of `Σ_cyc δ₁δ₂ artanh(δ₃/ρ) − (δ₁²/2) arctan(δ₂δ₃/(δ₁ρ))`
/// with `δ = corner − y` and `ρ = |δ|`.
pub fn waldvogel_potential(bounds: [(f64, f64); 3], y: [f64; 3]) -> f64 {
    fn corner(d: [f64; 3]) -> f64 {
        let rho = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        if rho == 0.0 {
            return 0.0;
        }
        let mut s = 0.0;
        for c in 0..3 {
            let (d1, d2, d3) = (d[c], d[(c + 1) % 3], d[(c + 2) % 3]);
            if d1 * d2 != 0.0 {
                // artanh(δ₃/ρ) = ½ log((ρ+δ₃)/(ρ−δ₃)); ρ−δ₃ > 0 since δ₁δ₂ ≠ 0
                s += d1 * d2 * 0.5 * ((rho + d3) / (rho - d3)).ln();
            }
            if d1 != 0.0 {
                s -= 0.5 * d1 * d1 * (d2 * d3 / (d1 * rho)).atan();
            }
        }
        s
    }
    corner_sum(bounds, y, corner)
}

/// `∫_Q x₃⁴ / |x|³ dx`, the field point at the origin.
///
/// Corner sum of `¼(δ₁δ₂δ₃ρ − 2δ₁δ₂(δ₁² + δ₂²) log(δ₃ + ρ) + Σ_cyc δ₁⁴ arctan(δ₂δ₃/(δ₁ρ)))`.
/// The formula drops terms independent of `δ₃`, which cancel in the sum.
pub fn garcia_h3(bounds: [(f64, f64); 3]) -> f64 {
    fn corner(d: [f64; 3]) -> f64 {
        let (d1, d2, d3) = (d[0], d[1], d[2]);
        let rho = (d1 * d1 + d2 * d2 + d3 * d3).sqrt();
        let mut s = d1 * d2 * d3 * rho;
        let w = d1 * d2 * (d1 * d1 + d2 * d2);
        if w != 0.0 {
            s -= 2.0 * w * (d3 + rho).ln();
        }
        for c in 0..3 {
            let (e1, e2, e3) = (d[c], d[(c + 1) % 3], d[(c + 2) % 3]);
            if e1 != 0.0 {
                s += e1.powi(4) * (e2 * e3 / (e1 * rho)).atan();
            }
        }
        0.25 * s
    }
    corner_sum(bounds, [0.0; 3], corner)
}

/// `Σ_{corners} ± F(corner − y)`, the sign being `+` for upper bounds.
fn corner_sum(bounds: [(f64, f64); 3], y: [f64; 3], f: impl Fn([f64; 3]) -> f64) -> f64 {
    let mut total = 0.0;
    for mask in 0..8u32 {
        let mut d = [0.0; 3];
        let mut sign = 1.0;
        for j in 0..3 {
            if mask & (1 << j) != 0 {
                d[j] = bounds[j].1 - y[j];
            } else {
                d[j] = bounds[j].0 - y[j];
                sign = -sign;
            }
        }
        total += sign * f(d);
    }
    total
}

/// Nested adaptive quadrature of `f` over a box, for checking the formulas
/// above against their defining integrals.
pub fn box_integral(f: &dyn Fn(&[f64]) -> f64, bounds: &[(f64, f64)], tol: f64) -> Result<f64> {
    fn go(f: &dyn Fn(&[f64]) -> f64, bounds: &[(f64, f64)], x: &mut Vec<f64>, tol: f64) -> Result<f64> {
        let level = x.len();
        if level == bounds.len() {
            return Ok(f(x));
        }
        let (a, b) = bounds[level];
        let opts = QuadOptions { abs_tol: tol, rel_tol: tol, max_evaluations: 200_000 };
        let mut err = None;
        let r = integrate(
            |t: f64| {
                x.push(t);
                let v = go(f, bounds, x, tol * 0.1);
                x.pop();
                v.unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    0.0
                })
            },
            a,
            b,
            &opts,
        )?;
        match err {
            Some(e) => Err(e),
            None => Ok(r.value),
        }
    }
    go(f, bounds, &mut Vec::with_capacity(bounds.len()), tol)
}

fn one(c: crate::exactnum::Rational) -> SurdSum {
    SurdSum::rational(c)
}

/// The force between `[1,2]×[0,1]²` and `[0,1]³` along the first axis:
/// `(1/3)(−14 + 2√2 − 4√3 + 10√5 − 2√6 + 26 log 2 − 2 log 5 + 10 log(1+√2)
/// + 20 log(1+√3) − 35 log(1+√5) + 6 log(1+√6) − 2 log(4+√6) + 26π/3 − 22 arctan(2√6))`.
pub fn fornberg_constant() -> ClosedExpr {
    let mut f = CanonicalForm::zero();
    let third = |c: i64| rat(c, 3);
    f.add_rational(&third(-14));
    for (c, r) in [(2, 2), (-4, 3), (10, 5), (-2, 6)] {
        f.add_sqrt(&third(c), &int(r)).expect("positive radicand");
    }
    f.add_log_rational(&one(third(26)), &int(2)).expect("positive");
    f.add_log_rational(&one(third(-2)), &int(5)).expect("positive");
    for (c, k) in [(10, 2u32), (20, 3), (-35, 5), (6, 6)] {
        f.add_log_quadratic(&one(third(c)), &int(1), &int(1), &k.into()).expect("positive");
    }
    f.add_log_quadratic(&one(third(-2)), &int(4), &int(1), &6u32.into()).expect("positive");
    f.add_pi(&one(rat(26, 9)));
    f.add_arctan(&one(third(-22)), &int(2), &int(6)).expect("valid arctan");
    ClosedExpr::from_canonical(f)
}

/// Plain `f64` evaluation of the same expression.
pub fn fornberg_value() -> f64 {
    let s = f64::sqrt;
    let l = f64::ln;
    (-14.0 + 2.0 * s(2.0) - 4.0 * s(3.0) + 10.0 * s(5.0) - 2.0 * s(6.0) + 26.0 * l(2.0) - 2.0 * l(5.0)
        + 10.0 * l(1.0 + s(2.0))
        + 20.0 * l(1.0 + s(3.0))
        - 35.0 * l(1.0 + s(5.0))
        + 6.0 * l(1.0 + s(6.0))
        - 2.0 * l(4.0 + s(6.0))
        + 26.0 * std::f64::consts::PI / 3.0
        - 22.0 * (2.0 * s(6.0)).atan())
        / 3.0
}

/// Self-energy of the unit cube, half of `∬ 1/|x−y|` over `[0,1]³ × [0,1]³`:
/// `(1 + √2 − 2√3)/5 + log((1+√2)(2+√3)) − π/3`.
pub fn unit_cube_self_energy() -> ClosedExpr {
    let mut f = CanonicalForm::zero();
    f.add_rational(&rat(1, 5));
    f.add_sqrt(&rat(1, 5), &int(2)).expect("positive");
    f.add_sqrt(&rat(-2, 5), &int(3)).expect("positive");
    f.add_log_quadratic(&one(int(1)), &int(1), &int(1), &2u32.into()).expect("positive");
    f.add_log_quadratic(&one(int(1)), &int(2), &int(1), &3u32.into()).expect("positive");
    f.add_pi(&one(rat(-1, 3)));
    ClosedExpr::from_canonical(f)
}

pub fn unit_cube_self_energy_value() -> f64 {
    let s = f64::sqrt;
    (1.0 + s(2.0) - 2.0 * s(3.0)) / 5.0 + ((1.0 + s(2.0)) * (2.0 + s(3.0))).ln() - std::f64::consts::PI / 3.0
}
