#![allow(dead_code)]

use cuboid_newton::exactnum::{rat, Rational};
use cuboid_newton::moments::PrimitivePair;
use cuboid_newton::quadrature::{erf_value, integrate_halfline, QuadOptions, TWO_OVER_SQRT_PI};
use cuboid_newton::sigma::{SigmaEvaluator, SigmaExpr};
use cuboid_newton::{CuboidSpec, Kind, ProblemSpec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A rational `k/d` in `[lo, hi]` with `d ≤ max_den`.
pub fn random_rat(r: &mut StdRng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let d = r.gen_range(1..=max_den);
    rat(r.gen_range(lo * d..=hi * d), d)
}

/// A nondegenerate box in `[lo, hi]^dim`.
pub fn random_box(r: &mut StdRng, dim: usize, lo: i64, hi: i64) -> CuboidSpec {
    let mut bounds = Vec::new();
    for _ in 0..dim {
        loop {
            let a = random_rat(r, lo, hi, 4);
            let b = random_rat(r, lo, hi, 4);
            if a != b {
                bounds.push(if a < b { (a, b) } else { (b, a) });
                break;
            }
        }
    }
    CuboidSpec::new(bounds).unwrap()
}

pub fn random_index(r: &mut StdRng, dim: usize, max: u32) -> Vec<u32> {
    (0..dim).map(|_| r.gen_range(0..=max)).collect()
}

/// A random small 3D potential problem.
pub fn random_potential(r: &mut StdRng) -> ProblemSpec {
    let q = random_box(r, 3, -1, 2);
    let qp = random_box(r, 3, -1, 2);
    let n = random_index(r, 3, 1);
    let m = random_index(r, 3, 1);
    ProblemSpec::two_body(Kind::Potential, q, qp, n, m)
}

/// `(2/√π) ∫_0^∞ e(σ) dσ`, series-stabilized near zero.
pub fn sigma_integral(e: &SigmaExpr, tol: f64) -> Result<f64, String> {
    let ev = SigmaEvaluator::new(e);
    let r = integrate_halfline(|s: f64| ev.eval(s), &QuadOptions::with_tol(tol)).map_err(|e| e.to_string())?;
    Ok(TWO_OVER_SQRT_PI * r.value)
}

/// `(2/√π) ∫_0^∞ e(σ) dσ` by direct evaluation, for integrands regular at zero.
pub fn direct_sigma_integral(e: &SigmaExpr, tol: f64) -> Result<f64, String> {
    let r = integrate_halfline(|s: f64| e.eval_direct(s), &QuadOptions::with_tol(tol)).map_err(|e| e.to_string())?;
    Ok(TWO_OVER_SQRT_PI * r.value)
}

pub fn pair_value(p: &PrimitivePair, x: f64, y: f64) -> f64 {
    let xr = cuboid_newton::exactnum::rational::to_f64;
    let g: f64 = p.gauss_coeff.terms().map(|(i, j, c)| xr(c) * x.powi(i as i32) * y.powi(j as i32)).sum();
    let e: f64 = p.erf_coeff.terms().map(|(i, j, c)| xr(c) * x.powi(i as i32) * y.powi(j as i32)).sum();
    g * (-(x - y) * (x - y)).exp() + e * erf_value(x - y)
}

/// Richardson-extrapolated central difference for `d/dx`.
pub fn ddx(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(1e-3) - d(2e-3)) / 3.0
}

/// Richardson-extrapolated central difference for `∂²/∂x∂y`.
pub fn dxdy(f: impl Fn(f64, f64) -> f64, x: f64, y: f64) -> f64 {
    let d = |h: f64| (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h);
    (4.0 * d(1e-3) - d(2e-3)) / 3.0
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}
