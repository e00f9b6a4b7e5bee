//! Exact primitives of polynomial moments of `e^{-(x-y)^2}` and `Erf(x-y)`.
//!
//! Everything is expressed through pairs of polynomials `(P, Q)` standing for
//! `P(x, y)·e^{-(x-y)²} + Q(x, y)·Erf(x-y)`. The single-integral building
//! blocks `u_n`, `v_n` satisfy
//!
//! ```text
//! u_{n+1} = y·u_n + (n/2)·u_{n-1} - x^n/2,    u_0 = 0
//! v_{n+1} = y·v_n + (n/2)·v_{n-1},            v_0 = 1
//! ```
//!
//! and `A_n = u_n·e^{-(x-y)²} + v_n(y)·Erf(x-y)` is a primitive of
//! `x^n e^{-(x-y)²}` with respect to `x`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::exactnum::{int, rat};

pub use crate::RatPoly;

/// `gauss_coeff·e^{-(x-y)²} + erf_coeff·Erf(x-y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitivePair {
    pub gauss_coeff: RatPoly,
    pub erf_coeff: RatPoly,
}

impl PrimitivePair {
    pub fn new(gauss_coeff: RatPoly, erf_coeff: RatPoly) -> Self {
        Self { gauss_coeff, erf_coeff }
    }

    pub fn degrees(&self) -> (i64, i64) {
        (self.gauss_coeff.degree(), self.erf_coeff.degree())
    }

    fn add_assign(&mut self, other: &PrimitivePair) {
        self.gauss_coeff = &self.gauss_coeff + &other.gauss_coeff;
        self.erf_coeff = &self.erf_coeff + &other.erf_coeff;
    }
}

struct Cache {
    u: Vec<RatPoly>,
    v: Vec<RatPoly>,
    double: HashMap<(u32, u32), PrimitivePair>,
    force: HashMap<(u32, u32), PrimitivePair>,
}

fn cache() -> &'static Mutex<Cache> {
    static CACHE: OnceLock<Mutex<Cache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(Cache {
            u: vec![RatPoly::zero()],
            v: vec![RatPoly::constant(int(1))],
            double: HashMap::new(),
            force: HashMap::new(),
        })
    })
}

fn extend_uv(c: &mut Cache, n: u32) {
    let y = RatPoly::y();
    while c.u.len() <= n as usize {
        let k = c.u.len() - 1; // compute index k + 1
        let half_k = rat(k as i64, 2);
        let prev_u = if k == 0 { RatPoly::zero() } else { c.u[k - 1].clone() };
        let prev_v = if k == 0 { RatPoly::zero() } else { c.v[k - 1].clone() };
        let next_u = &(&(&y * &c.u[k]) + &prev_u.scale(&half_k))
            - &RatPoly::monomial(k as u32, 0, rat(1, 2));
        let next_v = &(&y * &c.v[k]) + &prev_v.scale(&half_k);
        c.u.push(next_u);
        c.v.push(next_v);
    }
}

/// `u_n(x, y)`, of degree `n - 1`.
pub fn u_poly(n: u32) -> RatPoly {
    let mut c = cache().lock().expect("moment cache poisoned");
    extend_uv(&mut c, n);
    c.u[n as usize].clone()
}

/// `v_n(y)`, of degree `n`.
pub fn v_poly(n: u32) -> RatPoly {
    let mut c = cache().lock().expect("moment cache poisoned");
    extend_uv(&mut c, n);
    c.v[n as usize].clone()
}

/// `A_n = ∫ x^n e^{-(x-y)²} dx`.
pub fn primitive_a(n: u32) -> PrimitivePair {
    PrimitivePair::new(u_poly(n), v_poly(n))
}

/// `B_n = ∫ x^n Erf(x-y) dx`.
pub fn primitive_b(n: u32) -> PrimitivePair {
    let inv = rat(1, n as i64 + 1);
    let gauss = u_poly(n + 1).scale(&-inv.clone());
    let erf = (&RatPoly::monomial(n + 1, 0, int(1)) - &v_poly(n + 1)).scale(&inv);
    PrimitivePair::new(gauss, erf)
}

/// `∫ x^n (x-y) e^{-(x-y)²} dx = (n/2)·A_{n-1} - (x^n/2)·e^{-(x-y)²}`.
pub fn force_primitive_x(n: u32) -> PrimitivePair {
    let xn_half = RatPoly::monomial(n, 0, rat(-1, 2));
    if n == 0 {
        return PrimitivePair::new(xn_half, RatPoly::zero());
    }
    let half_n = rat(n as i64, 2);
    let a = primitive_a(n - 1);
    PrimitivePair::new(&a.gauss_coeff.scale(&half_n) + &xn_half, a.erf_coeff.scale(&half_n))
}

/// Given an `x`-primitive `P·e^{-(x-y)²} + Q·Erf(x-y)`, returns a primitive
/// of `y^m` times it with respect to `y`, by expanding in powers of `y` and
/// replacing each `y^k` via `A_k(y, x)` (Gaussian part) and `-B_k(y, x)`
/// (error-function part, using `Erf(x-y) = -Erf(y-x)`).
pub fn integrate_in_y(x_primitive: &PrimitivePair, m: u32) -> PrimitivePair {
    let ym = RatPoly::monomial(0, m, int(1));
    let mut out = PrimitivePair::new(RatPoly::zero(), RatPoly::zero());
    let gauss = &x_primitive.gauss_coeff * &ym;
    for (k, cx) in gauss.collect_y() {
        // y^k → u_k(y,x)·e - v_k(x)·Erf(x-y)
        let term = PrimitivePair::new(
            &cx * &u_poly(k).swap_xy(),
            -&(&cx * &v_poly(k).swap_xy()),
        );
        out.add_assign(&term);
    }
    let erf = &x_primitive.erf_coeff * &ym;
    for (k, cx) in erf.collect_y() {
        // y^k → u_{k+1}(y,x)/(k+1)·e + (y^{k+1} - v_{k+1}(x))/(k+1)·Erf(x-y)
        let inv = rat(1, k as i64 + 1);
        let g = u_poly(k + 1).swap_xy().scale(&inv);
        let e = (&RatPoly::monomial(0, k + 1, int(1)) - &v_poly(k + 1).swap_xy()).scale(&inv);
        out.add_assign(&PrimitivePair::new(&cx * &g, &cx * &e));
    }
    out
}

/// `(p_{n,m}, q_{n,m})`: `∬ x^n y^m e^{-(x-y)²} dx dy = p·e^{-(x-y)²} + q·Erf(x-y)`.
pub fn double_primitive(n: u32, m: u32) -> PrimitivePair {
    if let Some(p) = cache().lock().expect("moment cache poisoned").double.get(&(n, m)) {
        return p.clone();
    }
    let p = integrate_in_y(&primitive_a(n), m);
    cache().lock().expect("moment cache poisoned").double.insert((n, m), p.clone());
    p
}

/// `(p*_{n,m}, q*_{n,m})`: primitive of `x^n y^m (x-y) e^{-(x-y)²}`. The
/// leading terms cancel exactly, leaving degrees `n+m-1` and `n+m`.
pub fn force_double_primitive(n: u32, m: u32) -> PrimitivePair {
    if let Some(p) = cache().lock().expect("moment cache poisoned").force.get(&(n, m)) {
        return p.clone();
    }
    let p = integrate_in_y(&force_primitive_x(n), m);
    cache().lock().expect("moment cache poisoned").force.insert((n, m), p.clone());
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::to_f64;
    use crate::quadrature::erf::erf_value;

    fn eval_pair(p: &PrimitivePair, x: f64, y: f64) -> f64 {
        let g = p.gauss_coeff.map_coeffs(to_f64);
        let e = p.erf_coeff.map_coeffs(to_f64);
        g.eval(&x, &y) * (-(x - y) * (x - y)).exp() + e.eval(&x, &y) * erf_value(x - y)
    }

    /// Deterministic pseudo-random points in [-2, 2]².
    fn points(count: usize, seed: u64) -> Vec<(f64, f64)> {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        (0..count).map(|_| (next(), next())).collect()
    }

    /// Richardson-extrapolated central difference for d/dx.
    fn ddx(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        let h = 1e-3;
        (4.0 * d(h) - d(2.0 * h)) / 3.0
    }

    /// Richardson-extrapolated central difference for ∂²/∂x∂y.
    fn dxdy(f: impl Fn(f64, f64) -> f64, x: f64, y: f64) -> f64 {
        let d = |h: f64| {
            (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h)
        };
        let h = 1e-3;
        (4.0 * d(h) - d(2.0 * h)) / 3.0
    }

    #[test]
    fn first_polynomials() {
        assert!(u_poly(0).is_zero());
        assert_eq!(u_poly(1), RatPoly::constant(rat(-1, 2)));
        assert_eq!(v_poly(1), RatPoly::y());
        assert_eq!(v_poly(2), &RatPoly::monomial(0, 2, int(1)) + &RatPoly::constant(rat(1, 2)));
        // u_2 = y·u_1 - x/2
        assert_eq!(u_poly(2), &RatPoly::monomial(0, 1, rat(-1, 2)) + &RatPoly::monomial(1, 0, rat(-1, 2)));
    }

    #[test]
    fn degrees_of_u_and_v() {
        for n in 0..=12u32 {
            assert_eq!(u_poly(n).degree(), n as i64 - 1, "u_{n}");
            assert_eq!(v_poly(n).degree(), n as i64, "v_{n}");
            assert!(v_poly(n).terms().all(|(i, _, _)| i == 0), "v_{n} depends on y only");
        }
    }

    #[test]
    fn primitive_a_base_cases() {
        let a0 = primitive_a(0);
        assert!(a0.gauss_coeff.is_zero());
        assert_eq!(a0.erf_coeff, RatPoly::constant(int(1)));
        let a1 = primitive_a(1);
        assert_eq!(a1.gauss_coeff, RatPoly::constant(rat(-1, 2)));
        assert_eq!(a1.erf_coeff, RatPoly::y());
    }

    #[test]
    fn primitive_a_derivative_oracle() {
        for n in 0..=6 {
            let a = primitive_a(n);
            for (x, y) in points(20, 11 + n as u64) {
                let lhs = ddx(|t| eval_pair(&a, t, y), x);
                let rhs = x.powi(n as i32) * (-(x - y) * (x - y)).exp();
                assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs.abs()), "n={n} at ({x},{y}): {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn primitive_b_derivative_oracle() {
        for n in 0..=5 {
            let b = primitive_b(n);
            for (x, y) in points(20, 91 + n as u64) {
                let lhs = ddx(|t| eval_pair(&b, t, y), x);
                let rhs = x.powi(n as i32) * erf_value(x - y);
                assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()), "n={n}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn double_primitive_of_one() {
        let p = double_primitive(0, 0);
        assert_eq!(p.gauss_coeff, RatPoly::constant(rat(-1, 2)));
        // q = y - x: orientation fixed by the finite-difference oracle below.
        assert_eq!(p.erf_coeff, &RatPoly::y() - &RatPoly::x());
    }

    #[test]
    fn double_primitive_degrees() {
        assert_eq!(double_primitive(1, 2).degrees(), (3, 4));
        for n in 0..=6u32 {
            for m in 0..=(6 - n) {
                let d = (n + m) as i64;
                assert_eq!(double_primitive(n, m).degrees(), (d, d + 1), "({n},{m})");
            }
        }
    }

    #[test]
    fn double_primitive_mixed_partial_oracle() {
        for n in 0..=6u32 {
            for m in 0..=(6 - n) {
                let p = double_primitive(n, m);
                for (x, y) in points(20, 1000 + 7 * n as u64 + m as u64) {
                    let lhs = dxdy(|s, t| eval_pair(&p, s, t), x, y);
                    let rhs = x.powi(n as i32) * y.powi(m as i32) * (-(x - y) * (x - y)).exp();
                    let scale = 1.0 + eval_pair(&p, x, y).abs();
                    assert!(
                        (lhs - rhs).abs() < 1e-7 * scale,
                        "({n},{m}) at ({x},{y}): {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn force_primitive_base_case() {
        let p = force_double_primitive(0, 0);
        assert!(p.gauss_coeff.is_zero());
        assert_eq!(p.gauss_coeff.degree(), -1);
        assert_eq!(p.erf_coeff, RatPoly::constant(rat(1, 2)));
    }

    #[test]
    fn force_primitive_degree_drop() {
        assert_eq!(force_double_primitive(2, 1).degrees(), (2, 3));
        for n in 0..=6u32 {
            for m in 0..=(6 - n) {
                let d = (n + m) as i64;
                assert_eq!(force_double_primitive(n, m).degrees(), (d - 1, d), "({n},{m})");
            }
        }
    }

    #[test]
    fn force_primitive_mixed_partial_oracle() {
        for n in 0..=5u32 {
            for m in 0..=(5 - n) {
                let p = force_double_primitive(n, m);
                for (x, y) in points(20, 5000 + 7 * n as u64 + m as u64) {
                    let lhs = dxdy(|s, t| eval_pair(&p, s, t), x, y);
                    let rhs = x.powi(n as i32) * y.powi(m as i32) * (x - y) * (-(x - y) * (x - y)).exp();
                    let scale = 1.0 + eval_pair(&p, x, y).abs();
                    assert!((lhs - rhs).abs() < 1e-7 * scale, "({n},{m}): {lhs} vs {rhs}");
                }
            }
        }
    }
}
