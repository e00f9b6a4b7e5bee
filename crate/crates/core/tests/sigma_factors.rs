mod common;

use common::*;
use cuboid_newton::exactnum::rational::to_f64;
use cuboid_newton::reference::box_integral;
use cuboid_newton::sigma::{
    eval_sigma_expr, force_factor, interval_factor, point_factor_at, point_force_factor_at, SERIES_THRESHOLD,
};
use rand::Rng;

#[test]
fn interval_and_force_factors_match_double_quadrature() {
    let mut r = rng(5);
    for _ in 0..6 {
        let b = random_box(&mut r, 2, -1, 2);
        let ((a, bb), (ap, bp)) = (b.bounds[0].clone(), b.bounds[1].clone());
        let (n, m) = (r.gen_range(0..=2u32), r.gen_range(0..=2u32));
        let f = interval_factor(n, m, &a, &bb, &ap, &bp).unwrap();
        let fs = force_factor(n, m, &a, &bb, &ap, &bp).unwrap();
        let dom = [(to_f64(&a), to_f64(&bb)), (to_f64(&ap), to_f64(&bp))];
        for s in [0.1, 1.0, 5.0] {
            let w = |x: &[f64]| x[0].powi(n as i32) * x[1].powi(m as i32) * (-s * s * (x[0] - x[1]).powi(2)).exp();
            let q = box_integral(&w, &dom, 1e-12).unwrap();
            let v = eval_sigma_expr(&f, s, SERIES_THRESHOLD);
            assert!(rel_close(v, q, 1e-9), "f at σ={s}: {v} vs {q}");
            let wf = |x: &[f64]| 2.0 * s * s * (x[0] - x[1]) * w(x);
            let q = box_integral(&wf, &dom, 1e-12).unwrap();
            let v = eval_sigma_expr(&fs, s, SERIES_THRESHOLD);
            assert!(rel_close(v, q, 1e-9), "f* at σ={s}: {v} vs {q}");
        }
    }
}

#[test]
fn point_factors_match_quadrature() {
    let mut r = rng(6);
    for _ in 0..6 {
        let b = random_box(&mut r, 1, -1, 2);
        let (a, bb) = b.bounds[0].clone();
        let y = random_rat(&mut r, -1, 2, 3);
        let n = r.gen_range(0..=3u32);
        let h = point_factor_at(n, &a, &bb, &y).unwrap();
        let hs = point_force_factor_at(n, &a, &bb, &y).unwrap();
        let (yf, dom) = (to_f64(&y), [(to_f64(&a), to_f64(&bb))]);
        for s in [0.1, 1.0, 5.0] {
            let w = |x: &[f64]| x[0].powi(n as i32) * (-s * s * (x[0] - yf).powi(2)).exp();
            let q = box_integral(&w, &dom, 1e-13).unwrap();
            assert!(rel_close(eval_sigma_expr(&h, s, SERIES_THRESHOLD), q, 1e-9), "h at σ={s}");
            let wf = |x: &[f64]| 2.0 * s * s * (x[0] - yf) * w(x);
            let q = box_integral(&wf, &dom, 1e-13).unwrap();
            assert!(rel_close(eval_sigma_expr(&hs, s, SERIES_THRESHOLD), q, 1e-9), "h* at σ={s}");
        }
    }
}

#[test]
fn products_keep_even_parity() {
    let mut r = rng(7);
    for _ in 0..10 {
        let spec = random_potential(&mut r);
        let res = cuboid_newton::run(&spec).unwrap();
        assert!(res.factors.iter().all(|f| f.has_even_parity()));
        assert!(res.raw.unwrap().has_even_parity());
    }
}
