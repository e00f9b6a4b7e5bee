//! Globally adaptive Gauss–Kronrod (7/15) integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::Float;

use crate::error::{Error, Result};

// Tabulated nodes and weights, kept at their published precision.

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of a quadrature: value, error estimate and integrand calls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<F = f64> {
    pub value: F,
    pub error_estimate: F,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evaluations: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-10, max_evaluations: 1_000_000 }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { abs_tol: tol, rel_tol: tol, ..Self::default() }
    }
}

struct Panel<F> {
    a: F,
    b: F,
    value: F,
    error: F,
}

impl<F: Float> PartialEq for Panel<F> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<F: Float> Eq for Panel<F> {}
impl<F: Float> PartialOrd for Panel<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: Float> Ord for Panel<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn c<F: Float>(x: f64) -> F {
    F::from(x).expect("representable constant")
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
fn kronrod<F: Float>(f: &mut impl FnMut(F) -> F, a: F, b: F) -> (F, F) {
    let half = c::<F>(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut res_k = fc * c(WGK[7]);
    let mut res_g = fc * c(WG[3]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [F::zero(); 7];
    let mut fv2 = [F::zero(); 7];
    for j in 0..7 {
        let dx = half_len * c(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k = res_k + c::<F>(WGK[j]) * (f1 + f2);
        res_abs = res_abs + c::<F>(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + c::<F>(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * half;
    let mut res_asc = c::<F>(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + c::<F>(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half_len;
    res_abs = res_abs * half_len.abs();
    res_asc = res_asc * half_len.abs();
    let mut err = ((res_k - res_g) * half_len).abs();
    if res_asc != F::zero() && err != F::zero() {
        let ratio = c::<F>(200.0) * err / res_asc;
        err = res_asc * F::one().min(ratio * ratio.sqrt());
    }
    let eps50 = c::<F>(50.0) * F::epsilon();
    if res_abs > F::min_positive_value() / eps50 {
        err = err.max(eps50 * res_abs);
    }
    (value, err)
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F: Float>(
    mut f: impl FnMut(F) -> F,
    a: F,
    b: F,
    opts: &QuadOptions,
) -> Result<QuadratureResult<F>> {
    if a == b {
        return Ok(QuadratureResult { value: F::zero(), error_estimate: F::zero(), evaluations: 0 });
    }
    let (v, e) = kronrod(&mut f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value: v, error: e });
    let mut total = v;
    let mut total_err = e;
    let abs_tol: F = c(opts.abs_tol);
    let rel_tol: F = c(opts.rel_tol);
    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::QuadratureFailure("non-finite integrand value".into()));
        }
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            break;
        }
        if evaluations + 30 > opts.max_evaluations {
            return Err(Error::QuadratureFailure(format!(
                "evaluation budget {} exhausted (error estimate {:e})",
                opts.max_evaluations,
                total_err.to_f64().unwrap_or(f64::NAN)
            )));
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = c::<F>(0.5) * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split further in this precision.
            heap.push(Panel { error: F::zero(), ..worst });
            total_err = heap.iter().fold(F::zero(), |acc, p| acc + p.error);
            if total_err == F::zero() {
                break;
            }
            continue;
        }
        let (v1, e1) = kronrod(&mut f, worst.a, mid);
        let (v2, e2) = kronrod(&mut f, mid, worst.b);
        evaluations += 30;
        total = total - worst.value + v1 + v2;
        total_err = total_err - worst.error + e1 + e2;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
        if heap.len() % 64 == 0 {
            // Re-sum to keep the running totals from drifting.
            total = heap.iter().fold(F::zero(), |acc, p| acc + p.value);
            total_err = heap.iter().fold(F::zero(), |acc, p| acc + p.error);
        }
    }
    let value = heap.iter().fold(F::zero(), |acc, p| acc + p.value);
    let error_estimate = heap.iter().fold(F::zero(), |acc, p| acc + p.error);
    Ok(QuadratureResult { value, error_estimate, evaluations })
}

/// Integrates `f` over `(0, ∞)`: `(0, 1]` directly and `[1, ∞)` through
/// `σ = 1/u`. Suitable for integrands with Gaussian or algebraic decay.
pub fn integrate_halfline<F: Float>(
    mut f: impl FnMut(F) -> F,
    opts: &QuadOptions,
) -> Result<QuadratureResult<F>> {
    let head = integrate(&mut f, F::zero(), F::one(), opts)?;
    let tail = integrate(
        |u: F| {
            if u == F::zero() {
                F::zero()
            } else {
                let s = F::one() / u;
                let v = f(s) * s * s;
                if v.is_finite() { v } else { F::zero() }
            }
        },
        F::zero(),
        F::one(),
        opts,
    )?;
    Ok(QuadratureResult {
        value: head.value + tail.value,
        error_estimate: head.error_estimate + tail.error_estimate,
        evaluations: head.evaluations + tail.evaluations,
    })
}
