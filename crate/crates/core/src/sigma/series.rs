//! Exact small-σ expansions and the stable floating-point evaluator.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use super::expr::{SigmaExpr, SigmaTerm};
use crate::error::{Error, Result};
use crate::exactnum::rational::{factorial, pow, to_f64};
use crate::exactnum::{int, Rational};

/// Default switchover `σ·L < SERIES_THRESHOLD` between series and direct evaluation.
pub const SERIES_THRESHOLD: f64 = 0.5;
/// Default number of even-order series terms.
pub const SERIES_ORDER: u32 = 24;

/// Truncated power series in σ, indexed by power.
fn truncated_mul(a: &[Rational], b: &[Rational], max_deg: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); max_deg + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j > max_deg {
                break;
            }
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn gauss_series(g: &Rational, max_deg: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); max_deg + 1];
    let neg = -g.clone();
    for k in 0..=max_deg / 2 {
        out[2 * k] = pow(&neg, k as u32) / Rational::from_integer(factorial(k as u32));
    }
    out
}

fn erf_series(d: &Rational, max_deg: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); max_deg + 1];
    let mut k = 0usize;
    while 2 * k < max_deg {
        let s = if k.is_multiple_of(2) { int(1) } else { int(-1) };
        let denom = Rational::from_integer(factorial(k as u32)) * int(2 * k as i64 + 1);
        out[2 * k + 1] = s * pow(d, 2 * k as u32 + 1) / denom;
        k += 1;
    }
    out
}

/// Laurent coefficients of `e` in powers of σ, up to and including `σ^max_power`.
pub fn laurent_series(e: &SigmaExpr, max_power: i32) -> BTreeMap<i32, Rational> {
    let mut out: BTreeMap<i32, Rational> = BTreeMap::new();
    for (t, c) in e.terms() {
        let top = max_power + t.mu;
        if top < t.r() as i32 {
            continue;
        }
        let deg = top as usize;
        let mut s = gauss_series(&t.gauss, deg);
        for d in &t.erf_args {
            s = truncated_mul(&s, &erf_series(d, deg), deg);
        }
        for (p, v) in s.into_iter().enumerate() {
            if !v.is_zero() {
                let entry = out.entry(p as i32 - t.mu).or_insert_with(Rational::zero);
                *entry += c * v;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Taylor coefficients of `e` in powers of σ (index = power), `0..=max_power`.
/// Fails with [`Error::Divergent`] if a negative power survives cancellation.
pub fn taylor_series(e: &SigmaExpr, max_power: u32) -> Result<Vec<Rational>> {
    let l = laurent_series(e, max_power as i32);
    if let Some((p, _)) = l.iter().next().filter(|(p, _)| **p < 0) {
        return Err(Error::Divergent(format!("σ^{p} survives at σ → 0")));
    }
    let mut out = vec![Rational::zero(); max_power as usize + 1];
    for (p, v) in l {
        out[p as usize] = v;
    }
    Ok(out)
}

/// Length scale `max sqrt(G + Σ δ²)` over the terms.
pub fn length_scale(e: &SigmaExpr) -> f64 {
    e.terms()
        .map(|(t, _)| {
            let s: f64 = to_f64(&t.gauss) + t.erf_args.iter().map(|d| to_f64(d).powi(2)).sum::<f64>();
            s.sqrt()
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone)]
struct FloatTerm {
    coeff: f64,
    mu: i32,
    gauss: f64,
    erf_args: Vec<f64>,
}

/// Floating-point evaluator that switches to the exact Taylor expansion for
/// small `σ·L`, where the direct sum cancels catastrophically.
#[derive(Debug, Clone)]
pub struct SigmaEvaluator {
    terms: Vec<FloatTerm>,
    series: Option<Vec<f64>>,
    scale: f64,
    threshold: f64,
}

impl SigmaEvaluator {
    pub fn new(e: &SigmaExpr) -> Self {
        Self::with_params(e, SERIES_THRESHOLD, SERIES_ORDER)
    }

    pub fn with_params(e: &SigmaExpr, threshold: f64, order: u32) -> Self {
        let terms = e
            .terms()
            .map(|(t, c)| FloatTerm {
                coeff: to_f64(c),
                mu: t.mu,
                gauss: to_f64(&t.gauss),
                erf_args: t.erf_args.iter().map(to_f64).collect(),
            })
            .collect();
        let series = taylor_series(e, 2 * order)
            .ok()
            .map(|s| s.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect());
        Self { terms, series, scale: length_scale(e), threshold }
    }

    /// Whether σ → 0 is a regular point of the expression.
    pub fn is_regular_at_zero(&self) -> bool {
        self.series.is_some()
    }

    pub fn eval(&self, sigma: f64) -> f64 {
        if let Some(s) = &self.series {
            if sigma * self.scale < self.threshold {
                return s.iter().rev().fold(0.0, |acc, c| acc * sigma + c);
            }
        }
        self.eval_direct(sigma)
    }

    pub fn eval_direct(&self, sigma: f64) -> f64 {
        let s2 = sigma * sigma;
        self.terms
            .iter()
            .map(|t| {
                let mut v = t.coeff * sigma.powi(-t.mu) * (-s2 * t.gauss).exp();
                for d in &t.erf_args {
                    v *= crate::quadrature::erf_value(sigma * d);
                }
                v
            })
            .sum()
    }
}

/// One-shot stable evaluation of `e` at `σ > 0`.
pub fn eval_sigma_expr(e: &SigmaExpr, sigma: f64, threshold: f64) -> f64 {
    SigmaEvaluator::with_params(e, threshold, SERIES_ORDER).eval(sigma)
}

impl SigmaTerm {
    /// The one-term expression `c·t`.
    pub fn as_expr(&self, c: Rational) -> SigmaExpr {
        let mut e = SigmaExpr::zero();
        e.add_term(self.clone(), c);
        e
    }
}
