//! End to end: factors, product, renormalization, table lookup and
//! evaluation, with direct quadrature as the fallback.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::closedform::{emit, format_decimal, to_json, ClosedExpr, Format, Status};
use crate::error::{Error, Result};
use crate::exactnum::rational::to_f64;
use crate::exactnum::{int, rat};
use crate::problem::{CuboidSpec, Kind, ProblemSpec, Source};
use crate::quadrature::{integrate_product, FactorProduct, QuadOptions, QuadratureResult};
use crate::renorm::{classify_terms, renormalize_with_stats, Renormalized, TerminalClass};
use crate::sigma::{
    attach_gaussian_prefactor, force_factor, interval_factor, point_factor_at, point_force_factor_at, product,
    SigmaExpr,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Factors,
    Raw,
    Renormalized,
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "factors" => Ok(Stage::Factors),
            "raw" => Ok(Stage::Raw),
            "renormalized" => Ok(Stage::Renormalized),
            other => Err(Error::Parse(format!("unknown stage '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub spec: ProblemSpec,
    pub factors: Vec<SigmaExpr>,
    /// `scale · σ^w · e^{-σ²ρ²} · ∏ f_j`, absent above the symbolic dimension limit.
    pub raw: Option<SigmaExpr>,
    pub renormalized: Option<Renormalized>,
    pub classes: BTreeMap<TerminalClass, SigmaExpr>,
    pub closed: Option<ClosedExpr>,
    pub fallback: Option<QuadratureResult>,
    pub status: Status,
    pub value: f64,
    pub error: f64,
}

/// One σ-factor per axis.
pub fn build_factors(spec: &ProblemSpec) -> Result<Vec<SigmaExpr>> {
    let axis = spec.kind.axis();
    let mut out = Vec::with_capacity(spec.dim());
    for j in 0..spec.dim() {
        let (a, b) = &spec.q.bounds[j];
        let n = spec.n[j];
        let on_axis = axis == Some(j + 1);
        let f = match &spec.source {
            Source::Cuboid(qp) => {
                let (ap, bp) = &qp.bounds[j];
                let m = spec.m[j];
                if on_axis {
                    force_factor(n, m, a, b, ap, bp)?
                } else {
                    interval_factor(n, m, a, b, ap, bp)?
                }
            }
            Source::Point(y) => {
                if on_axis {
                    point_force_factor_at(n, a, b, &y[j])?
                } else {
                    point_factor_at(n, a, b, &y[j])?
                }
            }
        };
        out.push(f);
    }
    Ok(out)
}

/// `(power, coeff)` of the σ-weight: `1/r³` needs an extra `2σ²`.
fn sigma_weight(kind: Kind) -> (i32, i64) {
    match kind {
        Kind::InverseCube => (2, 2),
        _ => (0, 1),
    }
}

fn raw_integrand(spec: &ProblemSpec, factors: &[SigmaExpr]) -> Result<SigmaExpr> {
    let (w, c) = sigma_weight(spec.kind);
    let mut all = factors.to_vec();
    all.push(SigmaExpr::sigma_power(w, &spec.scale * int(c)));
    let g = product(&all);
    if spec.rho.is_zero() {
        Ok(g)
    } else {
        attach_gaussian_prefactor(&g, &spec.rho)
    }
}

fn quad_options(digits: u32) -> QuadOptions {
    QuadOptions::with_tol(10f64.powi(-(digits.min(15) as i32)).max(1e-14))
}

/// Direct quadrature of the factor product.
pub fn numeric_fallback(spec: &ProblemSpec) -> Result<QuadratureResult> {
    spec.validate()?;
    let factors = build_factors(spec)?;
    fallback_from_factors(spec, &factors)
}

fn fallback_from_factors(spec: &ProblemSpec, factors: &[SigmaExpr]) -> Result<QuadratureResult> {
    let (w, c) = sigma_weight(spec.kind);
    let p = FactorProduct::new(factors, w, c as f64 * to_f64(&spec.scale), &(&spec.rho * &spec.rho));
    integrate_product(&p, &quad_options(spec.digits))
}

fn divergent(spec: &ProblemSpec) -> Error {
    Error::Divergent(format!(
        "the {} integral does not converge for this configuration",
        spec.kind.name()
    ))
}

pub fn run(spec: &ProblemSpec) -> Result<RunResult> {
    spec.validate()?;
    let factors = build_factors(spec)?;
    let mut result = RunResult {
        spec: spec.clone(),
        factors,
        raw: None,
        renormalized: None,
        classes: BTreeMap::new(),
        closed: None,
        fallback: None,
        status: Status::NumericOnly,
        value: f64::NAN,
        error: f64::NAN,
    };
    if spec.dim() <= spec.symbolic_max_dim {
        let raw = raw_integrand(spec, &result.factors)?;
        let renorm = renormalize_with_stats(&raw);
        let classes = classify_terms(&renorm.expr)?;
        let mut closed = ClosedExpr::from_classes(&classes)?;
        result.raw = Some(raw);
        result.renormalized = Some(renorm);
        result.classes = classes;
        if closed.status() != Status::Divergent {
            let (v, e) = closed.evaluate_numeric(spec.digits)?;
            result.status = closed.status();
            result.value = v;
            result.error = e;
            result.closed = Some(closed);
            return Ok(result);
        }
        result.closed = Some(closed);
    }
    if !spec.converges() {
        return Err(divergent(spec));
    }
    let q = fallback_from_factors(spec, &result.factors)?;
    result.fallback = Some(q);
    result.status = Status::NumericOnly;
    result.value = q.value;
    result.error = q.error_estimate;
    Ok(result)
}

impl RunResult {
    /// The closed expression when the symbolic route produced a value.
    pub fn closed_form(&self) -> Option<&ClosedExpr> {
        match self.status {
            Status::Elementary | Status::Mixed => self.closed.as_ref(),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let empty = ClosedExpr::zero();
        let closed = self.closed_form().unwrap_or(&empty);
        let mut doc = to_json(closed, self.spec.to_json(), self.status, Some(self.value), self.spec.digits);
        let obj = doc.as_object_mut().expect("object");
        obj.insert("error".into(), json!(self.error));
        if let Some(q) = &self.fallback {
            obj.insert(
                "fallback".into(),
                json!({"value": q.value, "error": q.error_estimate, "evaluations": q.evaluations}),
            );
        }
        doc
    }

    pub fn render(&self, format: Format) -> String {
        let digits = self.spec.digits;
        let decimal = format_decimal(self.value, digits);
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("serializable"),
            Format::Latex => match self.closed_form() {
                Some(e) => format!("{} \\approx {decimal}", emit(e, Format::Latex)),
                None => decimal,
            },
            Format::Text => {
                let mut out = format!("status: {}\n", self.status);
                if let Some(e) = self.closed_form() {
                    out.push_str(&format!("closed form: {}\n", emit(e, Format::Text)));
                }
                out.push_str(&format!("value: {decimal}\nerror: {:.1e}", self.error));
                out
            }
        }
    }
}

fn factor_name(spec: &ProblemSpec, j: usize) -> String {
    let base = if spec.kind.is_point() { "h" } else { "f" };
    let star = if spec.kind.axis() == Some(j + 1) { "*" } else { "" };
    format!("{base}_{}{star}", j + 1)
}

/// Renders one stage of the σ-integrand, one line per expression.
pub fn dump_integrand(spec: &ProblemSpec, stage: Stage, latex: bool) -> Result<String> {
    spec.validate()?;
    let render = |e: &SigmaExpr| if latex { e.to_latex() } else { e.to_text() };
    let factors = build_factors(spec)?;
    match stage {
        Stage::Factors => Ok(factors
            .iter()
            .enumerate()
            .map(|(j, f)| format!("{} = {}", factor_name(spec, j), render(f)))
            .collect::<Vec<_>>()
            .join("\n")),
        Stage::Raw | Stage::Renormalized if spec.dim() > spec.symbolic_max_dim => Err(Error::InvalidSpec(format!(
            "no symbolic integrand above dimension {}",
            spec.symbolic_max_dim
        ))),
        Stage::Raw => Ok(format!("g = {}", render(&raw_integrand(spec, &factors)?))),
        Stage::Renormalized => {
            let r = renormalize_with_stats(&raw_integrand(spec, &factors)?);
            Ok(format!("g~ = {}", render(&r.expr)))
        }
    }
}

pub const DEMOS: [&str; 7] = ["trefethen", "hackbusch", "selfenergy", "v4", "v100", "h", "waldvogel-check"];

/// The built-in named problems.
pub fn demo_spec(name: &str) -> Result<ProblemSpec> {
    let unit = CuboidSpec::unit;
    let two = |kind, q, qp, d: usize| ProblemSpec::two_body(kind, q, qp, vec![0; d], vec![0; d]);
    let spec = match name {
        "trefethen" => two(
            Kind::Force { axis: 1 },
            CuboidSpec::from_ints(&[(1, 2), (0, 1), (0, 1)]),
            unit(3),
            3,
        ),
        "hackbusch" => ProblemSpec::two_body(Kind::Potential, unit(3), unit(3), vec![1; 3], vec![2; 3]),
        "selfenergy" => two(Kind::Potential, unit(3), unit(3), 3).with_scale(rat(1, 2)),
        "v4" => two(Kind::Potential, unit(4), unit(4), 4),
        "v100" => two(Kind::Potential, unit(100), unit(100), 100),
        "h" => two(Kind::InverseCube, unit(3), CuboidSpec::from_ints(&[(1, 2); 3]), 3),
        "waldvogel-check" => ProblemSpec::point(Kind::PointPotential, unit(3), vec![rat(1, 2); 3], vec![0; 3]),
        other => {
            return Err(Error::InvalidSpec(format!(
                "unknown demo '{other}', expected one of {}",
                DEMOS.join(", ")
            )))
        }
    };
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    #[test]
    fn trefethen_is_elementary() {
        let r = run(&demo_spec("trefethen").unwrap()).unwrap();
        assert_eq!(r.status, Status::Elementary);
        assert!((r.value - 0.925_981_260_557_291_4).abs() < 1e-13, "{}", r.value);
    }

    #[test]
    fn two_dimensional_example() {
        let sq = CuboidSpec::unit(2);
        let r = run(&ProblemSpec::two_body(Kind::Potential, sq.clone(), sq, vec![1, 1], vec![2, 2])).unwrap();
        assert_eq!(r.status, Status::Elementary);
        assert_eq!(
            emit(r.closed.as_ref().unwrap(), Format::Text),
            "1/12 - 3*sqrt(2)/40 + (19/120)*log(1+sqrt(2))"
        );
    }

    #[test]
    fn divergent_problem_is_reported() {
        let c = CuboidSpec::unit(3);
        let spec = ProblemSpec::two_body(Kind::InverseCube, c.clone(), c, vec![0; 3], vec![0; 3]);
        assert!(matches!(run(&spec), Err(Error::Divergent(_))));
    }

    #[test]
    fn factor_dump() {
        let s = dump_integrand(&demo_spec("trefethen").unwrap(), Stage::Factors, false).unwrap();
        let first = s.lines().next().unwrap();
        assert_eq!(first, "f_1* = 2*Erf(σ)/σ - Erf(2σ)/σ");
        let flat = ProblemSpec::two_body(
            Kind::Potential,
            CuboidSpec::new(vec![(int(0), int(0)), (int(0), int(1))]).unwrap(),
            CuboidSpec::unit(2),
            vec![0, 0],
            vec![0, 0],
        );
        let s = dump_integrand(&flat, Stage::Raw, false).unwrap();
        assert_eq!(s, "g = 0");
    }

    #[test]
    fn regularized_overlap_in_one_dimension() {
        let line = CuboidSpec::unit(1);
        let spec = ProblemSpec::two_body(Kind::Potential, line.clone(), line, vec![0], vec![0]).with_rho(rat(1, 2));
        let r = run(&spec).unwrap();
        // ∫∫ 1/√((x−y)² + ρ²) over the unit square
        let rho: f64 = 0.5;
        let want = 2.0 * ((1.0f64 / rho).asinh() - (1.0 + rho * rho).sqrt() + rho);
        assert!((r.value - want).abs() < 1e-12, "{} vs {want}", r.value);
    }
}
