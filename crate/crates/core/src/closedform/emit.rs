//! Text, LaTeX and JSON output.

use num_bigint::BigUint;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::canonical::{Basis, LogArg};
use super::{ClosedExpr, Residual, Status};
use crate::exactnum::{format_rational, Rational};
use crate::sigma::SigmaExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl std::str::FromStr for Format {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(crate::error::Error::Parse(format!("unknown format '{other}'"))),
        }
    }
}

/// `r·√k` with `r > 0`.
fn surd_text(r: &Rational, k: &BigUint, latex: bool) -> String {
    if k.is_one() {
        return if latex { frac_latex(r) } else { format_rational(r) };
    }
    let root = if latex { format!("\\sqrt{{{k}}}") } else { format!("sqrt({k})") };
    let num = r.numer();
    let core = if num.is_one() { root } else if latex { format!("{num}{root}") } else { format!("{num}*{root}") };
    if r.denom().is_one() {
        core
    } else if latex {
        format!("\\frac{{{core}}}{{{}}}", r.denom())
    } else {
        format!("{core}/{}", r.denom())
    }
}

fn frac_latex(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
    }
}

fn basis_text(b: &Basis, latex: bool) -> String {
    match (b, latex) {
        (Basis::One, _) => String::new(),
        (Basis::Log(LogArg::Prime(p)), false) => format!("log({p})"),
        (Basis::Log(LogArg::Prime(p)), true) => format!("\\log({p})"),
        (Basis::Log(LogArg::Quadratic { p, q, k }), latex) => {
            let s = surd_text(&Rational::from_integer(q.clone().into()), k, latex);
            if latex { format!("\\log({p}+{s})") } else { format!("log({p}+{s})") }
        }
        (Basis::Arctan { r, k }, false) => format!("arctan({})", surd_text(r, k, false)),
        (Basis::Arctan { r, k }, true) => format!("\\arctan\\left({}\\right)", surd_text(r, k, true)),
        (Basis::Pi, false) => "pi".to_string(),
        (Basis::Pi, true) => "\\pi".to_string(),
    }
}

/// One monomial `|r|√k · B`, without sign.
fn monomial(b: &Basis, r: &Rational, k: &BigUint, latex: bool) -> String {
    let c = surd_text(r, k, latex);
    if matches!(b, Basis::One) {
        return c;
    }
    let bt = basis_text(b, latex);
    if r.is_one() && k.is_one() {
        bt
    } else if latex {
        format!("{c}{bt}")
    } else if c.contains('/') {
        format!("({c})*{bt}")
    } else {
        format!("{c}*{bt}")
    }
}

fn residual_sum(rs: &[Residual]) -> SigmaExpr {
    let mut e = SigmaExpr::zero();
    for r in rs {
        e.add_term(r.term.clone(), r.coeff.clone());
    }
    e
}

fn render(e: &ClosedExpr, latex: bool) -> String {
    let mut out = String::new();
    for (b, c) in e.canonical.terms() {
        for (k, r) in c.parts() {
            let body = monomial(b, &r.abs(), k, latex);
            if out.is_empty() {
                if r.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if r.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
    }
    if !e.residuals.is_empty() {
        let integrand = residual_sum(&e.residuals);
        let piece = if latex {
            format!("\\frac{{2}}{{\\sqrt{{\\pi}}}}\\int_0^\\infty \\left({}\\right)\\,d\\sigma", integrand.to_latex())
        } else {
            format!("(2/sqrt(pi))*int({}, σ, 0, inf)", integrand.to_text())
        };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&piece);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `v` rounded to `digits` significant digits.
pub fn format_decimal(v: f64, digits: u32) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    let prec = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{v:.prec$}")
}

pub fn residual_json(r: &Residual) -> Value {
    let (value, error) = match r.price {
        Some(p) => (json!(p.value), json!(p.error_estimate)),
        None => (Value::Null, Value::Null),
    };
    json!({
        "term": {
            "mu": r.term.mu,
            "G": format_rational(&r.term.gauss),
            "erf_args": r.term.erf_args.iter().map(format_rational).collect::<Vec<_>>(),
            "coeff": format_rational(&r.coeff),
            "text": r.term.as_expr(r.coeff.clone()).to_text(),
        },
        "value": value,
        "error": error,
    })
}

fn closed_form_json(e: &ClosedExpr) -> Vec<Value> {
    let mut out = Vec::new();
    for (b, c) in e.canonical.terms() {
        for (k, r) in c.parts() {
            let sqrt = k.to_string();
            let entry = match b {
                Basis::One if k.is_one() => json!({"kind": "RationalConst", "coeff": format_rational(r), "params": {}}),
                Basis::One => {
                    // r√k = (r k)/√k
                    let coeff = r * Rational::from_integer(k.clone().into());
                    json!({"kind": "InvSurd", "coeff": format_rational(&coeff), "params": {"G": sqrt}})
                }
                Basis::Log(arg) => {
                    let a = match arg {
                        LogArg::Prime(p) => p.to_string(),
                        LogArg::Quadratic { p, q, k } => format!("{p}+{}", surd_text(&Rational::from_integer(q.clone().into()), k, false)),
                    };
                    json!({"kind": "LogAtom", "coeff": format_rational(r), "params": {"sqrt": sqrt, "arg": a}})
                }
                Basis::Arctan { r: t, k: tk } => json!({
                    "kind": "ArctanAtom",
                    "coeff": format_rational(r),
                    "params": {"sqrt": sqrt, "tau": surd_text(t, tk, false), "tau_squared": format_rational(&(t * t * Rational::from_integer(tk.clone().into())))},
                }),
                Basis::Pi => json!({"kind": "PiMultiple", "coeff": format_rational(r), "params": {"sqrt": sqrt}}),
            };
            out.push(entry);
        }
    }
    out
}

/// The JSON document; `problem` and `status` may be overridden by callers.
pub(crate) fn to_json(e: &ClosedExpr, problem: Value, status: Status, value: Option<f64>, digits: u32) -> Value {
    let decimal = match value {
        Some(v) => json!(format_decimal(v, digits)),
        None => Value::Null,
    };
    json!({
        "problem": problem,
        "status": status.as_str(),
        "closed_form": closed_form_json(e),
        "residuals": e.residuals.iter().map(residual_json).collect::<Vec<_>>(),
        "value": {"decimal": decimal, "digits": digits},
    })
}

pub fn emit(e: &ClosedExpr, format: Format) -> String {
    match format {
        Format::Text => render(e, false),
        Format::Latex => render(e, true),
        Format::Json => {
            let mut priced = e.clone();
            let value = priced.evaluate_numeric(12).ok().map(|(v, _)| v);
            let doc = to_json(&priced, json!({}), priced.status(), value, 12);
            serde_json::to_string_pretty(&doc).expect("serializable")
        }
    }
}
