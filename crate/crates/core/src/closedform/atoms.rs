use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rational::to_f64;
use crate::exactnum::{format_rational, int, Rational};
use crate::renorm::TerminalClass;
use crate::sigma::{SigmaExpr, SigmaTerm};

/// One entry of the integral table, before canonicalization. Values are
/// those of `(2/√π)∫_0^∞ (term) dσ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedAtom {
    RationalConst { coeff: Rational },
    /// `coeff / √g`.
    InvSurd { coeff: Rational, g: Rational },
    /// `coeff · arcsinh(δ/√g) = coeff·(log(δ + √(g+δ²)) - log √g)`.
    LogAtom { coeff: Rational, delta: Rational, g: Rational },
    /// `coeff/(2√g) · arctan(δ₂δ₃ / (√g √(g+δ₂²+δ₃²)))`.
    ArctanAtom { coeff: Rational, g: Rational, d2: Rational, d3: Rational },
    PiMultiple { coeff: Rational },
    /// `coeff · log(arg)`, from the resolved log ledger.
    LogRational { coeff: Rational, arg: Rational },
}

impl ClosedAtom {
    pub fn coeff(&self) -> &Rational {
        match self {
            Self::RationalConst { coeff }
            | Self::InvSurd { coeff, .. }
            | Self::LogAtom { coeff, .. }
            | Self::ArctanAtom { coeff, .. }
            | Self::PiMultiple { coeff }
            | Self::LogRational { coeff, .. } => coeff,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::RationalConst { .. } => "RationalConst",
            Self::InvSurd { .. } => "InvSurd",
            Self::LogAtom { .. } => "LogAtom",
            Self::ArctanAtom { .. } => "ArctanAtom",
            Self::PiMultiple { .. } => "PiMultiple",
            Self::LogRational { .. } => "LogRational",
        }
    }

    /// The rational parameters, in a fixed order per kind.
    pub fn params(&self) -> Vec<(&'static str, &Rational)> {
        match self {
            Self::RationalConst { .. } | Self::PiMultiple { .. } => Vec::new(),
            Self::InvSurd { g, .. } => vec![("G", g)],
            Self::LogAtom { delta, g, .. } => vec![("delta", delta), ("G", g)],
            Self::ArctanAtom { g, d2, d3, .. } => vec![("G", g), ("delta2", d2), ("delta3", d3)],
            Self::LogRational { arg, .. } => vec![("arg", arg)],
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Self::RationalConst { coeff } => to_f64(coeff),
            Self::InvSurd { coeff, g } => to_f64(coeff) / to_f64(g).sqrt(),
            Self::LogAtom { coeff, delta, g } => to_f64(coeff) * (to_f64(delta) / to_f64(g).sqrt()).asinh(),
            Self::ArctanAtom { coeff, g, d2, d3 } => {
                let (g, d2, d3) = (to_f64(g), to_f64(d2), to_f64(d3));
                let tau = d2 * d3 / (g.sqrt() * (g + d2 * d2 + d3 * d3).sqrt());
                to_f64(coeff) / (2.0 * g.sqrt()) * tau.atan()
            }
            Self::PiMultiple { coeff } => to_f64(coeff) * std::f64::consts::PI,
            Self::LogRational { coeff, arg } => to_f64(coeff) * to_f64(arg).ln(),
        }
    }
}

/// Table lookup for a term of class `I1`, `I2` or `I3`.
pub fn translate_term(t: &SigmaTerm, c: &Rational) -> Result<ClosedAtom> {
    let class = TerminalClass::of(t)?;
    let g = t.gauss.clone();
    let coeff = c.clone();
    match class {
        TerminalClass::I1 => Ok(ClosedAtom::InvSurd { coeff, g }),
        TerminalClass::I2 => Ok(ClosedAtom::LogAtom { coeff, delta: t.erf_args[0].clone(), g }),
        TerminalClass::I3 => Ok(ClosedAtom::ArctanAtom {
            coeff,
            g,
            d2: t.erf_args[0].clone(),
            d3: t.erf_args[1].clone(),
        }),
        other => Err(Error::NotTranslatable(format!("{other} term {}", t.as_expr(c.clone()).to_text()))),
    }
}

/// Resolves `Σ c σ^{-1} Erf(σδ)` in the limit of a vanishing Gaussian rate
/// `ρ²`: each term tends to `c·(log(2|δ|) - log ρ)·sign δ`. Returns the
/// finite atoms and the ledger (the coefficient of `-log ρ`).
pub fn ledger_resolve(terms: &SigmaExpr) -> Result<(Vec<ClosedAtom>, Rational)> {
    let mut atoms = Vec::new();
    let mut ledger = Rational::zero();
    for (t, c) in terms.terms() {
        if TerminalClass::of(t)? != TerminalClass::LogLedger {
            return Err(Error::NotTranslatable(format!("not a ledger term: {}", t.as_expr(c.clone()).to_text())));
        }
        let d = &t.erf_args[0];
        let (s, abs) = if d.is_negative() { (int(-1), -d.clone()) } else { (int(1), d.clone()) };
        let coeff = c * &s;
        ledger += &coeff;
        atoms.push(ClosedAtom::LogRational { coeff, arg: int(2) * abs });
    }
    Ok((atoms, ledger))
}

impl std::fmt::Display for ClosedAtom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}", self.kind(), format_rational(self.coeff()))?;
        for (name, v) in self.params() {
            write!(f, ", {name}={}", format_rational(v))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn term(mu: i32, g: i64, args: &[i64]) -> SigmaTerm {
        SigmaTerm::normalized(mu, int(g), args.iter().map(|&d| int(d)).collect()).unwrap().0
    }

    #[test]
    fn table_entries() {
        let a = translate_term(&term(0, 2, &[]), &int(1)).unwrap();
        assert!((a.value() - 0.5f64.sqrt()).abs() < 1e-15);
        let a = translate_term(&term(1, 1, &[1]), &int(1)).unwrap();
        assert!((a.value() - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-15);
        let a = translate_term(&term(0, 1, &[1, 1]), &int(1)).unwrap();
        assert!((a.value() - std::f64::consts::PI / 12.0).abs() < 1e-15);
        assert!(matches!(translate_term(&term(1, 0, &[1]), &int(1)), Err(Error::NotTranslatable(_))));
    }

    #[test]
    fn ledger_examples() {
        let mut e = SigmaExpr::zero();
        e.add(1, int(0), vec![int(1)], rat(15, 4));
        e.add(1, int(0), vec![int(2)], int(-24));
        e.add(1, int(0), vec![int(3)], rat(81, 4));
        let (atoms, ledger) = ledger_resolve(&e).unwrap();
        assert!(ledger.is_zero());
        let v: f64 = atoms.iter().map(ClosedAtom::value).sum();
        assert!((v - (-24.0 * 2f64.ln() + 81.0 / 4.0 * 3f64.ln())).abs() < 1e-13);

        let mut single = SigmaExpr::zero();
        single.add(1, int(0), vec![int(1)], int(1));
        assert_eq!(ledger_resolve(&single).unwrap().1, int(1));
    }
}
