//! From terminal σ-terms to closed forms: table lookup, log ledger,
//! canonicalization, evaluation and output.

mod atoms;
mod canonical;
mod emit;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

pub use atoms::{ledger_resolve, translate_term, ClosedAtom};
pub use canonical::{Basis, CanonicalForm, LogArg};
pub use emit::{emit, format_decimal, residual_json, Format};
pub(crate) use emit::to_json;

use crate::error::{Error, Result};
use crate::exactnum::rational::to_f64;
use crate::exactnum::Rational;
use crate::quadrature::{integrate_halfline, QuadOptions, QuadratureResult, TWO_OVER_SQRT_PI};
use crate::renorm::TerminalClass;
use crate::sigma::{SigmaExpr, SigmaTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Elementary,
    Mixed,
    NumericOnly,
    Divergent,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Elementary => "elementary",
            Status::Mixed => "mixed",
            Status::NumericOnly => "numeric-only",
            Status::Divergent => "divergent",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A terminal term without a table entry, priced by quadrature on demand.
#[derive(Debug, Clone)]
pub struct Residual {
    pub term: SigmaTerm,
    pub coeff: Rational,
    pub price: Option<QuadratureResult>,
}

impl Residual {
    /// `(2/√π) ∫_0^∞ coeff·term dσ`.
    pub fn price(&mut self, opts: &QuadOptions) -> Result<QuadratureResult> {
        if let Some(p) = self.price {
            return Ok(p);
        }
        let c = to_f64(&self.coeff);
        let t = self.term.clone();
        let r = integrate_halfline(|s: f64| c * t.eval(s), opts)?;
        let p = QuadratureResult {
            value: TWO_OVER_SQRT_PI * r.value,
            error_estimate: TWO_OVER_SQRT_PI * r.error_estimate,
            evaluations: r.evaluations,
        };
        self.price = Some(p);
        Ok(p)
    }
}

#[derive(Debug, Clone)]
pub struct ClosedExpr {
    pub atoms: Vec<ClosedAtom>,
    pub canonical: CanonicalForm,
    pub residuals: Vec<Residual>,
    pub ledger: Rational,
    /// Whether a divergent class carried nonzero terms.
    pub divergent_mass: bool,
}

impl ClosedExpr {
    pub fn zero() -> Self {
        Self::from_atoms(Vec::new()).expect("empty")
    }

    pub fn from_atoms(atoms: Vec<ClosedAtom>) -> Result<Self> {
        let canonical = CanonicalForm::from_atoms(&atoms)?;
        Ok(Self { atoms, canonical, residuals: Vec::new(), ledger: Rational::zero(), divergent_mass: false })
    }

    /// Wraps an already canonical value, e.g. a reference closed form.
    pub fn from_canonical(canonical: CanonicalForm) -> Self {
        Self { atoms: Vec::new(), canonical, residuals: Vec::new(), ledger: Rational::zero(), divergent_mass: false }
    }

    /// Translates a classified renormalized integrand.
    pub fn from_classes(classes: &BTreeMap<TerminalClass, SigmaExpr>) -> Result<Self> {
        let mut atoms = Vec::new();
        let mut residuals = Vec::new();
        let mut ledger = Rational::zero();
        let mut divergent_mass = false;
        for (class, e) in classes {
            match class {
                TerminalClass::I1 | TerminalClass::I2 | TerminalClass::I3 => {
                    for (t, c) in e.terms() {
                        atoms.push(translate_term(t, c)?);
                    }
                }
                TerminalClass::LogLedger => {
                    let (a, l) = ledger_resolve(e)?;
                    atoms.extend(a);
                    ledger = l;
                }
                TerminalClass::ResidualConvergent => {
                    for (t, c) in e.terms() {
                        residuals.push(Residual { term: t.clone(), coeff: c.clone(), price: None });
                    }
                }
                TerminalClass::DivergentAtInfinity | TerminalClass::DivergentConstant => {
                    divergent_mass |= !e.is_empty();
                }
            }
        }
        let canonical = CanonicalForm::from_atoms(&atoms)?;
        Ok(Self { atoms, canonical, residuals, ledger, divergent_mass })
    }

    pub fn status(&self) -> Status {
        if !self.ledger.is_zero() || self.divergent_mass {
            Status::Divergent
        } else if self.residuals.is_empty() {
            Status::Elementary
        } else {
            Status::Mixed
        }
    }

    pub fn price_residuals(&mut self, opts: &QuadOptions) -> Result<()> {
        for r in &mut self.residuals {
            r.price(opts)?;
        }
        Ok(())
    }

    /// Value and error bound. Residuals are priced at a tolerance matching
    /// `target_digits`.
    pub fn evaluate_numeric(&mut self, target_digits: u32) -> Result<(f64, f64)> {
        if self.status() == Status::Divergent {
            return Err(Error::NotFinite);
        }
        let tol = 10f64.powi(-(target_digits.min(15) as i32)).max(1e-14);
        self.price_residuals(&QuadOptions::with_tol(tol))?;
        let (mut v, mut err) = self.canonical.value();
        for r in &self.residuals {
            let p = r.price.expect("priced");
            v += p.value;
            err += p.error_estimate;
        }
        Ok((v, err))
    }

    /// The closed part only (residuals excluded).
    pub fn closed_value(&self) -> f64 {
        self.canonical.value().0
    }
}

/// Recomputes the canonical form from the atoms.
pub fn canonicalize(e: &ClosedExpr) -> Result<ClosedExpr> {
    let mut out = e.clone();
    out.canonical = CanonicalForm::from_atoms(&e.atoms)?;
    Ok(out)
}
