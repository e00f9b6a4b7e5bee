//! Integration by parts in σ, dropping boundary terms, until every term is
//! integrable on its own.
//!
//! With `h(σ) = e^{-σ²G} ∏ Erf(σδ_j)` and `ν = μ - 1`,
//! `σ^{-μ} h ↦ ν^{-1} σ^{-ν} h'`, where
//! `h' = -2Gσ·h + Σ_j (2/√π) δ_j e^{-σ²δ_j²} ∏_{i≠j} Erf(σδ_i)`.
//! The `2/√π` is absorbed into the convention `Erf = ∫_0 e^{-t²}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, Rational};
use crate::sigma::{SigmaExpr, SigmaTerm};

/// One application of the rewrite rule to `c·t`.
pub fn rewrite_step(t: &SigmaTerm, c: &Rational) -> Result<SigmaExpr> {
    if t.mu < 2 {
        return Err(Error::NotRewritable(t.mu));
    }
    let nu = int(t.mu as i64 - 1);
    let mut out = SigmaExpr::zero();
    if !t.gauss.is_zero() {
        let coeff = -(int(2) * &t.gauss * c) / &nu;
        out.add_term(
            SigmaTerm { mu: t.mu - 2, gauss: t.gauss.clone(), erf_args: t.erf_args.clone() },
            coeff,
        );
    }
    for (j, d) in t.erf_args.iter().enumerate() {
        let mut args = t.erf_args.clone();
        args.remove(j);
        let child = SigmaTerm { mu: t.mu - 1, gauss: &t.gauss + d * d, erf_args: args };
        out.add_term(child, c * d / &nu);
    }
    Ok(out)
}

/// Result of [`renormalize_with_stats`].
#[derive(Debug, Clone)]
pub struct Renormalized {
    pub expr: SigmaExpr,
    pub rewrites: usize,
}

/// Rewrites every term with `μ ≥ 2`, highest `μ` first, until none is left.
pub fn renormalize(e: &SigmaExpr) -> SigmaExpr {
    renormalize_with_stats(e).expr
}

pub fn renormalize_with_stats(e: &SigmaExpr) -> Renormalized {
    let mut work = e.clone();
    let mut done = SigmaExpr::zero();
    let mut rewrites = 0;
    while let Some((t, c)) = work.pop_highest(2) {
        let children = rewrite_step(&t, &c).expect("μ ≥ 2 by construction");
        rewrites += 1;
        for (child, cc) in children.terms() {
            if child.mu >= 2 {
                work.add_term(child.clone(), cc.clone());
            } else {
                done.add_term(child.clone(), cc.clone());
            }
        }
    }
    done.add_expr(&work);
    Renormalized { expr: done, rewrites }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TerminalClass {
    /// `e^{-σ²G}`.
    I1,
    /// `σ^{-1} e^{-σ²G} Erf(σδ)`.
    I2,
    /// `e^{-σ²G} Erf(σδ₂) Erf(σδ₃)`.
    I3,
    /// `σ^{-1} Erf(σδ)`: individually divergent, summed coefficients must vanish.
    LogLedger,
    /// Gaussian decay but no closed form in the table.
    ResidualConvergent,
    /// No Gaussian and decay at most like `σ^{-1}`.
    DivergentAtInfinity,
    /// The bare constant.
    DivergentConstant,
}

impl TerminalClass {
    pub fn of(t: &SigmaTerm) -> Result<Self> {
        if t.mu >= 2 {
            return Err(Error::NotRewritable(t.mu));
        }
        let r = t.r();
        Ok(if t.gauss.is_positive() {
            match (t.mu, r) {
                (0, 0) => Self::I1,
                (1, 1) => Self::I2,
                (0, 2) => Self::I3,
                _ => Self::ResidualConvergent,
            }
        } else {
            match (t.mu, r) {
                (1, 1) => Self::LogLedger,
                (0, 0) => Self::DivergentConstant,
                _ => Self::DivergentAtInfinity,
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::I1 => "I1",
            Self::I2 => "I2",
            Self::I3 => "I3",
            Self::LogLedger => "LogLedger",
            Self::ResidualConvergent => "ResidualConvergent",
            Self::DivergentAtInfinity => "DivergentAtInfinity",
            Self::DivergentConstant => "DivergentConstant",
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Self::DivergentAtInfinity | Self::DivergentConstant)
    }
}

impl fmt::Display for TerminalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Partitions a renormalized expression by terminal class.
pub fn classify_terms(e: &SigmaExpr) -> Result<BTreeMap<TerminalClass, SigmaExpr>> {
    let mut out: BTreeMap<TerminalClass, SigmaExpr> = BTreeMap::new();
    for (t, c) in e.terms() {
        out.entry(TerminalClass::of(t)?).or_default().add_term(t.clone(), c.clone());
    }
    Ok(out)
}
