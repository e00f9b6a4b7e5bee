//! A unique representation for sums of table atoms.
//!
//! Every value is written as `Σ c_B · B` with `c_B` in a multi-quadratic
//! field and `B` one of `1`, `log p` (prime `p`), `log(P + Q√k)` (coprime
//! positive integers `P`, `Q`, squarefree `k > 1`, norm not a perfect
//! square), `arctan τ` (`0 < τ < 1`, `τ ≠ 1/√3`), or `π`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::atoms::ClosedAtom;
use crate::error::{Error, Result};
use crate::exactnum::rational::{format_rational, to_f64};
use crate::exactnum::surd::factorize;
use crate::exactnum::{int, rat, surd_simplify, Rational, Surd, SurdSum};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogArg {
    Prime(BigUint),
    Quadratic { p: BigUint, q: BigUint, k: BigUint },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    One,
    Log(LogArg),
    /// `arctan(r·√k)`.
    Arctan { r: Rational, k: BigUint },
    Pi,
}

fn biguint_f64(n: &BigUint) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}

impl Basis {
    pub fn value(&self) -> f64 {
        match self {
            Basis::One => 1.0,
            Basis::Log(LogArg::Prime(p)) => biguint_f64(p).ln(),
            Basis::Log(LogArg::Quadratic { p, q, k }) => {
                (biguint_f64(p) + biguint_f64(q) * biguint_f64(k).sqrt()).ln()
            }
            Basis::Arctan { r, k } => (to_f64(r) * biguint_f64(k).sqrt()).atan(),
            Basis::Pi => std::f64::consts::PI,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    terms: BTreeMap<Basis, SurdSum>,
}

impl CanonicalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &SurdSum)> {
        self.terms.iter()
    }

    /// Number of `(basis, radicand)` monomials.
    pub fn monomial_count(&self) -> usize {
        self.terms.values().map(|c| c.parts().count()).sum()
    }

    pub fn coeff(&self, b: &Basis) -> SurdSum {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, b: Basis, c: &SurdSum) {
        if c.is_zero() {
            return;
        }
        let sum = self.coeff(&b).add(c);
        if sum.is_zero() {
            self.terms.remove(&b);
        } else {
            self.terms.insert(b, sum);
        }
    }

    pub fn add_form(&mut self, other: &CanonicalForm) {
        for (b, c) in &other.terms {
            self.add(b.clone(), c);
        }
    }

    pub fn scale(&self, r: &Rational) -> CanonicalForm {
        let mut out = CanonicalForm::zero();
        for (b, c) in &self.terms {
            out.add(b.clone(), &c.scale(r));
        }
        out
    }

    pub fn sub(&self, other: &CanonicalForm) -> CanonicalForm {
        let mut out = self.clone();
        out.add_form(&other.scale(&int(-1)));
        out
    }

    pub fn add_rational(&mut self, r: &Rational) {
        self.add(Basis::One, &SurdSum::rational(r.clone()));
    }

    /// `c·√r`.
    pub fn add_sqrt(&mut self, c: &Rational, r: &Rational) -> Result<()> {
        self.add(Basis::One, &SurdSum::sqrt_of(c.clone(), r)?);
        Ok(())
    }

    pub fn add_pi(&mut self, c: &SurdSum) {
        self.add(Basis::Pi, c);
    }

    /// `c·log r` for rational `r > 0`, split over prime logs.
    pub fn add_log_rational(&mut self, c: &SurdSum, r: &Rational) -> Result<()> {
        if !r.is_positive() {
            return Err(Error::NotTranslatable(format!("log of {}", format_rational(r))));
        }
        let num = r.numer().to_biguint().expect("positive");
        let den = r.denom().to_biguint().expect("positive");
        for (p, e) in factorize(&num) {
            self.add(Basis::Log(LogArg::Prime(p)), &c.scale(&int(e as i64)));
        }
        for (p, e) in factorize(&den) {
            self.add(Basis::Log(LogArg::Prime(p)), &c.scale(&int(-(e as i64))));
        }
        Ok(())
    }

    /// `c·log(p + q√k)` for rationals with `p + q√k > 0`.
    pub fn add_log_quadratic(&mut self, c: &SurdSum, p: &Rational, q: &Rational, k: &BigUint) -> Result<()> {
        // pull perfect squares out of k first
        let simple = surd_simplify(&Surd::new(q.clone(), Rational::from_integer(BigInt::from(k.clone()))))?;
        let q = simple.coeff;
        let k = simple.radicand.numer().to_biguint().unwrap_or_default();
        if q.is_zero() || k.is_one() {
            return self.add_log_rational(c, &(p + &q));
        }
        let kr = Rational::from_integer(BigInt::from(k.clone()));
        if p.is_zero() {
            if !q.is_positive() {
                return Err(Error::NotTranslatable("log of a negative surd".into()));
            }
            self.add_log_rational(c, &q)?;
            return self.add_log_rational(&c.scale(&rat(1, 2)), &kr);
        }
        if p.is_negative() || q.is_negative() {
            // p + q√k = N / (p - q√k), N = p² - q²k
            let norm = p * p - &q * &q * &kr;
            let (pp, qq) = (-p.clone(), q.clone());
            // p - q√k = -(pp + (-q)√k)
            if p.is_negative() && q.is_positive() {
                self.add_log_rational(c, &-norm)?;
                return self.add_log_quadratic(&c.scale(&int(-1)), &pp, &qq, &k);
            }
            if p.is_positive() && q.is_negative() {
                self.add_log_rational(c, &norm)?;
                return self.add_log_quadratic(&c.scale(&int(-1)), p, &-q, &k);
            }
            return Err(Error::NotTranslatable("log of a negative quadratic".into()));
        }
        // content: p + q√k = C (P + Q√k), P, Q coprime integers
        let l = p.denom().lcm(q.denom());
        let pl = p * Rational::from_integer(l.clone());
        let ql = &q * Rational::from_integer(l.clone());
        let (pi, qi) = (pl.to_integer(), ql.to_integer());
        let g = pi.gcd(&qi);
        let content = Rational::new(g.clone(), l);
        let (pi, qi) = (pi / &g, qi / &g);
        if !content.is_one() {
            self.add_log_rational(c, &content)?;
        }
        let kb = BigInt::from(k.clone());
        let norm = &pi * &pi - &kb * &qi * &qi;
        if norm.is_positive() {
            let s = norm.sqrt();
            if &s * &s == norm {
                // (P - s + Q√k)² = 2(P - s)(P + Q√k)
                let base_p = Rational::from_integer(&pi - &s);
                let t = int(2) * &base_p;
                self.add_log_rational(&c.scale(&int(-1)), &t)?;
                return self.add_log_quadratic(&c.scale(&int(2)), &base_p, &Rational::from_integer(qi), &k);
            }
        }
        let arg = LogArg::Quadratic {
            p: pi.to_biguint().expect("positive"),
            q: qi.to_biguint().expect("positive"),
            k,
        };
        self.add(Basis::Log(arg), c);
        Ok(())
    }

    /// `c·arctan(r√k)` for rational `r` and non-negative `k`.
    pub fn add_arctan(&mut self, c: &SurdSum, r: &Rational, k: &Rational) -> Result<()> {
        let simple = surd_simplify(&Surd::new(r.clone(), k.clone()))?;
        let (mut r, k) = (simple.coeff, simple.radicand);
        let mut c = c.clone();
        if r.is_zero() {
            return Ok(());
        }
        if r.is_negative() {
            r = -r;
            c = c.scale(&int(-1));
        }
        let tau2 = &r * &r * &k;
        let special = [(rat(1, 3), rat(1, 6)), (int(1), rat(1, 4)), (int(3), rat(1, 3))];
        for (t2, frac) in &special {
            if &tau2 == t2 {
                self.add_pi(&c.scale(frac));
                return Ok(());
            }
        }
        if tau2 > int(1) {
            // arctan τ = π/2 - arctan(1/τ), 1/(r√k) = (1/(rk))√k
            self.add_pi(&c.scale(&rat(1, 2)));
            let inv = int(1) / (&r * &k);
            return self.add_arctan(&c.scale(&int(-1)), &inv, &k);
        }
        let kb = k.numer().to_biguint().expect("integer radicand");
        self.add(Basis::Arctan { r, k: kb }, &c);
        Ok(())
    }

    pub fn add_atom(&mut self, atom: &ClosedAtom) -> Result<()> {
        match atom {
            ClosedAtom::RationalConst { coeff } => self.add_rational(coeff),
            ClosedAtom::InvSurd { coeff, g } => self.add_sqrt(coeff, &(int(1) / g))?,
            ClosedAtom::LogAtom { coeff, delta, g } => {
                let root = surd_simplify(&Surd::new(int(1), g + delta * delta))?;
                let k = root.radicand.numer().to_biguint().unwrap_or_default();
                let c = SurdSum::rational(coeff.clone());
                self.add_log_quadratic(&c, delta, &root.coeff, &k)?;
                self.add_log_rational(&c.scale(&rat(-1, 2)), g)?;
            }
            ClosedAtom::ArctanAtom { coeff, g, d2, d3 } => {
                let c = SurdSum::sqrt_of(coeff / int(2), &(int(1) / g))?;
                let rad = int(1) / (g * (g + d2 * d2 + d3 * d3));
                self.add_arctan(&c, &(d2 * d3), &rad)?;
            }
            ClosedAtom::PiMultiple { coeff } => self.add_pi(&SurdSum::rational(coeff.clone())),
            ClosedAtom::LogRational { coeff, arg } => {
                self.add_log_rational(&SurdSum::rational(coeff.clone()), arg)?
            }
        }
        Ok(())
    }

    pub fn from_atoms(atoms: &[ClosedAtom]) -> Result<Self> {
        let mut out = Self::zero();
        for a in atoms {
            out.add_atom(a)?;
        }
        Ok(out)
    }

    /// Value with compensated summation, and a rounding-error bound.
    pub fn value(&self) -> (f64, f64) {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        let mut mag = 0.0f64;
        for (b, c) in &self.terms {
            let bv = b.value();
            for (k, r) in c.parts() {
                let term = to_f64(r) * biguint_f64(k).sqrt() * bv;
                mag += term.abs();
                let t = sum + term;
                if sum.abs() >= term.abs() {
                    comp += (sum - t) + term;
                } else {
                    comp += (term - t) + sum;
                }
                sum = t;
            }
        }
        (sum + comp, 4.0 * f64::EPSILON * mag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ss(r: Rational) -> SurdSum {
        SurdSum::rational(r)
    }

    #[test]
    fn pi_recognition_and_merging() {
        let mut f = CanonicalForm::zero();
        f.add_pi(&ss(rat(1, 3)));
        f.add_pi(&ss(rat(1, 6)));
        assert_eq!(f.coeff(&Basis::Pi), ss(rat(1, 2)));
        let mut g = CanonicalForm::zero();
        g.add_arctan(&ss(int(2)), &int(1), &rat(1, 3)).unwrap();
        g.add_arctan(&ss(int(1)), &int(1), &rat(1, 3)).unwrap();
        assert_eq!(g.coeff(&Basis::Pi), ss(rat(1, 2)));
        assert_eq!(g.monomial_count(), 1);
    }

    #[test]
    fn log_merging() {
        let mut f = CanonicalForm::zero();
        f.add_log_rational(&ss(rat(1, 2)), &int(2)).unwrap();
        f.add_log_rational(&ss(rat(1, 2)), &int(2)).unwrap();
        let mut g = CanonicalForm::zero();
        g.add_log_rational(&ss(int(1)), &int(2)).unwrap();
        assert_eq!(f, g);
        let mut h = CanonicalForm::zero();
        h.add_log_rational(&ss(int(1)), &rat(12, 5)).unwrap();
        assert_eq!(h.coeff(&Basis::Log(LogArg::Prime(2u32.into()))), ss(int(2)));
        assert_eq!(h.coeff(&Basis::Log(LogArg::Prime(5u32.into()))), ss(int(-1)));
    }

    #[test]
    fn quadratic_logs_reduce() {
        // log(2+√3) = 2 log(1+√3) - log 2
        let mut f = CanonicalForm::zero();
        f.add_log_quadratic(&ss(int(1)), &int(2), &int(1), &3u32.into()).unwrap();
        let mut g = CanonicalForm::zero();
        g.add_log_quadratic(&ss(int(2)), &int(1), &int(1), &3u32.into()).unwrap();
        g.add_log_rational(&ss(int(-1)), &int(2)).unwrap();
        assert_eq!(f, g);
        // log(2 + 2√2) = log 2 + log(1+√2); √8 is pulled apart first
        let mut f = CanonicalForm::zero();
        f.add_log_quadratic(&ss(int(1)), &int(2), &int(1), &8u32.into()).unwrap();
        assert_eq!(f.monomial_count(), 2);
        assert!((f.value().0 - (2.0 + 8f64.sqrt()).ln()).abs() < 1e-15);
        // negative q goes through the norm
        let mut f = CanonicalForm::zero();
        f.add_log_quadratic(&ss(int(1)), &int(3), &int(-1), &2u32.into()).unwrap();
        assert!((f.value().0 - (3.0 - 2f64.sqrt()).ln()).abs() < 1e-15);
    }

    #[test]
    fn arctan_is_folded_below_one() {
        let mut f = CanonicalForm::zero();
        f.add_arctan(&ss(int(1)), &int(2), &int(6)).unwrap();
        assert!((f.value().0 - (2.0 * 6f64.sqrt()).atan()).abs() < 1e-15);
        assert!(f.terms().any(|(b, _)| matches!(b, Basis::Arctan { .. })));
        assert!(f.terms().any(|(b, _)| matches!(b, Basis::Pi)));
    }

    #[test]
    fn atoms_preserve_value() {
        let atoms = [
            ClosedAtom::InvSurd { coeff: rat(3, 7), g: rat(5, 2) },
            ClosedAtom::LogAtom { coeff: rat(-2, 3), delta: rat(1, 2), g: int(3) },
            ClosedAtom::LogAtom { coeff: rat(5, 3), delta: int(-2), g: rat(1, 5) },
            ClosedAtom::ArctanAtom { coeff: int(4), g: int(2), d2: int(1), d3: int(-3) },
            ClosedAtom::ArctanAtom { coeff: int(1), g: int(1), d2: int(1), d3: int(1) },
            ClosedAtom::LogRational { coeff: int(1), arg: rat(9, 4) },
        ];
        let f = CanonicalForm::from_atoms(&atoms).unwrap();
        let direct: f64 = atoms.iter().map(ClosedAtom::value).sum();
        assert!((f.value().0 - direct).abs() < 1e-13, "{} {}", f.value().0, direct);
    }
}
