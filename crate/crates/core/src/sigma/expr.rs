use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::exactnum::rational::{format_rational, sign};
use crate::exactnum::Rational;

/// `σ^{-mu} · e^{-σ² gauss} · ∏ Erf(σ δ_j)`.
///
/// Canonical: every `δ_j > 0` (signs are moved into the coefficient by
/// oddness of `Erf`), the arguments are sorted, and `gauss >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaTerm {
    pub mu: i32,
    pub gauss: Rational,
    pub erf_args: Vec<Rational>,
}

impl SigmaTerm {
    /// Builds a canonical term. Returns the sign picked up from negative
    /// arguments, or `None` if some argument vanishes (the term is zero).
    pub fn normalized(mu: i32, gauss: Rational, erf_args: Vec<Rational>) -> Option<(Self, i32)> {
        assert!(!gauss.is_negative(), "negative Gaussian rate");
        let mut s = 1;
        let mut args = Vec::with_capacity(erf_args.len());
        for d in erf_args {
            match sign(&d) {
                0 => return None,
                -1 => {
                    s = -s;
                    args.push(-d);
                }
                _ => args.push(d),
            }
        }
        args.sort();
        Some((Self { mu, gauss, erf_args: args }, s))
    }

    /// Number of `Erf` factors.
    pub fn r(&self) -> usize {
        self.erf_args.len()
    }

    /// `mu - r`; even for every term the engine produces.
    pub fn parity_measure(&self) -> i32 {
        self.mu - self.r() as i32
    }

    /// Direct floating-point value of the term (without coefficient).
    pub fn eval(&self, sigma: f64) -> f64 {
        let g = crate::exactnum::rational::to_f64(&self.gauss);
        let mut v = sigma.powi(-self.mu) * (-sigma * sigma * g).exp();
        for d in &self.erf_args {
            v *= crate::quadrature::erf_value(sigma * crate::exactnum::rational::to_f64(d));
        }
        v
    }

    /// The product of two terms: powers, rates and `Erf` multisets add up.
    pub fn times(&self, other: &SigmaTerm) -> SigmaTerm {
        let mut args = self.erf_args.clone();
        args.extend(other.erf_args.iter().cloned());
        args.sort();
        SigmaTerm { mu: self.mu + other.mu, gauss: &self.gauss + &other.gauss, erf_args: args }
    }
}

/// A fully collected linear combination of [`SigmaTerm`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SigmaExpr {
    terms: BTreeMap<SigmaTerm, Rational>,
}

impl SigmaExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant `c` (a term with `mu = 0`, no Gaussian, no `Erf`).
    pub fn constant(c: Rational) -> Self {
        let mut e = Self::zero();
        e.add(0, Rational::zero(), Vec::new(), c);
        e
    }

    /// The monomial `c σ^k` (as `mu = -k`).
    pub fn sigma_power(k: i32, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add(-k, Rational::zero(), Vec::new(), c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SigmaTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &SigmaTerm) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c · σ^{-mu} e^{-σ² gauss} ∏ Erf(σ δ)`, normalizing signs and
    /// dropping vanishing terms.
    pub fn add(&mut self, mu: i32, gauss: Rational, erf_args: Vec<Rational>, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some((t, s)) = SigmaTerm::normalized(mu, gauss, erf_args) {
            let c = if s < 0 { -c } else { c };
            self.add_term(t, c);
        }
    }

    /// Adds a coefficient to an already canonical term.
    pub fn add_term(&mut self, t: SigmaTerm, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add_expr(&mut self, other: &SigmaExpr) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> SigmaExpr {
        let mut out = SigmaExpr::zero();
        for (t, a) in &self.terms {
            out.add_term(t.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &SigmaExpr) -> SigmaExpr {
        let mut out = SigmaExpr::zero();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                out.add_term(t1.times(t2), c1 * c2);
            }
        }
        out
    }

    /// Removes and returns the term with the largest `mu` if `mu >= min_mu`.
    pub(crate) fn pop_highest(&mut self, min_mu: i32) -> Option<(SigmaTerm, Rational)> {
        let (t, _) = self.terms.last_key_value()?;
        if t.mu < min_mu {
            return None;
        }
        self.terms.pop_last()
    }

    /// Whether `mu - r` is even for every term.
    pub fn has_even_parity(&self) -> bool {
        self.terms.keys().all(|t| t.parity_measure().rem_euclid(2) == 0)
    }

    /// Direct floating-point evaluation, term by term.
    pub fn eval_direct(&self, sigma: f64) -> f64 {
        self.terms
            .iter()
            .map(|(t, c)| crate::exactnum::rational::to_f64(c) * t.eval(sigma))
            .sum()
    }

    /// Plain-text rendering, e.g. `2*Erf(σ)/σ - Erf(2σ)/σ`.
    pub fn to_text(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let body = if latex { term_latex(t, &c.abs()) } else { term_text(t, &c.abs()) };
            out.push_str(&body);
        }
        out
    }
}

fn scaled_sigma(d: &Rational, latex: bool) -> String {
    let s = if latex { "\\sigma" } else { "σ" };
    if d.is_one() {
        s.to_string()
    } else if d.denom().is_one() {
        format!("{}{s}", d.numer())
    } else if latex {
        format!("\\tfrac{{{}}}{{{}}}{s}", d.numer(), d.denom())
    } else {
        format!("({}){s}", format_rational(d))
    }
}

fn grouped_args(args: &[Rational]) -> Vec<(&Rational, usize)> {
    let mut out: Vec<(&Rational, usize)> = Vec::new();
    for a in args {
        match out.last_mut() {
            Some((b, k)) if *b == a => *k += 1,
            _ => out.push((a, 1)),
        }
    }
    out
}

fn term_text(t: &SigmaTerm, c: &Rational) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !t.gauss.is_zero() {
        let g = if t.gauss.is_one() { String::new() } else { format_rational(&t.gauss) };
        let g = if t.gauss.denom().is_one() || g.is_empty() { g } else { format!("({g})") };
        factors.push(format!("exp(-{g}σ^2)"));
    }
    for (d, k) in grouped_args(&t.erf_args) {
        let base = format!("Erf({})", scaled_sigma(d, false));
        factors.push(if k == 1 { base } else { format!("{base}^{k}") });
    }
    if t.mu < 0 {
        factors.insert(0, if t.mu == -1 { "σ".to_string() } else { format!("σ^{}", -t.mu) });
    }
    let mut s = String::new();
    let numer_empty = factors.is_empty();
    if !c.is_one() || numer_empty {
        if c.denom().is_one() {
            let _ = write!(s, "{}", c.numer());
        } else {
            let _ = write!(s, "({})", format_rational(c));
        }
        if !numer_empty {
            s.push('*');
        }
    }
    s.push_str(&factors.join("*"));
    if t.mu > 0 {
        if t.mu == 1 {
            s.push_str("/σ");
        } else {
            let _ = write!(s, "/σ^{}", t.mu);
        }
    }
    s
}

fn term_latex(t: &SigmaTerm, c: &Rational) -> String {
    let mut s = String::new();
    if !c.is_one() {
        if c.denom().is_one() {
            let _ = write!(s, "{}", c.numer());
        } else {
            let _ = write!(s, "\\frac{{{}}}{{{}}}", c.numer(), c.denom());
        }
    }
    if t.mu != 0 {
        let _ = write!(s, "\\sigma^{{{}}}", -t.mu);
    }
    if !t.gauss.is_zero() {
        let g = if t.gauss.is_one() {
            String::new()
        } else if t.gauss.denom().is_one() {
            t.gauss.numer().to_string()
        } else {
            format!("\\tfrac{{{}}}{{{}}}", t.gauss.numer(), t.gauss.denom())
        };
        let _ = write!(s, "e^{{-{g}\\sigma^2}}");
    }
    for (d, k) in grouped_args(&t.erf_args) {
        let _ = write!(s, "\\operatorname{{Erf}}({})", scaled_sigma(d, true));
        if k > 1 {
            let _ = write!(s, "^{{{k}}}");
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn zero_erf_argument_prunes_term() {
        let mut e = SigmaExpr::zero();
        e.add(1, int(0), vec![int(0)], int(5));
        assert!(e.is_zero());
    }

    #[test]
    fn negative_arguments_flip_the_coefficient() {
        let mut e = SigmaExpr::zero();
        e.add(1, int(0), vec![int(-2)], int(3));
        e.add(1, int(0), vec![int(2)], int(3));
        assert!(e.is_zero());
        e.add(2, int(1), vec![int(-1), int(-3)], int(1));
        let (t, c) = e.terms().next().unwrap();
        assert_eq!(t.erf_args, vec![int(1), int(3)]);
        assert_eq!(c, &int(1));
    }

    #[test]
    fn product_merges_like_terms() {
        let mut f = SigmaExpr::zero();
        f.add(1, int(0), vec![int(1)], int(1));
        let sq = f.mul(&f);
        assert_eq!(sq.len(), 1);
        let (t, c) = sq.terms().next().unwrap();
        assert_eq!((t.mu, t.erf_args.clone(), c.clone()), (2, vec![int(1), int(1)], int(1)));
    }

    #[test]
    fn renders_text() {
        let mut e = SigmaExpr::zero();
        e.add(1, int(0), vec![int(1)], int(2));
        e.add(1, int(0), vec![int(2)], int(-1));
        assert_eq!(e.to_text(), "2*Erf(σ)/σ - Erf(2σ)/σ");
        let mut g = SigmaExpr::zero();
        g.add(0, int(1), vec![int(1), int(1)], rat(-61, 1120));
        g.add(2, int(0), vec![], int(-1));
        assert_eq!(g.to_text(), "-(61/1120)*exp(-σ^2)*Erf(σ)^2 - 1/σ^2");
        assert_eq!(SigmaExpr::zero().to_text(), "0");
    }
}
