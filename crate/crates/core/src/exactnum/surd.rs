//! Square roots of rationals and linear combinations of them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, to_f64, Rational};
use crate::error::{Error, Result};

/// Perfect squares are only extracted from factors below this bound.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Splits `n = root^2 * rest` where `rest` has no square factor `p^2` with
/// `p <= TRIAL_DIVISION_BOUND` (and is not itself a perfect square).
pub fn square_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut root = BigUint::one();
    if rest.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_BOUND {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let p2 = &pb * &pb;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            root *= &pb;
        }
        p +=if p == 2 { 1 } else { 2 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        root *= &s;
        rest = BigUint::one();
    }
    (root, rest)
}

/// Prime factorization by trial division up to `TRIAL_DIVISION_BOUND`; an
/// unfactored cofactor above the bound is returned as a single entry.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_BOUND && rest > BigUint::one() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        out.push((rest, 1));
    }
    out
}

/// The value `coeff * sqrt(radicand)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    pub coeff: Rational,
    pub radicand: Rational,
}

impl Surd {
    pub fn new(coeff: Rational, radicand: Rational) -> Self {
        Self { coeff, radicand }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coeff) * to_f64(&self.radicand).sqrt()
    }
}

/// Normalizes `c·√(p/q)` to `c'·√k` with integer `k` squarefree (up to the
/// trial-division bound). Zero values become `0·√1`.
pub fn surd_simplify(s: &Surd) -> Result<Surd> {
    if s.radicand.is_negative() {
        return Err(Error::InvalidRadicand(format_rational(&s.radicand)));
    }
    if s.coeff.is_zero() || s.radicand.is_zero() {
        return Ok(Surd::new(Rational::zero(), Rational::one()));
    }
    // √(p/q) = √(pq)/q
    let pq = (s.radicand.numer() * s.radicand.denom())
        .to_biguint()
        .expect("positive radicand");
    let (root, rest) = square_split(&pq);
    let coeff = &s.coeff * Rational::new(root.into(), s.radicand.denom().clone());
    Ok(Surd::new(coeff, Rational::from_integer(rest.into())))
}

/// Exact element `Σ r_k √k` of a multi-quadratic field, keyed by squarefree
/// radicand `k`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurdSum {
    parts: BTreeMap<BigUint, Rational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(r: Rational) -> Self {
        let mut s = Self::zero();
        s.add_part(BigUint::one(), r);
        s
    }

    /// `c·√r` for any non-negative rational `r`.
    pub fn sqrt_of(c: Rational, r: &Rational) -> Result<Self> {
        let simple = surd_simplify(&Surd::new(c, r.clone()))?;
        let mut s = Self::zero();
        let k = simple.radicand.numer().to_biguint().unwrap_or_default();
        s.add_part(k, simple.coeff);
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.parts.iter()
    }

    fn add_part(&mut self, k: BigUint, c: Rational) {
        if c.is_zero() || k.is_zero() {
            return;
        }
        let entry = self.parts.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.parts.remove(&k);
        }
    }

    pub fn add(&self, other: &SurdSum) -> SurdSum {
        let mut out = self.clone();
        for (k, c) in &other.parts {
            out.add_part(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> SurdSum {
        let mut out = SurdSum::zero();
        for (k, c) in &self.parts {
            out.add_part(k.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, other: &SurdSum) -> SurdSum {
        let mut out = SurdSum::zero();
        for (k1, c1) in &self.parts {
            for (k2, c2) in &other.parts {
                // √k1·√k2 = g·√(k1 k2 / g²), g = gcd(k1, k2), both squarefree
                let g = k1.gcd(k2);
                let k = (k1 / &g) * (k2 / &g);
                let c = c1 * c2 * Rational::from_integer(g.into());
                out.add_part(k, c);
            }
        }
        out
    }

    /// The rational value if no irrational part is present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.parts.len() {
            0 => Some(Rational::zero()),
            1 => self.parts.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.parts
            .iter()
            .map(|(k, c)| to_f64(c) * k.to_f64().unwrap_or(f64::INFINITY).sqrt())
            .sum()
    }

    /// Sum of absolute values of the parts, for error bounds.
    pub fn abs_f64(&self) -> f64 {
        self.parts
            .iter()
            .map(|(k, c)| (to_f64(c) * k.to_f64().unwrap_or(f64::INFINITY).sqrt()).abs())
            .sum()
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.parts {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k.is_one() {
                write!(f, "{}", format_rational(c))?;
            } else {
                write!(f, "({})*sqrt({k})", format_rational(c))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SurdSum[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn simp(c: Rational, r: Rational) -> Surd {
        surd_simplify(&Surd::new(c, r)).unwrap()
    }

    #[test]
    fn simplify_examples() {
        assert_eq!(simp(int(1), int(4)), Surd::new(int(2), int(1)));
        assert_eq!(simp(int(1), int(8)), Surd::new(int(2), int(2)));
        assert_eq!(simp(int(1), rat(1, 2)), Surd::new(rat(1, 2), int(2)));
        assert_eq!(simp(int(3), rat(12, 25)), Surd::new(rat(6, 5), int(3)));
        assert!(matches!(
            surd_simplify(&Surd::new(int(1), int(-2))),
            Err(Error::InvalidRadicand(_))
        ));
    }

    #[test]
    fn zero_surd_is_canonical() {
        assert_eq!(simp(int(0), int(7)), Surd::new(int(0), int(1)));
        assert_eq!(simp(int(5), int(0)), Surd::new(int(0), int(1)));
    }

    #[test]
    fn squarefree_split_handles_large_squares() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_003u64) * BigUint::from(6u32);
        // 1000003 is above the trial-division bound, so its square stays put.
        let (root, rest) = square_split(&n);
        assert_eq!(root, BigUint::one());
        assert_eq!(rest, n);
        let perfect = BigUint::from(1_000_003u64) * BigUint::from(1_000_003u64);
        assert_eq!(square_split(&perfect), (BigUint::from(1_000_003u64), BigUint::one()));
    }

    #[test]
    fn factorization() {
        let f = factorize(&BigUint::from(360u32));
        let expect: Vec<(BigUint, u32)> =
            vec![(2u32.into(), 3), (3u32.into(), 2), (5u32.into(), 1)];
        assert_eq!(f, expect);
        assert!(factorize(&BigUint::one()).is_empty());
    }

    #[test]
    fn surd_sum_products() {
        let s2 = SurdSum::sqrt_of(int(1), &int(2)).unwrap();
        let s6 = SurdSum::sqrt_of(int(1), &int(6)).unwrap();
        let s3 = SurdSum::sqrt_of(int(1), &int(3)).unwrap();
        assert_eq!(s2.mul(&s2), SurdSum::rational(int(2)));
        assert_eq!(s2.mul(&s6), s3.scale(&int(2)));
        assert!(s2.add(&s2.scale(&int(-1))).is_zero());
        assert_eq!(s2.mul(&s2).as_rational(), Some(int(2)));
        assert_eq!(s2.as_rational(), None);
    }
}
