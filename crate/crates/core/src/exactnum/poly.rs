//! Sparse bivariate polynomials in `x` and `y`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Num, Zero};

use super::rational::{int, Rational};

/// Sparse polynomial `Σ c_ij x^i y^j` over a coefficient ring `T`.
///
/// Zero coefficients are never stored, so two equal polynomials always have
/// identical term maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Clone + Num> BiPoly<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, T::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, T::one())
    }

    /// `c x^i y^j`.
    pub fn monomial(i: u32, j: u32, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree -1.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|&(i, j)| (i + j) as i64).max().unwrap_or(-1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &T)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c x^i y^j` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, i: u32, j: u32, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&(i, j));
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, a.clone() * c.clone());
        }
        out
    }

    /// The polynomial with `x` and `y` exchanged.
    pub fn swap_xy(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(j, i, c.clone());
        }
        out
    }

    /// Groups the terms by power of `y`: returns `(k, c_k(x))` with
    /// `self = Σ_k c_k(x) y^k`.
    pub fn collect_y(&self) -> BTreeMap<u32, BiPoly<T>> {
        let mut out: BTreeMap<u32, BiPoly<T>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            out.entry(j).or_insert_with(Self::zero).add_term(i, 0, c.clone());
        }
        out
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        let mut acc = T::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + c.clone() * pow(x, i) * pow(y, j);
        }
        acc
    }

    /// Maps every coefficient through `f` (e.g. to floats).
    pub fn map_coeffs<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> BiPoly<U> {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, f(c));
        }
        out
    }
}

fn pow<T: Clone + Num>(base: &T, k: u32) -> T {
    let mut acc = T::one();
    for _ in 0..k {
        acc = acc * base.clone();
    }
    acc
}

impl BiPoly<Rational> {
    /// `∫_a^b ∫_c^d p(x, y) dy dx`, exactly.
    pub fn integrate_rect(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), coeff) in &self.terms {
            acc += coeff * antiderivative_span(a, b, i) * antiderivative_span(c, d, j);
        }
        acc
    }

    /// `∫_a^b p(x, y0) dx`, exactly.
    pub fn integrate_x_at(&self, a: &Rational, b: &Rational, y0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), coeff) in &self.terms {
            acc += coeff * antiderivative_span(a, b, i) * super::rational::pow(y0, j);
        }
        acc
    }
}

/// `∫_a^b t^k dt`.
fn antiderivative_span(a: &Rational, b: &Rational, k: u32) -> Rational {
    let kk = k + 1;
    (super::rational::pow(b, kk) - super::rational::pow(a, kk)) / int(kk as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<T: Clone + Num>(p: &BiPoly<T>, q: &BiPoly<T>, op: PolyOp) -> BiPoly<T> {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    }
}

pub fn poly_eval<T: Clone + Num>(p: &BiPoly<T>, x: &T, y: &T) -> T {
    p.eval(x, y)
}

impl<T: Clone + Num> Add for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<T: Clone + Num> Sub for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, T::zero() - c.clone());
        }
        out
    }
}

impl<T: Clone + Num> Mul for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Clone + Num> Neg for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        self.scale(&(T::zero() - T::one()))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Clone + Num> $tr for BiPoly<T> {
            type Output = BiPoly<T>;
            fn $m(self, rhs: BiPoly<T>) -> BiPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Clone + Num + fmt::Display> fmt::Display for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest total degree first, then by x power.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        for (i, j) in keys {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", self.terms[&(i, j)])?;
            if i > 0 {
                write!(f, "*x^{i}")?;
            }
            if j > 0 {
                write!(f, "*y^{j}")?;
            }
        }
        Ok(())
    }
}

impl<T: Clone + Num + fmt::Display> fmt::Debug for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[{self}]")
    }
}
