//! Exact scalars, bivariate polynomials and surds.

pub mod poly;
pub mod rational;
pub mod surd;

pub use poly::{poly_arith, poly_eval, BiPoly, PolyOp};
pub use rational::{
    checked_div, format_rational, int, parse_rational, rat, rat_arith, RatOp, Rational,
};
pub use surd::{surd_simplify, Surd, SurdSum};

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    fn small_poly() -> impl Strategy<Value = BiPoly<Rational>> {
        proptest::collection::vec((0u32..4, 0u32..4, small_rat()), 0..6).prop_map(|ts| {
            let mut p = BiPoly::zero();
            for (i, j, c) in ts {
                p.add_term(i, j, c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        }

        #[test]
        fn eval_is_multiplicative(p in small_poly(), q in small_poly(), x in small_rat(), y in small_rat()) {
            let pq = poly_arith(&p, &q, PolyOp::Mul);
            prop_assert_eq!(poly_eval(&pq, &x, &y), poly_eval(&p, &x, &y) * poly_eval(&q, &x, &y));
            if !p.is_zero() && !q.is_zero() {
                prop_assert_eq!(pq.degree(), p.degree() + q.degree());
            }
        }

        #[test]
        fn surd_simplify_is_idempotent_and_value_preserving(c in small_rat(), n in 0i64..5000, d in 1i64..500) {
            let s = Surd::new(c, rat(n, d));
            let once = surd_simplify(&s).unwrap();
            let twice = surd_simplify(&once).unwrap();
            prop_assert_eq!(&once, &twice);
            let (v0, v1) = (s.to_f64(), once.to_f64());
            prop_assert!((v0 - v1).abs() <= 1e-14 * v0.abs().max(1.0));
        }
    }
}
