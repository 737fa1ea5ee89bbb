//! Polynomials, truncated power series and rational functions about 0.

mod func;
mod jet;
mod poly;
mod rational;
pub mod text;

pub use func::{Analytic, Builtin};
pub use jet::PowerSeriesJet;
pub use poly::Polynomial;
pub use rational::RationalFunction;

use crate::error::Result;
use crate::scalar::{Scalar, Tol};

/// Maclaurin coefficients of `r` through order `order`.
pub fn taylor_of_rational<S: Scalar>(r: &RationalFunction<S>, order: usize, tol: Tol) -> Result<PowerSeriesJet<S>> {
    r.taylor(order, tol)
}

pub fn derivative<S: Scalar>(p: &Polynomial<S>, l: usize) -> Polynomial<S> {
    p.derivative(l)
}

/// `(f(z0), …, f^(order)(z0))`.
pub fn eval_jet<S: Scalar>(f: &RationalFunction<S>, z0: &S, order: usize, tol: Tol) -> Result<Vec<S>> {
    f.eval_jet(z0, order, tol)
}

pub fn partial_sum<S: Scalar>(jet: &PowerSeriesJet<S>, k: i64) -> Result<Polynomial<S>> {
    jet.partial_sum(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex as Q;
    use proptest::prelude::*;

    fn small_q() -> impl Strategy<Value = Q> {
        (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| Q::gaussian(a, b, c, d))
    }

    fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial<Q>> {
        prop::collection::vec(small_q(), 1..=max_deg + 1).prop_map(Polynomial::new)
    }

    fn rational(max_deg: usize) -> impl Strategy<Value = RationalFunction<Q>> {
        (poly(max_deg), poly(max_deg), small_q()).prop_filter_map("den(0) = 0", |(n, d, d0)| {
            if d0.is_zero() {
                return None;
            }
            let mut c = d.into_coeffs();
            if c.is_empty() {
                c.push(Q::zero());
            }
            c[0] = d0;
            RationalFunction::new(n, Polynomial::new(c)).ok()
        })
    }

    fn factorial(v: usize) -> Q {
        (1..=v).fold(Q::one(), |acc, k| acc * Q::from_i64(k as i64))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn taylor_matches_scaled_derivatives(r in rational(6), k in 0usize..=12) {
            let jet = taylor_of_rational(&r, k, Tol::default()).unwrap();
            let d = eval_jet(&r, &Q::zero(), k, Tol::default()).unwrap();
            for (v, dv) in d.iter().enumerate().take(k + 1) {
                prop_assert_eq!(jet.coeffs()[v].clone(), dv.clone() / factorial(v));
            }
        }

        #[test]
        fn derivative_is_linear(a in poly(6), b in poly(6), s in small_q(), t in small_q(), l in 0usize..5) {
            let lhs = derivative(&(&a.scale(&s) + &b.scale(&t)), l);
            let rhs = &derivative(&a, l).scale(&s) + &derivative(&b, l).scale(&t);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn taylor_of_product_is_truncated_product(r in rational(3), s in rational(3), k in 0usize..=8) {
            let prod = taylor_of_rational(&r.mul(&s), k, Tol::default()).unwrap();
            let lhs = taylor_of_rational(&r, k, Tol::default()).unwrap();
            let rhs = taylor_of_rational(&s, k, Tol::default()).unwrap();
            prop_assert_eq!(prod, lhs.mul(&rhs));
        }
    }
}
