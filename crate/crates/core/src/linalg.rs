//! Dense determinants and linear solves over a [`Scalar`] field.
//!
//! Exact scalars use fraction-free (Bareiss) elimination for determinants;
//! floats use Gaussian elimination with partial pivoting.

use crate::scalar::{Scalar, Tol};

/// Square matrix stored row-major.
pub type Matrix<S> = Vec<Vec<S>>;

fn max_modulus<S: Scalar>(m: &Matrix<S>) -> f64 {
    m.iter().flatten().map(Scalar::modulus).fold(0.0, f64::max)
}

/// Determinant of a square matrix. The empty matrix has determinant 1.
pub fn det<S: Scalar>(m: &Matrix<S>) -> S {
    if S::EXACT {
        bareiss_det(m.clone())
    } else {
        pivoted_det(m.clone())
    }
}

fn bareiss_det<S: Scalar>(mut a: Matrix<S>) -> S {
    let n = a.len();
    if n == 0 {
        return S::one();
    }
    let mut negate = false;
    let mut prev = S::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return S::zero();
            };
            a.swap(k, i);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn pivoted_det<S: Scalar>(mut a: Matrix<S>) -> S {
    let n = a.len();
    let mut d = S::one();
    for k in 0..n {
        let (p, best) = (k..n)
            .map(|i| (i, a[i][k].modulus()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0.0 {
            return S::zero();
        }
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        let pivot = a[k][k].clone();
        d = d * pivot.clone();
        #[allow(clippy::needless_range_loop)]
        for i in k + 1..n {
            let f = a[i][k].clone() / pivot.clone();
            for j in k + 1..n {
                let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                a[i][j] = v;
            }
        }
    }
    d
}

/// Solve `m·x = rhs`. Returns `None` when the system is singular (exactly,
/// or below `tol` relative to the largest entry for floats).
pub fn solve<S: Scalar>(m: &Matrix<S>, rhs: &[S], tol: Tol) -> Option<Vec<S>> {
    let n = m.len();
    let threshold = tol.threshold(max_modulus(m));
    let mut a: Matrix<S> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for k in 0..n {
        let p = if S::EXACT {
            (k..n).find(|&i| !a[i][k].is_zero())?
        } else {
            (k..n).max_by(|&i, &j| a[i][k].modulus().total_cmp(&a[j][k].modulus()))?
        };
        if a[p][k].negligible(threshold) {
            return None;
        }
        a.swap(p, k);
        let pivot = a[k][k].clone();
        #[allow(clippy::needless_range_loop)]
        for i in k + 1..n {
            let f = a[i][k].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..=n {
                let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                a[i][j] = v;
            }
        }
    }
    let mut x = vec![S::zero(); n];
    for k in (0..n).rev() {
        let mut acc = a[k][n].clone();
        for j in k + 1..n {
            acc = acc - a[k][j].clone() * x[j].clone();
        }
        x[k] = acc / a[k][k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ExactComplex as Q, FloatComplex};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        rows.iter().map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect()
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &Matrix<Q>) -> Q {
        let n = m.len();
        if n == 0 {
            return Q::one();
        }
        (0..n).fold(Q::zero(), |acc, j| {
            let minor: Matrix<Q> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = m[0][j].clone() * cofactor_det(&minor);
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(&q(&[&[1, 1], &[1, 1]])), Q::zero());
        assert_eq!(det(&q(&[&[0, 1], &[1, 1]])), Q::from_i64(-1));
        assert_eq!(det(&q(&[&[0, 0, 1], &[0, 1, 1], &[1, 1, 1]])), Q::from_i64(-1));
        assert_eq!(det::<Q>(&vec![]), Q::one());
    }

    #[test]
    fn float_det_agrees() {
        let m: Matrix<FloatComplex> = vec![
            vec![FloatComplex::new(2.0, 0.0), FloatComplex::new(1.0, 1.0)],
            vec![FloatComplex::new(0.0, -1.0), FloatComplex::new(3.0, 0.0)],
        ];
        // 6 - (1+i)(-i) = 5 + i
        let d = det(&m);
        assert!((d.0 - num::complex::Complex64::new(5.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_solve_is_none() {
        assert!(solve(&q(&[&[1, 2], &[2, 4]]), &[Q::one(), Q::one()], Tol::default()).is_none());
        let x = solve(&q(&[&[0, 1], &[1, 0]]), &[Q::from_i64(3), Q::from_i64(4)], Tol::default()).unwrap();
        assert_eq!(x, vec![Q::from_i64(4), Q::from_i64(3)]);
    }

    fn matrix(n: usize) -> impl Strategy<Value = Matrix<Q>> {
        prop::collection::vec(prop::collection::vec((-4i64..=4, -3i64..=3), n), n).prop_map(|rows| {
            rows.into_iter()
                .map(|r| r.into_iter().map(|(a, b)| Q::gaussian(a, 1, b, 2)).collect())
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_matches_cofactor(m in (1usize..=5).prop_flat_map(matrix)) {
            prop_assert_eq!(det(&m), cofactor_det(&m));
        }

        #[test]
        fn solve_satisfies_system(m in (1usize..=4).prop_flat_map(matrix)) {
            let n = m.len();
            let rhs: Vec<Q> = (0..n).map(|i| Q::from_i64(i as i64 + 1)).collect();
            match solve(&m, &rhs, Tol::default()) {
                Some(x) => {
                    for i in 0..n {
                        let lhs = (0..n).fold(Q::zero(), |acc, j| acc + m[i][j].clone() * x[j].clone());
                        prop_assert_eq!(lhs, rhs[i].clone());
                    }
                }
                None => prop_assert!(det(&m).is_zero()),
            }
        }
    }
}
