//! Padé approximants `[p/q]_f` from Taylor data.
//!
//! Two independent constructions are provided: the Jacobi determinant
//! formula ([`pade_jacobi`]) and the defining Toeplitz system
//! ([`pade_linsolve`]). Over exact scalars they agree coefficient for
//! coefficient whenever the Hankel determinant is nonzero.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{Scalar, Tol};
use crate::series::{Polynomial, PowerSeriesJet, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PadeIndex {
    pub p: usize,
    pub q: usize,
}

impl PadeIndex {
    pub fn new(p: usize, q: usize) -> Self {
        PadeIndex { p, q }
    }

    /// Highest Taylor index the approximant must match.
    pub fn contact_order(self) -> usize {
        self.p + self.q
    }
}

impl fmt::Display for PadeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}/{}]", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PadeResult<S> {
    pub index: PadeIndex,
    /// Normalized so that `den(0) = 1`; GCD-reduced over exact scalars.
    pub approximant: RationalFunction<S>,
    /// Determinant of the Hankel block (1 when `q = 0`).
    pub hankel_det: S,
    /// Taylor coefficients agree through order `p + q`.
    pub contact_verified: bool,
}

/// Entry `(i, j)` is `a_{p-q+1+i+j}`, with `a_v = 0` for `v < 0`.
fn hankel_matrix<S: Scalar>(jet: &PowerSeriesJet<S>, idx: PadeIndex) -> Matrix<S> {
    let base = idx.p as i64 - idx.q as i64 + 1;
    (0..idx.q)
        .map(|i| (0..idx.q).map(|j| jet.coeff(base + (i + j) as i64)).collect())
        .collect()
}

/// Largest `|a_v|` entering the Hankel block.
fn hankel_scale<S: Scalar>(jet: &PowerSeriesJet<S>, idx: PadeIndex) -> f64 {
    let lo = (idx.p as i64 - idx.q as i64 + 1).max(0) as usize;
    let hi = idx.p + idx.q - 1;
    jet.coeffs()[lo..=hi].iter().map(Scalar::modulus).fold(0.0, f64::max)
}

/// The `q×q` Hankel determinant that decides membership in `D_{p,q}`.
pub fn hankel_det<S: Scalar>(jet: &PowerSeriesJet<S>, idx: PadeIndex) -> Result<S> {
    if idx.q == 0 {
        return Err(Error::QZero);
    }
    jet.require_order(idx.p + idx.q - 1)?;
    Ok(linalg::det(&hankel_matrix(jet, idx)))
}

fn member_det<S: Scalar>(jet: &PowerSeriesJet<S>, idx: PadeIndex, tol: Tol) -> Result<(bool, S)> {
    let det = hankel_det(jet, idx)?;
    let threshold = tol.threshold(hankel_scale(jet, idx).powi(idx.q as i32));
    Ok((!det.negligible(threshold), det))
}

/// `f ∈ D_{p,q}`: always true for `q = 0`, otherwise the Hankel determinant is nonzero.
pub fn in_dpq<S: Scalar>(jet: &PowerSeriesJet<S>, idx: PadeIndex, tol: Tol) -> Result<bool> {
    if idx.q == 0 {
        jet.require_order(idx.p)?;
        return Ok(true);
    }
    Ok(member_det(jet, idx, tol)?.0)
}

fn require_member<S: Scalar>(jet: &PowerSeriesJet<S>, idx: PadeIndex, tol: Tol) -> Result<S> {
    let (member, det) = member_det(jet, idx, tol)?;
    if !member {
        return Err(Error::NotInDpq { p: idx.p, q: idx.q, degenerate: !det.is_zero() });
    }
    Ok(det)
}

fn finish<S: Scalar>(
    jet: &PowerSeriesJet<S>,
    idx: PadeIndex,
    approximant: RationalFunction<S>,
    hankel_det: S,
    tol: Tol,
) -> PadeResult<S> {
    let mut result = PadeResult { index: idx, approximant: approximant.reduced(), hankel_det, contact_verified: false };
    result.contact_verified = verify_contact(jet, &result, tol);
    result
}

fn partial_sum_result<S: Scalar>(jet: &PowerSeriesJet<S>, idx: PadeIndex, tol: Tol) -> Result<PadeResult<S>> {
    let s_p = jet.partial_sum(idx.p as i64)?;
    Ok(finish(jet, idx, RationalFunction::polynomial(s_p), S::one(), tol))
}

/// `[p/q]_f` by the Jacobi determinant formula.
///
/// Both determinants are expanded along their symbolic first row: with
/// `M_j` the minor of the coefficient rows without column `j`,
/// `den = Σ (-1)^j M_j z^{q-j}` and `num = Σ (-1)^j M_j z^{q-j} S_{p-q+j}`.
pub fn pade_jacobi<S: Scalar>(jet: &PowerSeriesJet<S>, idx: PadeIndex, tol: Tol) -> Result<PadeResult<S>> {
    if idx.q == 0 {
        return partial_sum_result(jet, idx, tol);
    }
    jet.require_order(idx.contact_order())?;
    let det = require_member(jet, idx, tol)?;

    let (p, q) = (idx.p as i64, idx.q as i64);
    let rows: Matrix<S> = (1..=q)
        .map(|i| (0..=q).map(|j| jet.coeff(p - q + i + j)).collect())
        .collect();

    let mut num = Polynomial::zero();
    let mut den = Polynomial::zero();
    for j in 0..=idx.q {
        let minor: Matrix<S> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let mut m = linalg::det(&minor);
        if j % 2 == 1 {
            m = -m;
        }
        if m.is_zero() {
            continue;
        }
        let shift = idx.q - j;
        den = &den + &Polynomial::monomial(m.clone(), shift);
        let s = jet.partial_sum(p - q + j as i64)?;
        num = &num + &s.shift_up(shift).scale(&m);
    }

    let d0 = den.coeff(0);
    let d0_threshold = tol.threshold(den.max_modulus());
    if d0.negligible(d0_threshold) {
        return Err(Error::DegenerateNormalization);
    }
    let approximant = RationalFunction::new(num, den)?;
    Ok(finish(jet, idx, approximant, det, tol))
}

/// `[p/q]_f` from the Toeplitz system `Σ_{j=0..q} d_j a_{p+i-j} = 0`, `i = 1..q`, `d_0 = 1`.
pub fn pade_linsolve<S: Scalar>(jet: &PowerSeriesJet<S>, idx: PadeIndex, tol: Tol) -> Result<PadeResult<S>> {
    if idx.q == 0 {
        return partial_sum_result(jet, idx, tol);
    }
    jet.require_order(idx.contact_order())?;
    let (p, q) = (idx.p as i64, idx.q as i64);
    let toeplitz: Matrix<S> = (1..=q).map(|i| (1..=q).map(|j| jet.coeff(p + i - j)).collect()).collect();
    let rhs: Vec<S> = (1..=q).map(|i| -jet.coeff(p + i)).collect();
    let solution = linalg::solve(&toeplitz, &rhs, tol)
        .ok_or(Error::NotInDpq { p: idx.p, q: idx.q, degenerate: !S::EXACT })?;

    let mut d = vec![S::one()];
    d.extend(solution);
    let num: Vec<S> = (0..=idx.p)
        .map(|v| {
            (0..=v.min(idx.q)).fold(S::zero(), |acc, j| acc + d[j].clone() * jet.coeff((v - j) as i64))
        })
        .collect();
    let approximant = RationalFunction::new(Polynomial::new(num), Polynomial::new(d))?;
    let det = hankel_det(jet, idx)?;
    Ok(finish(jet, idx, approximant, det, tol))
}

/// Check `b_v = a_v` for `v = 0..=p+q`, where `b` is the approximant's expansion.
pub fn verify_contact<S: Scalar>(jet: &PowerSeriesJet<S>, result: &PadeResult<S>, tol: Tol) -> bool {
    let k = result.index.contact_order();
    if jet.order() < k {
        return false;
    }
    let Ok(expansion) = result.approximant.taylor(k, tol) else {
        return false;
    };
    let scale = jet.coeffs()[..=k].iter().map(Scalar::modulus).fold(0.0, f64::max);
    let threshold = tol.threshold(scale);
    expansion
        .coeffs()
        .iter()
        .zip(jet.coeffs())
        .all(|(b, a)| if S::EXACT { a == b } else { (b.clone() - a.clone()).modulus() <= threshold })
}

/// First candidate `d` with `base + d·direction ∈ D_{p,q}`.
///
/// `direction` must vanish below index `p` and be nonzero at `p`; then the
/// Hankel determinant is a degree-`q` polynomial in `d`, so any `q + 1`
/// distinct candidates contain an admissible one.
pub fn admissible_d<S: Scalar>(
    base: &PowerSeriesJet<S>,
    direction: &PowerSeriesJet<S>,
    idx: PadeIndex,
    candidates: &[S],
    tol: Tol,
) -> Result<S> {
    if candidates.is_empty() {
        return Err(Error::InvalidArgument("no candidates supplied".into()));
    }
    direction.require_order(idx.p)?;
    if direction.coeffs()[..idx.p].iter().any(|c| !c.is_zero()) || direction.coeffs()[idx.p].is_zero() {
        return Err(Error::InvalidArgument(
            "direction must vanish below index p and be nonzero at p".into(),
        ));
    }
    for d in candidates {
        if in_dpq(&base.axpy(d, direction), idx, tol)? {
            return Ok(d.clone());
        }
    }
    Err(Error::NoAdmissibleD { tried: candidates.len() })
}

/// `1, 1/2, …, 1/2^q` scaled by `bound`.
pub fn default_d_candidates<S: Scalar>(bound: &S, q: usize) -> Vec<S> {
    let mut c = bound.clone();
    let half = S::from_ratio(1, 2);
    (0..=q)
        .map(|_| {
            let out = c.clone();
            c = c.clone() * half.clone();
            out
        })
        .collect()
}
