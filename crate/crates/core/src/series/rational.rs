use crate::error::{Error, Result};
use crate::scalar::{FloatComplex, Scalar, Tol};

use super::jet::PowerSeriesJet;
use super::poly::Polynomial;

/// `num / den` with a nonzero denominator.
///
/// Constructors normalize so that `den(0) = 1` whenever `den(0) ≠ 0`; over
/// exact scalars [`RationalFunction::reduced`] also cancels the polynomial GCD.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<S> {
    num: Polynomial<S>,
    den: Polynomial<S>,
}

impl<S: Scalar> RationalFunction<S> {
    pub fn new(num: Polynomial<S>, den: Polynomial<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(RationalFunction { num, den }.normalized())
    }

    /// Build without normalizing. The denominator must be nonzero.
    pub(crate) fn raw(num: Polynomial<S>, den: Polynomial<S>) -> Self {
        debug_assert!(!den.is_zero());
        RationalFunction { num, den }
    }

    pub fn polynomial(p: Polynomial<S>) -> Self {
        RationalFunction { num: p, den: Polynomial::constant(S::one()) }
    }

    pub fn num(&self) -> &Polynomial<S> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<S> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Divide through by `den(0)` when it is nonzero.
    pub fn normalized(self) -> Self {
        let d0 = self.den.coeff(0);
        if d0.is_zero() || d0 == S::one() {
            return self;
        }
        let inv = S::one() / d0;
        RationalFunction { num: self.num.scale(&inv), den: self.den.scale(&inv) }
    }

    /// Cancel common factors (exact scalars only) and normalize.
    pub fn reduced(&self) -> Self {
        if !S::EXACT || self.num.is_zero() {
            let den = if self.num.is_zero() { Polynomial::constant(S::one()) } else { self.den.clone() };
            return RationalFunction { num: self.num.clone(), den }.normalized();
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) == 0 {
            return self.clone().normalized();
        }
        let (num, _) = self.num.div_rem(&g).expect("gcd is nonzero");
        let (den, _) = self.den.div_rem(&g).expect("gcd is nonzero");
        RationalFunction { num, den }.normalized()
    }

    pub fn eval(&self, z: &S) -> Result<S> {
        Ok(self.eval_jet(z, 0, Tol::default())?.remove(0))
    }

    /// `(f(z0), f'(z0), …, f^(order)(z0))` by quotient of jets shifted to `z0`.
    pub fn eval_jet(&self, z0: &S, order: usize, tol: Tol) -> Result<Vec<S>> {
        let den_s = self.den.taylor_shift(z0);
        let num_s = self.num.taylor_shift(z0);
        let den_jet = PowerSeriesJet::from_polynomial(&den_s, order);
        let num_jet = PowerSeriesJet::from_polynomial(&num_s, order);
        let quotient = num_jet.div(&den_jet, tol).map_err(|_| Error::PoleAtSample { point: z0.to_c64() })?;
        let mut fact = S::one();
        Ok(quotient
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact = fact.clone() * S::from_i64(k as i64);
                }
                c.clone() * fact.clone()
            })
            .collect())
    }

    /// Maclaurin coefficients `b_0..b_order`.
    pub fn taylor(&self, order: usize, tol: Tol) -> Result<PowerSeriesJet<S>> {
        let num = PowerSeriesJet::from_polynomial(&self.num, order);
        let den = PowerSeriesJet::from_polynomial(&self.den, order);
        num.div(&den, tol)
    }

    /// `self - other`, reduced over exact scalars.
    pub fn sub(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RationalFunction { num, den }.reduced()
    }

    /// `self - other` without GCD reduction.
    pub(crate) fn sub_unreduced(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RationalFunction { num, den }.normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RationalFunction { num, den }.reduced()
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction { num: &self.num * &other.num, den: &self.den * &other.den }.reduced()
    }

    pub fn to_float(&self) -> RationalFunction<FloatComplex> {
        RationalFunction { num: self.num.to_float(), den: self.den.to_float() }
    }

    /// True when the function is identically zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<S: Scalar> From<Polynomial<S>> for RationalFunction<S> {
    fn from(p: Polynomial<S>) -> Self {
        Self::polynomial(p)
    }
}
