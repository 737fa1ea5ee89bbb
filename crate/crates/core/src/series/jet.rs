use crate::error::{Error, Result};
use crate::scalar::{FloatComplex, Scalar, Tol};

use super::poly::Polynomial;

/// Taylor coefficients `a_0..a_K` of a function about 0.
///
/// All arithmetic truncates at the smaller of the operands' orders.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeriesJet<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> PowerSeriesJet<S> {
    /// Panics on an empty coefficient vector: a jet has order ≥ 0.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        PowerSeriesJet { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> S) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    /// Coefficients of `p` through `z^order`.
    pub fn from_polynomial(p: &Polynomial<S>, order: usize) -> Self {
        Self::from_fn(order, |v| p.coeff(v))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// `a_v`, with `a_v = 0` for negative `v`. Panics past the order.
    pub fn coeff(&self, v: i64) -> S {
        if v < 0 {
            return S::zero();
        }
        self.coeffs[v as usize].clone()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        Self::from_fn(k, |v| self.coeffs[v].clone() + other.coeffs[v].clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `self + d·direction`
    pub fn axpy(&self, d: &S, direction: &Self) -> Self {
        self.add(&direction.scale(d))
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        Self::from_fn(k, |n| {
            (0..=n).fold(S::zero(), |acc, i| {
                acc + self.coeffs[i].clone() * other.coeffs[n - i].clone()
            })
        })
    }

    /// Truncated quotient; the divisor's constant term must be non-negligible.
    pub fn div(&self, other: &Self, tol: Tol) -> Result<Self> {
        let k = self.order().min(other.order());
        let b0 = other.coeffs[0].clone();
        let scale = other.coeffs.iter().map(Scalar::modulus).fold(0.0, f64::max);
        if b0.negligible(tol.threshold(scale)) {
            return Err(Error::DenominatorVanishesAtOrigin);
        }
        let mut out: Vec<S> = Vec::with_capacity(k + 1);
        for n in 0..=k {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                acc = acc - other.coeffs[j].clone() * out[n - j].clone();
            }
            out.push(acc / b0.clone());
        }
        Ok(Self::new(out))
    }

    /// `S_k(z) = Σ_{v≤k} a_v z^v`, the zero polynomial for negative `k`.
    pub fn partial_sum(&self, k: i64) -> Result<Polynomial<S>> {
        if k < 0 {
            return Ok(Polynomial::zero());
        }
        let k = k as usize;
        if k > self.order() {
            return Err(Error::TruncationTooShort { needed: k, available: self.order() });
        }
        Ok(Polynomial::new(self.coeffs[..=k].to_vec()))
    }

    /// Fails with `TruncationTooShort` unless `order() >= needed`.
    pub fn require_order(&self, needed: usize) -> Result<()> {
        if self.order() < needed {
            return Err(Error::TruncationTooShort { needed, available: self.order() });
        }
        Ok(())
    }

    pub fn to_float(&self) -> PowerSeriesJet<FloatComplex> {
        PowerSeriesJet::new(self.coeffs.iter().map(|a| FloatComplex(a.to_c64())).collect())
    }
}
