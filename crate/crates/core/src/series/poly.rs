use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{FloatComplex, Scalar};

/// Dense univariate polynomial, coefficient `v` multiplies `z^v`.
///
/// Trailing zero coefficients are never stored, so `coeffs().len() - 1` is the
/// degree. For float scalars only bitwise zeros are trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c·z^k`
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `z^v`, zero past the degree.
    pub fn coeff(&self, v: usize) -> S {
        self.coeffs.get(v).cloned().unwrap_or_else(S::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, a| acc * z.clone() + a.clone())
    }

    /// The `l`-th formal derivative.
    pub fn derivative(&self, l: usize) -> Self {
        if l == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(l)
            .map(|(v, a)| {
                let falling = (0..l).fold(S::one(), |acc, i| acc * S::from_i64((v - i) as i64));
                a.clone() * falling
            })
            .collect();
        Self::new(coeffs)
    }

    /// Coefficients of `p(z0 + t)` in powers of `t`.
    pub fn taylor_shift(&self, z0: &S) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division by (t - z0)
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let carry = c[j + 1].clone() * z0.clone();
                c[j] = c[j].clone() + carry;
            }
        }
        Self::new(c)
    }

    /// Euclidean division; `None` if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let t = rem[k + dd].clone() / lead.clone();
            if !t.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - t.clone() * b.clone();
                }
            }
            rem[k + dd] = S::zero();
            quot[k] = t;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = S::one() / l.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor. Only meaningful over exact scalars.
    pub fn gcd(&self, other: &Self) -> Self {
        if modular::coprime(self, other) {
            return Self::constant(S::one());
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn to_float(&self) -> Polynomial<FloatComplex> {
        Polynomial::new(self.coeffs.iter().map(|a| FloatComplex(a.to_c64())).collect())
    }

    /// Max coefficient modulus (0 for the zero polynomial).
    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }
}

/// Coprimality certificates from images in `GF(P)`, with `i` sent to a square root of -1.
mod modular {
    use num::{BigInt, Integer, ToPrimitive};

    use super::Polynomial;
    use crate::scalar::Scalar;

    const P: u64 = 1_000_000_009;

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    fn sqrt_minus_one() -> u64 {
        (2..)
            .map(|g| pow(g, (P - 1) / 4))
            .find(|&r| mul(r, r) == P - 1)
            .expect("P = 1 mod 4")
    }

    fn reduce(n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
    }

    fn image<S: Scalar>(p: &Polynomial<S>, i: u64) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(p.coeffs.len());
        for c in &p.coeffs {
            let e = c.to_exact()?;
            let part = |r: &num::BigRational| {
                let d = reduce(r.denom());
                (d != 0).then(|| mul(reduce(r.numer()), inv(d)))
            };
            out.push((part(&e.re)? + mul(i, part(&e.im)?)) % P);
        }
        (*out.last()? != 0).then_some(out)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// `true` only when `a` and `b` are certainly coprime; `false` is inconclusive.
    pub(super) fn coprime<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>) -> bool {
        if !S::EXACT || a.is_zero() || b.is_zero() {
            return false;
        }
        let i = sqrt_minus_one();
        let (Some(mut x), Some(mut y)) = (image(a, i), image(b, i)) else {
            return false;
        };
        while !y.is_empty() {
            let lead = inv(*y.last().expect("nonempty"));
            while x.len() >= y.len() {
                let t = mul(*x.last().expect("nonempty"), lead);
                let shift = x.len() - y.len();
                for (j, &c) in y.iter().enumerate() {
                    x[shift + j] = (x[shift + j] + P - mul(t, c)) % P;
                }
                trim(&mut x);
            }
            std::mem::swap(&mut x, &mut y);
        }
        x.len() == 1
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: Self) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|v| self.coeff(v) + rhs.coeff(v)).collect())
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: Self) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|v| self.coeff(v) - rhs.coeff(v)).collect())
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: Self) -> Polynomial<S> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }
}
