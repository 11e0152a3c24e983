//! Dense univariate polynomials and truncated power series with exact
//! coefficients.
//!
//! Everything is generic over a commutative coefficient ring; the curve
//! analysis instantiates with `ℚ` (arbitrary-precision rationals) and,
//! for the hyperelliptic decision procedure, with polynomials in unknown
//! coefficients. Series are carried modulo `t^N` for an explicit order
//! `N`; valuations read off a truncated series are exact as long as the
//! caller keeps `N` beyond the relevant conductor.

use num_traits::{One, Zero};

/// Commutative ring operations needed by the polynomial and series types.
pub trait Ring:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + Zero
        + One
        + std::ops::Neg<Output = Self>
        + std::ops::Sub<Output = Self>
{
}

/// Rings with exact division, used for gcds and division with remainder.
pub trait Field: Ring + std::ops::Div<Output = Self> {}

impl<T> Field for T where T: Ring + std::ops::Div<Output = Self> {}

/// Dense polynomial with no trailing zero coefficients (empty = 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at t = 0; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Truncation to a series modulo `t^order`.
    pub fn series(&self, order: usize) -> TruncatedSeries<T> {
        TruncatedSeries::new(
            (0..order).map(|k| self.coeff(k)).collect(),
        )
    }
}

impl<T: Field> Poly<T> {
    /// Division with remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        if self.degree().map_or(true, |d| d < dd) {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![T::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            let q = c / lead.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - q.clone() * dc.clone();
            }
            quo[k] = q;
        }
        rem.truncate(dd);
        (Poly::new(quo), Poly::new(rem))
    }

    /// Monic greatest common divisor (1 for coprime inputs).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            None => a,
            Some(l) => {
                let inv = T::one() / l.clone();
                a.scale(&inv)
            }
        }
    }
}

/// Power series modulo `t^N`, with `N = coeffs.len()` fixed per value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> TruncatedSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![T::zero(); order] }
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Index of the first nonzero coefficient; `None` when the series
    /// vanishes to the truncation order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order(), other.order());
        TruncatedSeries::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order(), other.order());
        TruncatedSeries::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order(), other.order());
        let n = self.order();
        let mut out = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries::new(out)
    }

    /// The same series carried at a smaller truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        debug_assert!(order <= self.order());
        TruncatedSeries::new(self.coeffs[..order].to_vec())
    }

    /// Multiplication by `t^k` (coefficients shifted, order preserved).
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![T::zero(); n];
        for i in 0..n.saturating_sub(k) {
            out[i + k] = self.coeffs[i].clone();
        }
        TruncatedSeries::new(out)
    }

    /// Inverse of a series whose constant term is exactly 1, by the usual
    /// recurrence `b_n = −Σ_{k≥1} a_k b_{n−k}`; needs no division, so it
    /// works over any ring.
    pub fn invert_normalized(&self) -> Self {
        assert!(self.coeff(0).is_one(), "series inversion requires constant term 1");
        let n = self.order();
        let mut b = vec![T::zero(); n];
        if n == 0 {
            return TruncatedSeries::new(b);
        }
        b[0] = T::one();
        for m in 1..n {
            let mut acc = T::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc = acc + self.coeffs[k].clone() * b[m - k].clone();
                }
            }
            b[m] = -acc;
        }
        TruncatedSeries::new(b)
    }
}

impl<T: Field> TruncatedSeries<T> {
    /// Inverse of a series with any nonzero constant term.
    pub fn invert(&self) -> Self {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "series inversion requires a unit constant term");
        let inv = T::one() / c0;
        self.scale(&inv).invert_normalized().scale(&inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    fn poly(cs: &[i64]) -> Poly<Rat> {
        Poly::new(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn polynomial_arithmetic() {
        let f = poly(&[1, 0, 2]); // 1 + 2t²
        let g = poly(&[0, 3]); // 3t
        assert_eq!(f.mul(&g), poly(&[0, 3, 0, 6]));
        assert_eq!(f.add(&g), poly(&[1, 3, 2]));
        assert_eq!(f.sub(&f), Poly::zero());
        assert_eq!(f.degree(), Some(2));
        assert_eq!(g.valuation(), Some(1));
        assert_eq!(f.eval(&q(2)), q(9));
        assert_eq!(f.shift(2), poly(&[0, 0, 1, 0, 2]));
        assert_eq!(poly(&[0, 0]), Poly::zero());
    }

    #[test]
    fn division_and_gcd() {
        // (t − 1)(t − 2) = t² − 3t + 2 divided by (t − 1).
        let f = poly(&[2, -3, 1]);
        let d = poly(&[-1, 1]);
        let (quo, rem) = f.div_rem(&d);
        assert_eq!(quo, poly(&[-2, 1]));
        assert!(rem.is_zero());

        let (quo, rem) = poly(&[1, 0, 0, 1]).div_rem(&poly(&[1, 1]));
        assert_eq!(quo, poly(&[1, -1, 1]));
        assert!(rem.is_zero());

        // gcd((t−1)(t−2), (t−1)(t−3)) = t − 1, monic.
        let a = poly(&[2, -3, 1]);
        let b = poly(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
        assert_eq!(a.gcd(&poly(&[1])), Poly::one());
    }

    #[test]
    fn series_inversion() {
        let h = poly(&[1, 0, 0, 1]); // 1 + t³
        let inv = h.series(12).invert();
        assert_eq!(h.series(12).mul(&inv), Poly::one().series(12));
        // 1/(1+t³) = 1 − t³ + t⁶ − t⁹ + …
        assert_eq!(inv.coeff(3), q(-1));
        assert_eq!(inv.coeff(6), q(1));
        assert_eq!(inv.coeff(7), q(0));

        let g = poly(&[2, 1]); // 2 + t, non-normalized constant term
        let inv = g.series(8).invert();
        assert_eq!(g.series(8).mul(&inv), Poly::one().series(8));
    }

    #[test]
    fn series_valuation_and_shift() {
        let u = poly(&[0, 0, 1, 0, -1]).series(10); // t² − t⁴
        assert_eq!(u.valuation(), Some(2));
        assert_eq!(u.shift(3).valuation(), Some(5));
        assert!(TruncatedSeries::<Rat>::zero(5).is_zero());
        let tail = poly(&[0, 0, 0, 0, 0, 0, 7]).series(5);
        assert!(tail.is_zero());
    }
}
