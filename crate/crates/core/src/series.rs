//! Truncated power series in one variable with rational coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `c_0 + c_1 t + … + c_D t^D`, always of length `D + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(max_degree: usize) -> Self {
        TruncatedSeries { coefficients: vec![Rational::zero(); max_degree + 1] }
    }

    pub fn one(max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.coefficients[0] = Rational::one();
        s
    }

    /// Truncates or pads a polynomial to degree `max_degree`.
    pub fn from_polynomial(poly: &[Rational], max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        for (k, c) in poly.iter().enumerate().take(max_degree + 1) {
            s.coefficients[k] = c.clone();
        }
        s
    }

    pub fn from_coefficients(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidInput("a series needs at least the constant term".into()));
        }
        Ok(TruncatedSeries { coefficients })
    }

    /// Expansion of `1 / poly`; requires a nonzero constant term.
    pub fn inverse_of_polynomial(poly: &[Rational], max_degree: usize) -> Result<Self> {
        Self::from_polynomial(poly, max_degree).inverse()
    }

    pub fn max_degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, d: usize) -> &Rational {
        &self.coefficients[d]
    }

    pub fn set(&mut self, d: usize, c: Rational) {
        self.coefficients[d] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.max_degree().min(other.max_degree());
        TruncatedSeries { coefficients: (0..=d).map(|k| &self.coefficients[k] + &other.coefficients[k]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.max_degree().min(other.max_degree());
        TruncatedSeries { coefficients: (0..=d).map(|k| &self.coefficients[k] - &other.coefficients[k]).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coefficients: self.coefficients.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.max_degree().min(other.max_degree());
        let mut out = Self::zero(d);
        for (i, a) in self.coefficients.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out.coefficients[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coefficients[0];
        if c0.is_zero() {
            return Err(Error::InvalidInput("series with zero constant term is not invertible".into()));
        }
        let inv0 = c0.recip();
        let d = self.max_degree();
        let mut out = Self::zero(d);
        out.coefficients[0] = inv0.clone();
        for k in 1..=d {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coefficients[j];
                if !a.is_zero() {
                    acc += a * &out.coefficients[k - j];
                }
            }
            out.coefficients[k] = -acc * &inv0;
        }
        Ok(out)
    }

    /// Substitutes `t -> t^k`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let d = self.max_degree();
        let mut out = Self::zero(d);
        for (i, c) in self.coefficients.iter().enumerate() {
            if i * k <= d {
                out.coefficients[i * k] = c.clone();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn geometric_inverse() {
        let s = TruncatedSeries::inverse_of_polynomial(&[int(1), int(-2)], 4).unwrap();
        assert_eq!(s.coefficients(), &[int(1), int(2), int(4), int(8), int(16)]);
        let back = s.mul(&TruncatedSeries::from_polynomial(&[int(1), int(-2)], 4));
        assert_eq!(back, TruncatedSeries::one(4));
    }

    #[test]
    fn zero_constant_is_rejected() {
        assert!(TruncatedSeries::from_polynomial(&[int(0), int(1)], 3).inverse().is_err());
    }
}
