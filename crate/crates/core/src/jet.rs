//! Univariate truncated power series in a local source coordinate `x`.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{mul, Field};

/// A polynomial in `x` with every term of degree above `order` discarded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesJet<T> {
    coeffs: Vec<T>,
}

impl<T: Field> SeriesJet<T> {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, T::one())
    }

    /// `coeff · x^degree`, which is zero when `degree > order`.
    pub fn monomial(order: usize, degree: usize, coeff: T) -> Self {
        let mut j = Self::zero(order);
        if degree <= order {
            j.coeffs[degree] = coeff;
        }
        j
    }

    /// Truncates or zero-pads `coeffs` to `order`.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<T>) -> Self {
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^degree` (zero past the order).
    pub fn coeff(&self, degree: usize) -> T {
        self.coeffs.get(degree).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Smallest degree with a nonzero coefficient; `None` for the zero jet.
    pub fn order_of_vanishing(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| mul(c, k)).collect(),
        }
    }

    /// Multiplication by `x^shift`, truncated.
    pub fn shift(&self, shift: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for (d, c) in self.coeffs.iter().enumerate() {
            if d + shift > order {
                break;
            }
            out.coeffs[d + shift] = c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(self.mul_truncated(other))
    }

    fn mul_truncated(&self, other: &Self) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &mul(a, b);
                }
            }
        }
        out
    }

    /// `self^k`, with `self^0 = 1`.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_truncated(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_truncated(&base);
            }
        }
        result
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(self + other)
    }
}

impl<T: Field> Add for &SeriesJet<T> {
    type Output = SeriesJet<T>;

    /// Panics on order mismatch; see [`SeriesJet::try_add`].
    fn add(self, other: Self) -> SeriesJet<T> {
        assert_eq!(self.order(), other.order(), "jet order mismatch");
        SeriesJet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Field> Sub for &SeriesJet<T> {
    type Output = SeriesJet<T>;

    fn sub(self, other: Self) -> SeriesJet<T> {
        assert_eq!(self.order(), other.order(), "jet order mismatch");
        SeriesJet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Field> Neg for &SeriesJet<T> {
    type Output = SeriesJet<T>;

    fn neg(self) -> SeriesJet<T> {
        SeriesJet {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}
