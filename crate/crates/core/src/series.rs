//! Dense truncated power series `a_0 + a_1 x + ... + a_N x^N`.
//!
//! The coefficient type is generic; the crate instantiates it with exact
//! rationals (see [`crate::Series`]), which keeps coefficient comparisons and
//! therefore [`TruncatedSeries::dominates`] decidable.

use std::fmt;

use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<T> {
    // invariant: non-empty, len == order + 1
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * x^power`, or zero if the power is beyond the order.
    pub fn monomial(c: T, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// The polynomial with the given coefficients, zero-filled or truncated
    /// to `order`.
    pub fn poly<I: IntoIterator<Item = T>>(coeffs: I, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// `sum_k scale^k / k! x^k`.
    pub fn exp_series(scale: T, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = T::one();
        coeffs.push(term.clone());
        for k in 1..=order {
            term = term * scale.clone() / from_usize::<T>(k);
            coeffs.push(term.clone());
        }
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// The coefficient of `x^n`.
    pub fn coefficient(&self, n: usize) -> Result<T> {
        self.coeffs.get(n).cloned().ok_or(Error::BeyondOrder {
            power: n,
            order: self.order(),
        })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// Multiplication by `x^k`, dropping what falls past the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for i in k..=order {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Division by `1 - x`: each coefficient becomes the sum of those up to it.
    pub fn prefix_sums(&self) -> Self {
        let mut acc = T::zero();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                acc = acc.clone() + c.clone();
                acc.clone()
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse through the truncation order.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order();
        let mut inv = Self::zero(order);
        inv.coeffs[0] = T::one() / a0.clone();
        for k in 1..=order {
            let mut acc = T::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc = acc + a.clone() * inv.coeffs[k - i].clone();
                }
            }
            inv.coeffs[k] = -(acc / a0.clone());
        }
        Ok(inv)
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn int_power(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Coefficientwise `self >= other` at every power through the order.
    pub fn dominates(&self, other: &Self) -> Result<bool> {
        self.check_order(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b))
    }

    /// First power where dominance fails, if any.
    pub fn dominance_failure(&self, other: &Self) -> Result<Option<usize>> {
        self.check_order(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a < b))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|a| *a >= T::zero())
    }
}

fn from_usize<T: Scalar>(k: usize) -> T {
    T::from_usize(k).expect("scalar type cannot represent a small integer")
}

impl<T: Scalar + fmt::Display> fmt::Display for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
