//! Dense univariate polynomials with rational coefficients.
//!
//! Used both for polynomials in `t` (numerators of t-rationals) and for
//! polynomials in the marker variable `u` (patchwork tables). Coefficients
//! are stored lowest degree first with no trailing zeros, so the zero
//! polynomial is the empty vector and structural equality is value equality.

use crate::arith::{rat_int, rat_to_string, BigRat};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(c: BigRat, d: usize) -> Self {
        let mut v = vec![BigRat::zero(); d + 1];
        v[d] = c;
        Self::from_coeffs(v)
    }

    /// The polynomial `1 - x`.
    pub fn one_minus_x() -> Self {
        Self::from_coeffs(vec![BigRat::one(), -BigRat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| rat_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `x^d`.
    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRat::zero(); d];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by `1 - x` when the division is exact.
    pub fn div_one_minus_x(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Synthetic division by (x - 1), then flip the sign.
        let n = self.coeffs.len();
        let mut q = vec![BigRat::zero(); n - 1];
        let mut carry = BigRat::zero();
        for i in (1..n).rev() {
            carry = &carry + &self.coeffs[i];
            q[i - 1] = carry.clone();
        }
        if !(carry + &self.coeffs[0]).is_zero() {
            return None;
        }
        Some(Self::from_coeffs(q.into_iter().map(|c| -c).collect()))
    }

    pub fn mul_one_minus_x_pow(&self, e: usize) -> Self {
        let mut acc = self.clone();
        for _ in 0..e {
            acc = &acc * &Self::one_minus_x();
        }
        acc
    }

    /// Keeps terms of degree at most `d`.
    pub fn truncate(&self, d: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(d + 1).cloned().collect())
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = rat_to_string(c);
            parts.push(match i {
                0 => cs,
                1 => format!("({cs})*{var}"),
                _ => format!("({cs})*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn division_by_one_minus_x() {
        let p = Poly::from_ints(&[3, -1, -2]); // (1 - x)(3 + 2x)
        assert_eq!(p.div_one_minus_x(), Some(Poly::from_ints(&[3, 2])));
        assert_eq!(Poly::from_ints(&[1, 1]).div_one_minus_x(), None);
        assert_eq!(p.eval(&rat(1, 1)), rat(0, 1));
    }

    #[test]
    fn arithmetic_and_trim() {
        let a = Poly::from_ints(&[1, 2]);
        let b = Poly::from_ints(&[-1, -2]);
        assert!((&a + &b).is_zero());
        assert_eq!((&a * &a).coeffs().len(), 3);
        assert_eq!(a.pow(3).eval(&rat(1, 1)), rat(27, 1));
        assert_eq!(Poly::from_ints(&[0, 0, 3]).derivative(), Poly::from_ints(&[0, 6]));
    }
}
