//! Truncated power series with exact rational coefficients.
//!
//! A series of order `N` stores the coefficients of `z^0..=z^N`. Binary
//! operations truncate to the smaller order of their operands, so a result
//! never claims more precision than its inputs. Everything here is exact.
//!
//! The tree function `T(z) = z e^{T(z)}` and the unicycle series derived from
//! it are built here because almost every other module composes with them.

use crate::arith::{as_integer, binomial, factorials, pow_int, rat_int, BigRat};
use crate::error::{Error, Result};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<BigRat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpLog {
    Exp,
    Log,
}

impl ExactSeries {
    pub fn zero(order: usize) -> Self {
        ExactSeries { coeffs: vec![BigRat::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRat::one(), order)
    }

    pub fn constant(c: BigRat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z` at the given order.
    pub fn variable(order: usize) -> Self {
        Self::monomial(BigRat::one(), 1, order)
    }

    pub fn monomial(c: BigRat, d: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if d <= order {
            s.coeffs[d] = c;
        }
        s
    }

    /// Builds a series from coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        ExactSeries { coeffs }
    }

    /// A polynomial viewed as a series of the given order.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Self::from_coeffs((0..=order).map(|i| p.coeff(i)).collect())
    }

    /// `sum_n a_n z^n / n!` for integer sequences `a`.
    pub fn from_egf_counts(counts: &[BigInt]) -> Self {
        let f = factorials(counts.len());
        Self::from_coeffs(
            counts
                .iter()
                .enumerate()
                .map(|(n, c)| BigRat::new(c.clone(), f[n].clone()))
                .collect(),
        )
    }

    /// `e^z` at the given order.
    pub fn exp_z(order: usize) -> Self {
        let f = factorials(order);
        Self::from_coeffs(f.into_iter().map(|d| BigRat::new(BigInt::one(), d)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Coefficient of `z^n`. Panics when `n` exceeds the order.
    pub fn coeff(&self, n: usize) -> &BigRat {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order of a series");
        Self::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_coeffs(
            (1..=self.order())
                .map(|i| &self.coeffs[i] * rat_int(i as i64))
                .collect(),
        )
    }

    /// `n! [z^n]` for every n; fails if any of them is not an integer.
    pub fn egf_counts(&self) -> Result<Vec<BigInt>> {
        let f = factorials(self.order());
        self.coeffs
            .iter()
            .zip(f)
            .map(|(c, fac)| {
                let v = c * BigRat::from_integer(fac);
                as_integer(&v).ok_or_else(|| Error::NonIntegral(v.to_string()))
            })
            .collect()
    }

    pub fn mul_truncated(&self, rhs: &Self, order: usize) -> Self {
        let order = order.min(self.order()).min(rhs.order());
        let (a, da) = common_denominator(&self.coeffs[..=order]);
        let (b, db) = common_denominator(&rhs.coeffs[..=order]);
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().take(order + 1 - i).enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let d = da * db;
        Self::from_coeffs(out.into_iter().map(|v| BigRat::new(v, d.clone())).collect())
    }

    /// `exp(a)` by the recurrence `n f_n = sum_j j a_j f_{n-j}` from `f' = a' f`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermViolation(format!("exp needs a[0] = 0, got {}", self.coeffs[0])));
        }
        let n = self.order();
        let mut f = vec![BigRat::zero(); n + 1];
        f[0] = BigRat::one();
        for m in 1..=n {
            let mut acc = BigRat::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &f[m - j] * rat_int(j as i64);
                }
            }
            f[m] = acc / rat_int(m as i64);
        }
        Ok(Self::from_coeffs(f))
    }

    /// `exp(a)` as `sum_j a^j / j!`. Independent of [`Self::exp`].
    pub fn exp_by_powers(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermViolation(format!("exp needs a[0] = 0, got {}", self.coeffs[0])));
        }
        let n = self.order();
        let mut acc = Self::one(n);
        let mut pw = Self::one(n);
        for j in 1..=n {
            pw = (&pw * self).scale(&BigRat::new(BigInt::one(), BigInt::from(j)));
            acc = &acc + &pw;
        }
        Ok(acc)
    }

    /// `log(a)` by the recurrence from `g' = a'/a`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermViolation(format!("log needs a[0] = 1, got {}", self.coeffs[0])));
        }
        let n = self.order();
        let mut g = vec![BigRat::zero(); n + 1];
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * rat_int(m as i64);
            for j in 1..m {
                if !self.coeffs[m - j].is_zero() {
                    acc -= &g[j] * &self.coeffs[m - j] * rat_int(j as i64);
                }
            }
            g[m] = acc / rat_int(m as i64);
        }
        Ok(Self::from_coeffs(g))
    }

    /// Multiplicative inverse, requiring a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let inv0 = BigRat::one() / &self.coeffs[0];
        let mut b = vec![BigRat::zero(); n + 1];
        b[0] = inv0.clone();
        for m in 1..=n {
            let mut acc = BigRat::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &b[m - j];
                }
            }
            b[m] = -acc * &inv0;
        }
        Ok(Self::from_coeffs(b))
    }

    /// `a^alpha` for a rational exponent, requiring `a[0] = 1`.
    pub fn pow_rat(&self, alpha: &BigRat) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermViolation(format!("rational power needs a[0] = 1, got {}", self.coeffs[0])));
        }
        let n = self.order();
        let mut f = vec![BigRat::zero(); n + 1];
        f[0] = BigRat::one();
        let a1 = alpha + BigRat::one();
        for m in 1..=n {
            let mut acc = BigRat::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    let w = &a1 * rat_int(j as i64) - rat_int(m as i64);
                    acc += w * &self.coeffs[j] * &f[m - j];
                }
            }
            f[m] = acc / rat_int(m as i64);
        }
        Ok(Self::from_coeffs(f))
    }

    /// `self(inner(z))` by Horner's rule; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NotComposable);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::zero(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

impl Add for &ExactSeries {
    type Output = ExactSeries;
    fn add(self, rhs: &ExactSeries) -> ExactSeries {
        let n = self.order().min(rhs.order());
        ExactSeries::from_coeffs((0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }
}

impl Sub for &ExactSeries {
    type Output = ExactSeries;
    fn sub(self, rhs: &ExactSeries) -> ExactSeries {
        let n = self.order().min(rhs.order());
        ExactSeries::from_coeffs((0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }
}

impl Mul for &ExactSeries {
    type Output = ExactSeries;
    fn mul(self, rhs: &ExactSeries) -> ExactSeries {
        self.mul_truncated(rhs, usize::MAX)
    }
}

impl Neg for &ExactSeries {
    type Output = ExactSeries;
    fn neg(self) -> ExactSeries {
        ExactSeries::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

pub fn series_arith(a: &ExactSeries, b: &ExactSeries, op: SeriesOp) -> ExactSeries {
    match op {
        SeriesOp::Add => a + b,
        SeriesOp::Sub => a - b,
        SeriesOp::Mul => a * b,
    }
}

pub fn series_exp_log(a: &ExactSeries, op: ExpLog) -> Result<ExactSeries> {
    match op {
        ExpLog::Exp => a.exp(),
        ExpLog::Log => a.log(),
    }
}

/// `T(z)` from the closed form `[z^n] T = n^{n-1}/n!`.
pub fn tree_series_closed(order: usize) -> ExactSeries {
    let f = factorials(order);
    let mut c = vec![BigRat::zero(); order + 1];
    for n in 1..=order {
        c[n] = BigRat::new(pow_int(&BigInt::from(n), n - 1), f[n].clone());
    }
    ExactSeries::from_coeffs(c)
}

/// `T(z)` by Newton iteration on `T - z e^T = 0`, doubling the precision each step.
pub fn tree_series_newton(order: usize) -> ExactSeries {
    let mut t = ExactSeries::zero(order);
    let mut prec = 1usize;
    let z = ExactSeries::variable(order);
    loop {
        let ze = &z * &t.exp().expect("T has zero constant term");
        let num = &t - &ze;
        let den = &ExactSeries::one(order) - &ze;
        let step = &num * &den.inverse().expect("1 - z e^T is invertible");
        t = &t - &step;
        if prec > order {
            break;
        }
        prec *= 2;
    }
    t
}

/// `T(z)`; the Newton result is checked against the closed form.
pub fn tree_series(order: usize) -> ExactSeries {
    let closed = tree_series_closed(order);
    debug_assert_eq!(tree_series_newton(order), closed);
    closed
}

/// The unicycle family: `U = T - T^2/2`, `MV = log(1/(1-T))/2`, `V = MV - T/2 - T^2/4`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnicycleSeries {
    pub t: ExactSeries,
    pub u: ExactSeries,
    pub v: ExactSeries,
    pub mv: ExactSeries,
}

pub fn unicycle_series(order: usize) -> UnicycleSeries {
    let t = tree_series(order);
    let t2 = &t * &t;
    let half = BigRat::new(BigInt::one(), BigInt::from(2));
    let quarter = BigRat::new(BigInt::one(), BigInt::from(4));
    let u = &t - &t2.scale(&half);
    let one_minus_t = &ExactSeries::one(order) - &t;
    let mv = one_minus_t.log().expect("1 - T has constant term 1").scale(&-half.clone());
    let v = &(&mv - &t.scale(&half)) - &t2.scale(&quarter);
    UnicycleSeries { t, u, v, mv }
}

/// `table[n][m]` = number of graphs on n labeled vertices with m edges.
pub fn graphs_gf_slice(n_max: usize, m_max: usize) -> Vec<Vec<BigInt>> {
    (0..=n_max)
        .map(|n| {
            let pairs = (n * n.saturating_sub(1) / 2) as u64;
            (0..=m_max).map(|m| binomial(pairs, m as u64)).collect()
        })
        .collect()
}

/// Integer numerators over the least common denominator.
pub fn common_denominator(c: &[BigRat]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for x in c {
        if !x.denom().is_one() {
            l = l.lcm(x.denom());
        }
    }
    let nums = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (nums, l)
}
