//! Coefficients of the form `p(t) (1-t)^{-h/2}` and x-series over them.
//!
//! With `t = T(z)`, every positive-excess generating function in this crate
//! is such a t-rational, and the large-powers integrands are x-series whose
//! coefficients are t-rationals. The numerator is kept coprime to `1 - t`,
//! so two values are equal exactly when their fields are equal.

use crate::arith::{binomial_rat, factorials, odd_double_factorial, rat, rat_int, rat_sqrt, rat_to_string, BigRat};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::ExactSeries;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::ops::{Add, Mul, Neg};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TRational {
    numerator: Poly,
    half_pole: i64,
}

impl TRational {
    pub fn new(numerator: Poly, half_pole: i64) -> Self {
        let mut p = numerator;
        let mut h = half_pole;
        if p.is_zero() {
            return Self::zero();
        }
        while let Some(q) = p.div_one_minus_x() {
            p = q;
            h -= 2;
        }
        TRational { numerator: p, half_pole: h }
    }

    pub fn zero() -> Self {
        TRational { numerator: Poly::zero(), half_pole: 0 }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(Poly::constant(c), 0)
    }

    pub fn poly(p: Poly) -> Self {
        Self::new(p, 0)
    }

    /// `t`.
    pub fn t() -> Self {
        Self::poly(Poly::monomial(BigRat::one(), 1))
    }

    /// `(1-t)^{e/2}`.
    pub fn one_minus_t_half_power(e: i64) -> Self {
        TRational { numerator: Poly::one(), half_pole: -e }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn half_pole(&self) -> i64 {
        self.half_pole
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TRational { numerator: self.numerator.scale(c), half_pole: self.half_pole }
    }

    /// Sum of two t-rationals; half-poles must agree in parity unless one side is zero.
    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        let (h1, h2) = (self.half_pole, rhs.half_pole);
        if (h1 - h2) % 2 != 0 {
            return Err(Error::MixedParity(h1, h2));
        }
        let h = h1.max(h2);
        let a = self.numerator.mul_one_minus_x_pow(((h - h1) / 2) as usize);
        let b = rhs.numerator.mul_one_minus_x_pow(((h - h2) / 2) as usize);
        Ok(Self::new(&a + &b, h))
    }

    /// Inverse of a value `c (1-t)^{p}` with constant numerator.
    pub fn inverse_monomial(&self) -> Option<Self> {
        if self.numerator.degree() != Some(0) {
            return None;
        }
        let c = self.numerator.coeff(0);
        Some(TRational { numerator: Poly::constant(BigRat::one() / c), half_pole: -self.half_pole })
    }

    /// Numerator after rewriting the value over `(1-t)^{pole}`.
    pub fn numerator_over_pole(&self, pole: i64) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.half_pole % 2 != 0 || pole < self.half_pole / 2 {
            return None;
        }
        Some(self.numerator.mul_one_minus_x_pow((pole - self.half_pole / 2) as usize))
    }

    /// The series `f(t(z))` for a series `t` with zero constant term.
    pub fn eval_series(&self, t: &ExactSeries) -> Result<ExactSeries> {
        let order = t.order();
        let p = ExactSeries::from_poly(&Poly::one(), order);
        let mut num = ExactSeries::zero(order);
        let mut pw = p;
        for c in self.numerator.coeffs() {
            num = &num + &pw.scale(c);
            pw = &pw * t;
        }
        let base = &ExactSeries::one(order) - t;
        let factor = base.pow_rat(&rat(-self.half_pole, 2))?;
        Ok(&num * &factor)
    }

    /// `[z^n] f(T(z))` by Lagrange inversion: `(1/n) [t^{n-1}] f'(t) e^{nt}`.
    pub fn tree_coeff(&self, n: usize) -> BigRat {
        if n == 0 {
            return self.numerator.coeff(0);
        }
        // f = p (1-t)^{-a}, so f' = (p' (1-t) + a p) (1-t)^{-a-1}.
        let a = rat(self.half_pole, 2);
        let q = &(&self.numerator.derivative() * &Poly::one_minus_x()) + &self.numerator.scale(&a);
        let beta = a + BigRat::one();
        let m = n - 1;
        let mut binom_series = Vec::with_capacity(m + 1);
        let mut c = BigRat::one();
        for j in 0..=m {
            binom_series.push(c.clone());
            c = c * (&beta + rat_int(j as i64)) / rat_int(j as i64 + 1);
        }
        let fact = factorials(m);
        let nn = BigInt::from(n);
        let mut npow = vec![BigInt::one(); m + 1];
        for j in 1..=m {
            npow[j] = &npow[j - 1] * &nn;
        }
        let mut acc = BigRat::zero();
        for j in 0..=m {
            // [t^j] f'(t)
            let mut g = BigRat::zero();
            for (i, qi) in q.coeffs().iter().enumerate() {
                if i > j {
                    break;
                }
                g += qi * &binom_series[j - i];
            }
            if g.is_zero() {
                continue;
            }
            acc += g * BigRat::new(npow[m - j].clone(), fact[m - j].clone());
        }
        acc / rat_int(n as i64)
    }

    pub fn display(&self) -> String {
        format!("({}) * (1-t)^({}/2)", self.numerator.display("t"), -self.half_pole)
    }
}

impl Add for &TRational {
    type Output = TRational;
    /// Panics on mixed half-pole parity; use [`TRational::checked_add`] to handle it.
    fn add(self, rhs: &TRational) -> TRational {
        self.checked_add(rhs).expect("t-rational sum with mixed half-pole parity")
    }
}

impl Mul for &TRational {
    type Output = TRational;
    fn mul(self, rhs: &TRational) -> TRational {
        if self.is_zero() || rhs.is_zero() {
            return TRational::zero();
        }
        TRational::new(&self.numerator * &rhs.numerator, self.half_pole + rhs.half_pole)
    }
}

impl Neg for &TRational {
    type Output = TRational;
    fn neg(self) -> TRational {
        TRational { numerator: -&self.numerator, half_pole: self.half_pole }
    }
}

/// A truncated series in `x` with t-rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    coeffs: Vec<TRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XOp {
    Add,
    Mul,
}

/// A half-integer `twice / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn to_rat(self) -> BigRat {
        rat(self.0, 2)
    }
}

impl XSeries {
    pub fn zero(order: usize) -> Self {
        XSeries { coeffs: vec![TRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(TRational::one(), order)
    }

    pub fn constant(c: TRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<TRational>) -> Self {
        assert!(!coeffs.is_empty());
        XSeries { coeffs }
    }

    /// An x-series with constant rational coefficients.
    pub fn from_rational(c: &[BigRat]) -> Self {
        Self::from_coeffs(c.iter().map(|q| TRational::constant(q.clone())).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[TRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &TRational {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: &TRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `exp(a)` for an x-series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermViolation("x-series exp needs a zero constant term".into()));
        }
        let n = self.order();
        let mut f = vec![TRational::zero(); n + 1];
        f[0] = TRational::one();
        for m in 1..=n {
            let mut acc = TRational::zero();
            for j in 1..=m {
                let term = &(&self.coeffs[j] * &f[m - j]).scale(&rat_int(j as i64));
                acc = &acc + term;
            }
            f[m] = acc.scale(&rat(1, m as i64));
        }
        Ok(Self::from_coeffs(f))
    }
}

impl Add for &XSeries {
    type Output = XSeries;
    fn add(self, rhs: &XSeries) -> XSeries {
        let n = self.order().min(rhs.order());
        XSeries::from_coeffs((0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }
}

impl Mul for &XSeries {
    type Output = XSeries;
    fn mul(self, rhs: &XSeries) -> XSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![TRational::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] = &out[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
                }
            }
        }
        XSeries::from_coeffs(out)
    }
}

pub fn txs_arith(a: &XSeries, b: &XSeries, op: XOp) -> XSeries {
    match op {
        XOp::Add => a + b,
        XOp::Mul => a * b,
    }
}

/// `1 - t (e^x - 1 - x)/(x^2/2)` to order `x^{2K}`.
pub fn kernel_base(half_order: usize) -> XSeries {
    let order = 2 * half_order;
    let f = factorials(order + 2);
    let mut c = Vec::with_capacity(order + 1);
    c.push(TRational::poly(Poly::from_ints(&[1, -1])));
    for j in 1..=order {
        let phi = BigRat::new(BigInt::from(2), f[j + 2].clone());
        c.push(TRational::poly(Poly::monomial(-phi, 1)));
    }
    XSeries::from_coeffs(c)
}

/// `base^s` by the binomial series in `u = base/base[0] - 1`.
pub fn txs_pow(base: &XSeries, s: HalfInt) -> Result<XSeries> {
    let lead = base.coeff(0);
    let inv = lead
        .inverse_monomial()
        .ok_or_else(|| Error::NonRationalLeadingPower("leading coefficient is not c (1-t)^p".into()))?;
    let c = lead.numerator().coeff(0);
    if lead.half_pole() % 2 != 0 {
        return Err(Error::NonRationalLeadingPower(format!("leading half-pole {} is odd", lead.half_pole())));
    }
    let p = -lead.half_pole() / 2;
    let c_pow = rational_power(&c, s)
        .ok_or_else(|| Error::NonRationalLeadingPower(format!("({})^({}/2)", rat_to_string(&c), s.0)))?;
    // (1-t)^{p s} has half-pole -2 p s = -p * s.0.
    let leading = TRational::new(Poly::constant(c_pow), -p * s.0);
    let order = base.order();
    let mut u = base.scale(&inv);
    u.coeffs[0] = TRational::zero();
    let sr = s.to_rat();
    let mut acc = XSeries::one(order);
    let mut pw = XSeries::one(order);
    for i in 1..=order {
        pw = &pw * &u;
        let b = binomial_rat(&sr, i);
        if !b.is_zero() {
            acc = &acc + &pw.scale(&TRational::constant(b));
        }
    }
    Ok(acc.scale(&leading))
}

fn rational_power(c: &BigRat, s: HalfInt) -> Option<BigRat> {
    let (base, e) = if s.0 % 2 == 0 {
        (c.clone(), s.0.abs() / 2)
    } else {
        (rat_sqrt(c)?, s.0.abs())
    };
    let mut acc = BigRat::one();
    for _ in 0..e {
        acc *= &base;
    }
    if s.0 < 0 {
        if acc.is_zero() {
            return None;
        }
        acc = BigRat::one() / acc;
    }
    Some(acc)
}

/// Checks the half-pole of an excess-`k` form: even and at most `6k`.
pub fn check_pole(k: usize, v: &TRational) -> Result<()> {
    if v.half_pole() % 2 != 0 {
        return Err(Error::HalfPoleResidue { k, half_pole: v.half_pole() });
    }
    if v.half_pole() > 6 * k as i64 {
        return Err(Error::PoleOrderExceeded { k, half_pole: v.half_pole() });
    }
    Ok(())
}

/// `MG^{>0}_k` as `(2k-1)!! [x^{2k}] sqrt(1-t) kernel_base^{-(k+1/2)}`.
pub fn mgpos_tform(k: usize) -> Result<TRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("mgpos_tform needs k >= 1".into()));
    }
    let pw = txs_pow(&kernel_base(k), HalfInt(-(2 * k as i64 + 1)))?;
    let c = pw.coeff(2 * k) * &TRational::one_minus_t_half_power(1);
    let v = c.scale(&BigRat::from_integer(odd_double_factorial(k)));
    check_pole(k, &v)?;
    Ok(v)
}

/// `log(1 + sum_{l>=1} F_l y^l)` coefficientwise in `y`, for `terms[l] = F_l` (index 0 ignored).
pub fn log_in_y(terms: &[TRational]) -> Vec<TRational> {
    let kmax = terms.len() - 1;
    let mut out = vec![TRational::zero(); kmax + 1];
    for k in 1..=kmax {
        let mut acc = terms[k].scale(&rat_int(k as i64));
        for j in 1..k {
            let prod = (&out[j] * &terms[k - j]).scale(&rat_int(-(j as i64)));
            acc = &acc + &prod;
        }
        out[k] = acc.scale(&rat(1, k as i64));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WrightFamily {
    Mg,
    Sg,
    Cmg,
    Csg,
}

impl WrightFamily {
    pub fn name(self) -> &'static str {
        match self {
            WrightFamily::Mg => "mg",
            WrightFamily::Sg => "sg",
            WrightFamily::Cmg => "cmg",
            WrightFamily::Csg => "csg",
        }
    }
}

/// Wright-type numerators, each normalized to the pole `(1-t)^{-3k}`.
#[derive(Clone, Debug)]
pub struct WrightTables {
    pub k_max: usize,
    /// Indexed by `k`; entry 0 is unused and set to the zero polynomial.
    pub mk: Vec<Poly>,
    pub mk_star: Vec<Poly>,
    pub k: Vec<Poly>,
    pub k_star: Vec<Poly>,
    pub forms: WrightForms,
}

/// The same data kept as t-rationals.
#[derive(Clone, Debug)]
pub struct WrightForms {
    pub mgpos: Vec<TRational>,
    pub cmg: Vec<TRational>,
    pub sgpos: Vec<TRational>,
    pub csg: Vec<TRational>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WrightRecord {
    pub k: usize,
    pub family: WrightFamily,
    pub pole: usize,
    pub numerator: Vec<String>,
}

impl WrightTables {
    pub fn table(&self, family: WrightFamily) -> &[Poly] {
        match family {
            WrightFamily::Mg => &self.mk,
            WrightFamily::Cmg => &self.mk_star,
            WrightFamily::Sg => &self.k,
            WrightFamily::Csg => &self.k_star,
        }
    }

    pub fn records(&self, family: WrightFamily) -> Vec<WrightRecord> {
        (1..=self.k_max)
            .map(|k| WrightRecord {
                k,
                family,
                pole: 3 * k,
                numerator: self.table(family)[k].coeffs().iter().map(rat_to_string).collect(),
            })
            .collect()
    }
}

fn normalize(k: usize, v: &TRational) -> Result<Poly> {
    check_pole(k, v)?;
    v.numerator_over_pole(3 * k as i64)
        .ok_or(Error::PoleOrderExceeded { k, half_pole: v.half_pole() })
}

/// Builds `MK_k, MK*_k, K_k, K*_k` for `1 <= k <= k_max`.
pub fn wright_polys(k_max: usize) -> Result<WrightTables> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("wright_polys needs k_max >= 1".into()));
    }
    let mut mgpos = vec![TRational::zero()];
    let mut sgpos = vec![TRational::zero()];
    for k in 1..=k_max {
        mgpos.push(mgpos_tform(k)?);
        sgpos.push(crate::positive::sgpos_tform(k)?);
    }
    let cmg = log_in_y(&mgpos);
    let csg = log_in_y(&sgpos);
    let mut t = WrightTables {
        k_max,
        mk: vec![Poly::zero()],
        mk_star: vec![Poly::zero()],
        k: vec![Poly::zero()],
        k_star: vec![Poly::zero()],
        forms: WrightForms { mgpos: Vec::new(), cmg: Vec::new(), sgpos: Vec::new(), csg: Vec::new() },
    };
    for k in 1..=k_max {
        t.mk.push(normalize(k, &mgpos[k])?);
        t.mk_star.push(normalize(k, &cmg[k])?);
        t.k.push(normalize(k, &sgpos[k])?);
        t.k_star.push(normalize(k, &csg[k])?);
    }
    t.forms = WrightForms { mgpos, cmg, sgpos, csg };
    Ok(t)
}

/// Rejects half-integers that are not exact.
pub fn half_int_from_rat(q: &BigRat) -> Option<HalfInt> {
    let twice = q * rat_int(2);
    if twice.denom().is_one() {
        use num_traits::ToPrimitive;
        twice.numer().to_i64().map(HalfInt)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_strips_one_minus_t() {
        let v = TRational::new(Poly::from_ints(&[1, -2, 1]), 3);
        assert_eq!(v.numerator(), &Poly::one());
        assert_eq!(v.half_pole(), -1);
        let r = &TRational::one_minus_t_half_power(1) * &TRational::one_minus_t_half_power(1);
        assert_eq!(r.half_pole(), -2);
        assert_eq!(r, TRational::poly(Poly::from_ints(&[1, -1])));
    }

    #[test]
    fn mixed_parity_is_rejected() {
        let a = TRational::one_minus_t_half_power(1);
        let b = TRational::one();
        assert!(matches!(a.checked_add(&b), Err(Error::MixedParity(_, _))));
        assert_eq!(a.checked_add(&TRational::zero()).unwrap(), a);
    }

    #[test]
    fn kernel_base_coefficients() {
        let b = kernel_base(2);
        assert_eq!(b.coeff(0), &TRational::poly(Poly::from_ints(&[1, -1])));
        assert_eq!(b.coeff(1), &TRational::poly(Poly::monomial(rat(-1, 3), 1)));
        assert_eq!(b.coeff(2), &TRational::poly(Poly::monomial(rat(-1, 12), 1)));
    }

    #[test]
    fn powers_of_kernel_base() {
        let b = kernel_base(3);
        let half = txs_pow(&b, HalfInt(-1)).unwrap();
        assert_eq!(half.coeff(0), &TRational::one_minus_t_half_power(-1));
        let inv = txs_pow(&b, HalfInt(1)).unwrap();
        assert_eq!(&half * &inv, XSeries::one(6));
        let three = txs_pow(&b, HalfInt(-3)).unwrap();
        assert_eq!(three, &(&half * &half) * &half);
        let sum = txs_pow(&b, HalfInt(-4)).unwrap();
        assert_eq!(&half * &three, sum);
    }

    #[test]
    fn non_rational_leading_power() {
        let b = XSeries::constant(TRational::constant(rat(2, 1)), 2);
        assert!(matches!(txs_pow(&b, HalfInt(1)), Err(Error::NonRationalLeadingPower(_))));
        let b = XSeries::constant(TRational::constant(rat(4, 9)), 2);
        assert_eq!(txs_pow(&b, HalfInt(-1)).unwrap().coeff(0), &TRational::constant(rat(3, 2)));
    }

    #[test]
    fn first_multigraph_form() {
        // (3t + 2t^2) / (24 (1-t)^3)
        let v = mgpos_tform(1).unwrap();
        assert_eq!(v.half_pole(), 6);
        assert_eq!(v.numerator(), &Poly::from_coeffs(vec![rat(0, 1), rat(1, 8), rat(1, 12)]));
        assert_eq!(v.numerator().eval(&rat(1, 1)), rat(5, 24));
        for k in 1..=6 {
            let v = mgpos_tform(k).unwrap();
            assert!(v.half_pole() % 2 == 0 && v.half_pole() <= 6 * k as i64);
        }
    }

    #[test]
    fn lagrange_matches_composition() {
        let v = mgpos_tform(2).unwrap();
        let t = crate::series::tree_series(12);
        let s = v.eval_series(&t).unwrap();
        for n in 0..=12 {
            assert_eq!(&v.tree_coeff(n), s.coeff(n), "n = {n}");
        }
        let w = TRational::new(Poly::from_ints(&[2, 5]), -3);
        let s = w.eval_series(&t).unwrap();
        for n in 0..=12 {
            assert_eq!(&w.tree_coeff(n), s.coeff(n));
        }
    }
}
