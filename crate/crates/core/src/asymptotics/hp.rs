//! Arbitrary-precision binary floats with the precision carried alongside the value.

use crate::arith::{factorial, BigRat};
use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const DEFAULT_PRECISION: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct HpFloat {
    value: BigFloat,
    precision: usize,
}

impl HpFloat {
    fn wrap(value: BigFloat, precision: usize) -> Self {
        HpFloat { value, precision }
    }

    pub fn from_i64(v: i64, p: usize) -> Self {
        Self::wrap(BigFloat::from_i64(v, p), p)
    }

    pub fn from_f64(v: f64, p: usize) -> Self {
        Self::wrap(BigFloat::from_f64(v, p), p)
    }

    /// Correctly rounded conversion of an exact integer.
    pub fn from_bigint(v: &BigInt, p: usize) -> Self {
        let s = v.to_str_radix(16);
        Self::wrap(with_cc(|cc| BigFloat::parse(&s, Radix::Hex, p, RM, cc)), p)
    }

    pub fn from_rat(v: &BigRat, p: usize) -> Self {
        let n = Self::from_bigint(v.numer(), p + 64);
        let d = Self::from_bigint(v.denom(), p + 64);
        Self::wrap(n.value.div(&d.value, p, RM), p)
    }

    pub fn parse(s: &str, p: usize) -> Self {
        Self::wrap(with_cc(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc)), p)
    }

    pub fn pi(p: usize) -> Self {
        Self::wrap(with_cc(|cc| cc.pi(p, RM)), p)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn raw(&self) -> &BigFloat {
        &self.value
    }

    pub fn exp(&self) -> Self {
        Self::wrap(with_cc(|cc| self.value.exp(self.precision, RM, cc)), self.precision)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(with_cc(|cc| self.value.ln(self.precision, RM, cc)), self.precision)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(self.precision, RM), self.precision)
    }

    pub fn powi(&self, n: usize) -> Self {
        Self::wrap(self.value.powi(n, self.precision, RM), self.precision)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.precision)
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive() && !self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self * &Self::from_i64(k, self.precision)
    }

    /// Natural log of an exact positive integer.
    pub fn ln_bigint(v: &BigInt, p: usize) -> Self {
        Self::from_bigint(v, p + 32).ln().with_precision(p)
    }

    pub fn ln_factorial(n: usize, p: usize) -> Self {
        Self::ln_bigint(&factorial(n), p)
    }

    pub fn with_precision(mut self, p: usize) -> Self {
        self.value.set_precision(p, RM).expect("precision change");
        self.precision = p;
        self
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    /// Decimal scientific notation rounded to `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        round_scientific(&self.to_string(), digits.max(1))
    }

    /// Number of decimal digits the binary precision supports.
    pub fn decimal_digits(&self) -> usize {
        (self.precision as f64 * std::f64::consts::LOG10_2).floor() as usize
    }
}

fn round_scientific(s: &str, digits: usize) -> String {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let mut ds: Vec<u8> = mant.bytes().filter(|b| b.is_ascii_digit()).map(|b| b - b'0').collect();
    if ds.iter().all(|&d| d == 0) {
        return "0".into();
    }
    let mut exp = exp;
    if ds.len() > digits {
        let round_up = ds[digits] >= 5;
        ds.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.truncate(digits);
                    exp += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    while ds.len() > 1 && ds.last() == Some(&0) {
        ds.pop();
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push((b'0' + ds[0]) as char);
    if ds.len() > 1 {
        out.push('.');
        out.extend(ds[1..].iter().map(|&d| (b'0' + d) as char));
    }
    out.push_str(&format!("e{exp}"));
    out
}

impl fmt::Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = with_cc(|cc| self.value.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        f.write_str(&s)
    }
}

impl PartialEq for HpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for HpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

macro_rules! hp_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &HpFloat {
            type Output = HpFloat;
            fn $m(self, rhs: &HpFloat) -> HpFloat {
                let p = self.precision.max(rhs.precision);
                HpFloat::wrap(self.value.$m(&rhs.value, p, RM), p)
            }
        }
        impl $tr for HpFloat {
            type Output = HpFloat;
            fn $m(self, rhs: HpFloat) -> HpFloat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&HpFloat> for HpFloat {
            type Output = HpFloat;
            fn $m(self, rhs: &HpFloat) -> HpFloat {
                (&self).$m(rhs)
            }
        }
        impl $tr<HpFloat> for &HpFloat {
            type Output = HpFloat;
            fn $m(self, rhs: HpFloat) -> HpFloat {
                self.$m(&rhs)
            }
        }
    };
}

hp_binop!(Add, add);
hp_binop!(Sub, sub);
hp_binop!(Mul, mul);
hp_binop!(Div, div);

impl Neg for &HpFloat {
    type Output = HpFloat;
    fn neg(self) -> HpFloat {
        HpFloat::wrap(BigFloat::neg(&self.value), self.precision)
    }
}

impl Neg for HpFloat {
    type Output = HpFloat;
    fn neg(self) -> HpFloat {
        -&self
    }
}
