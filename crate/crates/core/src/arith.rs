//! Exact integer and rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type BigRat = BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int<T: Into<BigInt>>(n: T) -> BigRat {
    BigRat::from_integer(n.into())
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Table of 0!, 1!, ..., n!.
pub fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for i in 1..=n {
        let next = &out[i - 1] * i;
        out.push(next);
    }
    out
}

/// (2k-1)!! = 1*3*...*(2k-1), with (-1)!! = 1.
pub fn odd_double_factorial(k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= 2 * i - 1;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient with a rational upper argument.
pub fn binomial_rat(s: &BigRat, k: usize) -> BigRat {
    let mut acc = BigRat::one();
    for i in 0..k {
        acc *= s - rat_int(i as i64);
        acc /= rat_int(i as i64 + 1);
    }
    acc
}

/// Returns the integer value of a rational, or `None` if it has a denominator.
pub fn as_integer(q: &BigRat) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

/// Exact square root of a non-negative rational, when it exists.
pub fn rat_sqrt(q: &BigRat) -> Option<BigRat> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRat::new(n, d))
    } else {
        None
    }
}

pub fn pow_int(base: &BigInt, e: usize) -> BigInt {
    num_traits::pow(base.clone(), e)
}

/// Formats a rational as `p` or `p/q`.
pub fn rat_to_string(q: &BigRat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRat::new(a.trim().parse().ok()?, d))
        }
        None => Some(BigRat::from_integer(s.parse().ok()?)),
    }
}

pub fn rat_to_f64(q: &BigRat) -> f64 {
    // Scale down both sides first so huge values do not overflow to inf/inf.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as usize;
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}
