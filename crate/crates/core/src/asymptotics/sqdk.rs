//! Normalized sums of double-factorial products over capped compositions,
//! `S_{q,d,k} = sum_{k_1+..+k_q = k, 0 <= k_j <= k-d} prod (2k_j-1)!! / (2k-1)!!`.

use crate::arith::{odd_double_factorial, rat, BigRat};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

/// `[x^total] (sum_{lo <= j <= hi} (2j-1)!! x^j)^q`, over all totals up to `total`.
fn capped_power_table(q: usize, lo: usize, hi: usize, total: usize) -> Vec<Vec<BigInt>> {
    let w: Vec<BigInt> = (0..=total).map(|j| if j >= lo && j <= hi { odd_double_factorial(j) } else { BigInt::zero() }).collect();
    let mut cur = vec![BigInt::zero(); total + 1];
    cur[0] = BigInt::from(1);
    let mut out = vec![cur.clone()];
    for _ in 0..q {
        let mut next = vec![BigInt::zero(); total + 1];
        for (a, x) in cur.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in w.iter().enumerate().take(total + 1 - a) {
                if !y.is_zero() {
                    next[a + b] += x * y;
                }
            }
        }
        cur = next;
        out.push(cur.clone());
    }
    out
}

/// Numerator `sum prod (2k_j-1)!!` over compositions of `total` into `q` parts in `[lo, hi]`.
pub fn capped_compositions(q: usize, lo: usize, hi: usize, total: usize) -> BigInt {
    capped_power_table(q, lo, hi, total)[q][total].clone()
}

fn check(q: usize, d: usize, k: usize) -> Result<()> {
    if q == 0 || q > k || d > k {
        return Err(Error::InvalidArgument(format!("need 1 <= q <= k and d <= k, got q={q} d={d} k={k}")));
    }
    Ok(())
}

pub fn sqdk(q: usize, d: usize, k: usize) -> Result<BigRat> {
    check(q, d, k)?;
    Ok(BigRat::new(capped_compositions(q, 0, k - d, k), odd_double_factorial(k)))
}

/// `S_{q,d,k}` for all `1 <= q <= k` at fixed `d, k`.
#[derive(Clone, Debug, Serialize)]
pub struct SqdkTable {
    pub d: usize,
    pub k: usize,
    #[serde(serialize_with = "rats_as_strings")]
    pub values: Vec<BigRat>,
}

fn rats_as_strings<S: serde::Serializer>(v: &[BigRat], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&crate::arith::rat_to_string(x))?;
    }
    seq.end()
}

impl SqdkTable {
    pub fn get(&self, q: usize) -> &BigRat {
        &self.values[q - 1]
    }
}

pub fn sqdk_table(d: usize, k: usize) -> Result<SqdkTable> {
    check(1, d, k)?;
    let t = capped_power_table(k, 0, k - d, k);
    let den = odd_double_factorial(k);
    let values = (1..=k).map(|q| BigRat::new(t[q][k].clone(), den.clone())).collect();
    Ok(SqdkTable { d, k, values })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstBoundSweep {
    pub k: usize,
    pub s1_is_one: bool,
    /// `max_q S_{q,0,k} / (3q)`.
    pub max_ratio: f64,
    pub holds: bool,
}

/// Checks `S_{1,0,k} = 1` and `S_{q,0,k} <= 3q` for all `q <= k`.
pub fn const_bound_sweep(k: usize) -> Result<ConstBoundSweep> {
    let t = sqdk_table(0, k)?;
    let mut holds = true;
    let mut max_ratio = 0f64;
    for q in 1..=k {
        let bound = rat(3 * q as i64, 1);
        holds &= *t.get(q) <= bound;
        max_ratio = max_ratio.max(crate::arith::rat_to_f64(&(t.get(q) / bound)));
    }
    Ok(ConstBoundSweep { k, s1_is_one: *t.get(1) == rat(1, 1), max_ratio, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpBoundSweep {
    pub k: usize,
    pub d: usize,
    /// `q` values where `S_{q,k-d,k} > 2^{-k}`.
    pub violations: Vec<usize>,
}

/// Checks `S_{q,k-d,k} <= 2^{-k}` for every `q` in `qs` (parts capped at `d`).
pub fn exp_bound_sweep(k: usize, d: usize, qs: &[usize]) -> Result<ExpBoundSweep> {
    check(1, k - d.min(k), k)?;
    let q_max = qs.iter().copied().max().unwrap_or(0);
    let t = capped_power_table(q_max, 0, d, k);
    let den = odd_double_factorial(k);
    let bound = BigRat::new(BigInt::from(1), BigInt::from(2).pow(k as u32));
    let mut violations = Vec::new();
    for &q in qs {
        check(q, k - d.min(k), k)?;
        if BigRat::new(t[q][k].clone(), den.clone()) > bound {
            violations.push(q);
        }
    }
    Ok(ExpBoundSweep { k, d, violations })
}

/// `sum_{q=d+5}^{k} S_{q,q-1,k} / q`.
pub fn tail_sum(d: usize, k: usize) -> BigRat {
    let den = odd_double_factorial(k);
    let mut acc = BigRat::zero();
    for q in (d + 5)..=k {
        let s = BigRat::new(capped_compositions(q, 0, k - q + 1, k), den.clone());
        acc += s / rat(q as i64, 1);
    }
    acc
}
