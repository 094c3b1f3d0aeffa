//! Fixed-excess asymptotics `W_k(1) sqrt(pi) / Gamma(3k/2) n^n (n/2)^{(3k-1)/2}`.
//!
//! For multigraphs the formula approximates the weighted count
//! `CMG_{n,k} / (2^{n+k} (n+k)!)`.

use super::hp::HpFloat;
use crate::arith::{factorial, BigRat};
use crate::connected::Family;
use crate::error::{Error, Result};
use crate::kernel::{wright_polys, TRational};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Debug)]
pub struct FixedExcessAsympt {
    pub n: usize,
    pub k: usize,
    pub family: Family,
    /// `K*_k(1)` or `MK*_k(1)`.
    pub wright_value: BigRat,
    pub log_value: HpFloat,
}

fn connected_form(k: usize, family: Family) -> Result<(TRational, BigRat)> {
    let w = wright_polys(k)?;
    let (form, poly) = match family {
        Family::Csg => (w.forms.csg[k].clone(), &w.k_star[k]),
        Family::Cmg => (w.forms.cmg[k].clone(), &w.mk_star[k]),
        _ => return Err(Error::InvalidArgument("fixed excess covers csg and cmg".into())),
    };
    Ok((form, poly.eval(&BigRat::one())))
}

/// `ln Gamma(h/2)` for `h >= 1`, exact up to the final logarithm.
pub fn ln_gamma_half(h: usize, p: usize) -> HpFloat {
    assert!(h >= 1);
    if h % 2 == 0 {
        HpFloat::ln_factorial(h / 2 - 1, p)
    } else {
        let m = (h - 1) / 2;
        let r = BigRat::new(factorial(2 * m), BigInt::from(4).pow(m as u32) * factorial(m));
        let two = HpFloat::from_i64(2, p);
        &HpFloat::from_rat(&r, p).ln() + &(&HpFloat::pi(p).ln() / &two)
    }
}

pub fn fixed_excess_asympt(n: usize, k: usize, family: Family, p: usize) -> Result<FixedExcessAsympt> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("fixed excess needs n, k >= 1, got n={n} k={k}")));
    }
    let (_, w1) = connected_form(k, family)?;
    let two = HpFloat::from_i64(2, p);
    let nf = HpFloat::from_i64(n as i64, p);
    let expo = HpFloat::from_rat(&crate::arith::rat(3 * k as i64 - 1, 2), p);
    let mut acc = HpFloat::from_rat(&w1, p).ln();
    acc = &acc + &(&HpFloat::pi(p).ln() / &two);
    acc = &acc - &ln_gamma_half(3 * k, p);
    acc = &acc + &(&nf * &nf.ln());
    acc = &acc + &(&expo * &(&nf / &two).ln());
    Ok(FixedExcessAsympt { n, k, family, wright_value: w1, log_value: acc })
}

/// Exact `CSG_{n,k}` or weighted `CMG_{n,k}/(2^{n+k}(n+k)!)` from the connected Wright form.
pub fn fixed_excess_exact(n: usize, k: usize, family: Family) -> Result<BigRat> {
    let (form, _) = connected_form(k, family)?;
    Ok(form.tree_coeff(n) * BigRat::from_integer(factorial(n)))
}

/// `|exact / asymptotic - 1|`.
pub fn fixed_excess_error(n: usize, k: usize, family: Family, p: usize) -> Result<HpFloat> {
    let a = fixed_excess_asympt(n, k, family, p)?;
    let exact = fixed_excess_exact(n, k, family)?;
    let one = HpFloat::from_i64(1, p);
    let le = &HpFloat::ln_bigint(exact.numer(), p) - &HpFloat::ln_bigint(exact.denom(), p);
    Ok((&(&le - &a.log_value).exp() - &one).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connected::RecurrenceTable;

    #[test]
    fn gamma_half_values() {
        let p = 128;
        assert!((ln_gamma_half(3, p).to_f64() - (std::f64::consts::PI.sqrt() / 2.0).ln()).abs() < 1e-14);
        assert!((ln_gamma_half(6, p).to_f64() - 2f64.ln()).abs() < 1e-14);
    }

    // k = 1: 2 K*_1(1) n^n (n/2)
    #[test]
    fn excess_one_reduces() {
        let a = fixed_excess_asympt(10, 1, Family::Csg, 128).unwrap();
        assert_eq!(a.wright_value, crate::arith::rat(5, 24));
        let direct = (5.0f64 / 24.0 * 2.0).ln() + 10.0 * 10f64.ln() + 5f64.ln();
        assert!((a.log_value.to_f64() - direct).abs() < 1e-12);
    }

    #[test]
    fn lagrange_counts_match_recurrence() {
        let g = RecurrenceTable::build(Family::Csg, 30, 33).unwrap();
        let m = RecurrenceTable::build(Family::Cmg, 16, 19).unwrap();
        for k in 1..=3 {
            for n in 1..=30usize {
                let e = fixed_excess_exact(n, k, Family::Csg).unwrap();
                assert_eq!(e, BigRat::from_integer(g.get(n, n + k).clone()), "csg n={n} k={k}");
                if n <= 16 {
                    let w = BigInt::from(2).pow((n + k) as u32) * factorial(n + k);
                    let e = fixed_excess_exact(n, k, Family::Cmg).unwrap() * BigRat::from_integer(w);
                    assert_eq!(e, BigRat::from_integer(m.get(n, n + k).clone()), "cmg n={n} k={k}");
                }
            }
        }
    }
}
