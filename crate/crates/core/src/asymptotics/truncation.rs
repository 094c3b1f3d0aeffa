//! Truncated composition sums in the linear-excess regime.
//!
//! The connected count is approximated by
//! `sum_{q <= d+4} (-1)^{q-1} sum_{q-1 <= r <= d+3} n! [z^n] F_{k-r} [y^r] (sum_{j>=1} F_j y^j)^{q-1}`,
//! evaluated here with exact coefficients.

use super::hp::HpFloat;
use crate::arith::BigRat;
use crate::connected::{log_counts, pascal, positive_counts, slice_product, Family};
use crate::error::{Error, Result};
use crate::positive::Route;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub const TRUNCATION_N_MAX: usize = 160;

#[derive(Clone, Debug, Serialize)]
pub struct TruncationTerm {
    pub q: usize,
    pub r: usize,
    /// Signed summand, including `(-1)^{q-1}`.
    pub value: String,
    /// `|summand| / |summand(1, 0)|`.
    pub relative: f64,
    pub sign_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationReport {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub exact: String,
    pub truncated: String,
    /// `|truncated - exact| / exact`.
    pub relative_error: f64,
    /// `summand(1, 0) / exact`.
    pub leading_ratio: f64,
    pub terms: Vec<TruncationTerm>,
}

fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    HpFloat::from_rat(&BigRat::new(a.clone(), b.clone()), 128).to_f64()
}

pub fn truncation_report(family: Family, n: usize, k: usize, d: usize) -> Result<TruncationReport> {
    let multi = match family {
        Family::Csg => false,
        Family::Cmg => true,
        _ => return Err(Error::InvalidArgument("truncation covers csg and cmg".into())),
    };
    if n > TRUNCATION_N_MAX || k > TRUNCATION_N_MAX {
        return Err(Error::BudgetExceeded(format!("truncation report limited to n, k <= {TRUNCATION_N_MAX}")));
    }
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("truncation needs n, k >= 1".into()));
    }
    let pos = positive_counts(family, n, k, Route::CoreComposition)?;
    let exact = log_counts(&pos, multi)?[k][n].clone();
    let pas = pascal(2 * n + 2 * k + 1);
    let r_max = (d + 3).min(k - 1);
    let q_max = d + 4;
    // powers[i][r]: [y^r] (sum_{j>=1} F_j y^j)^i
    let mut unit = vec![BigInt::zero(); n + 1];
    unit[0] = BigInt::from(1);
    let zero = vec![BigInt::zero(); n + 1];
    let mut powers: Vec<Vec<Vec<BigInt>>> = vec![(0..=r_max).map(|r| if r == 0 { unit.clone() } else { zero.clone() }).collect()];
    for i in 1..q_max {
        let prev = &powers[i - 1];
        let mut row = vec![zero.clone(); r_max + 1];
        for (r, slot) in row.iter_mut().enumerate().skip(i) {
            for j in 1..=(r + 1 - i) {
                let p = slice_product(&prev[r - j], r - j, &pos[j], j, multi, &pas);
                for (x, y) in slot.iter_mut().zip(p) {
                    *x += y;
                }
            }
        }
        powers.push(row);
    }
    let mut raw = Vec::new();
    for q in 1..=q_max {
        for r in (q - 1)..=r_max {
            if q == 1 && r > 0 {
                continue;
            }
            let v = slice_product(&pos[k - r], k - r, &powers[q - 1][r], r, multi, &pas)[n].clone();
            let signed = if q % 2 == 1 { v } else { -v };
            raw.push((q, r, signed));
        }
    }
    let lead = raw[0].2.clone();
    let mut truncated = BigInt::zero();
    let mut terms = Vec::new();
    for (q, r, v) in raw {
        truncated += &v;
        let expected_positive = q % 2 == 1;
        terms.push(TruncationTerm {
            q,
            r,
            relative: ratio_f64(&v.abs(), &lead),
            sign_matches: v.is_zero() || v.is_positive() == expected_positive,
            value: v.to_string(),
        });
    }
    Ok(TruncationReport {
        family,
        n,
        k,
        d,
        relative_error: ratio_f64(&(&truncated - &exact).abs(), &exact),
        leading_ratio: ratio_f64(&lead, &exact),
        exact: exact.to_string(),
        truncated: truncated.to_string(),
        terms,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayEntry {
    pub q: usize,
    pub r: usize,
    pub before: f64,
    pub after: f64,
    pub shrinks: bool,
}

/// Compares relative summand magnitudes of two reports at the same ratio `k/n`.
pub fn truncation_decay(small: &TruncationReport, large: &TruncationReport) -> Vec<DecayEntry> {
    small
        .terms
        .iter()
        .filter(|t| t.r >= 1 && t.relative > 0.0)
        .filter_map(|t| {
            let u = large.terms.iter().find(|u| u.q == t.q && u.r == t.r)?;
            Some(DecayEntry { q: t.q, r: t.r, before: t.relative, after: u.relative, shrinks: u.relative < t.relative })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_improves_and_signs_alternate() {
        let a = truncation_report(Family::Csg, 30, 30, 0).unwrap();
        let b = truncation_report(Family::Csg, 30, 30, 2).unwrap();
        assert!(b.relative_error < a.relative_error);
        assert!(a.terms.iter().chain(&b.terms).all(|t| t.sign_matches));
        let c = truncation_report(Family::Cmg, 10, 10, 1).unwrap();
        assert!(c.terms.iter().all(|t| t.sign_matches));
    }

    #[test]
    fn leading_term_approaches_exact() {
        let a = truncation_report(Family::Cmg, 10, 10, 0).unwrap();
        let b = truncation_report(Family::Cmg, 20, 20, 0).unwrap();
        assert!((b.leading_ratio - 1.0).abs() < (a.leading_ratio - 1.0).abs());
        for e in truncation_decay(&a, &b) {
            assert!(e.shrinks, "{e:?}");
        }
        // dense small graphs are almost surely connected, so graphs start at n = 30
        let a = truncation_report(Family::Csg, 30, 30, 0).unwrap();
        let b = truncation_report(Family::Csg, 60, 60, 0).unwrap();
        assert!((b.leading_ratio - 1.0).abs() < (a.leading_ratio - 1.0).abs());
    }
}
