//! Empirical estimate of the first correction `c_1` in `exact/D = 1 + c_1/n + ...`.

use super::dominant::{cmg_dominant_log, csg_dominant_log};
use super::hp::HpFloat;
use crate::connected::{Family, RecurrenceTable};
use crate::error::{Error, Result};
use std::path::Path;

#[derive(Clone, Debug)]
pub struct C1Estimate {
    pub grid: Vec<usize>,
    /// `r_n = exact/D - 1`.
    pub r: Vec<HpFloat>,
    /// Estimates from consecutive pairs, eliminating the `1/n^2` term of `r_n`.
    pub pairwise: Vec<HpFloat>,
    /// Polynomial extrapolation of `n r_n` in `1/n` through the whole grid.
    pub estimate: HpFloat,
    /// `|pairwise[i+1] - pairwise[i]|`.
    pub consistency: Vec<HpFloat>,
}

/// Extrapolates `x(n) = n r_n` to `n = infinity`, assuming `x = c_1 + c_2/n + ...`.
pub fn richardson(grid: &[usize], r: &[HpFloat]) -> Result<C1Estimate> {
    if grid.len() < 3 || grid.len() != r.len() {
        return Err(Error::InsufficientGrid(grid.len().min(r.len())));
    }
    let p = r[0].precision();
    let x: Vec<HpFloat> = grid.iter().zip(r).map(|(&n, v)| v.scale_i64(n as i64)).collect();
    let ns: Vec<HpFloat> = grid.iter().map(|&n| HpFloat::from_i64(n as i64, p)).collect();
    let pairwise: Vec<HpFloat> = (0..grid.len() - 1)
        .map(|i| &(&(&ns[i + 1] * &x[i + 1]) - &(&ns[i] * &x[i])) / &(&ns[i + 1] - &ns[i]))
        .collect();
    // Neville's scheme in h = 1/n, evaluated at h = 0
    let one = HpFloat::from_i64(1, p);
    let h: Vec<HpFloat> = ns.iter().map(|v| &one / v).collect();
    let mut t = x.clone();
    for level in 1..grid.len() {
        for i in 0..grid.len() - level {
            let j = i + level;
            t[i] = &(&(&h[j] * &t[i]) - &(&h[i] * &t[i + 1])) / &(&h[j] - &h[i]);
        }
    }
    let consistency = pairwise.windows(2).map(|w| (&w[1] - &w[0]).abs()).collect();
    Ok(C1Estimate { grid: grid.to_vec(), r: r.to_vec(), pairwise, estimate: t[0].clone(), consistency })
}

/// `exact/exp(dominant) - 1` at `k = n * num / den`, with exact counts from the recurrence tables.
pub fn relative_gaps(family: Family, num: usize, den: usize, grid: &[usize], p: usize, cache: Option<&Path>) -> Result<Vec<HpFloat>> {
    if den == 0 || num == 0 {
        return Err(Error::NonPositiveRatio(format!("{num}/{den}")));
    }
    let ks: Vec<usize> = grid
        .iter()
        .map(|&n| {
            if (n * num) % den != 0 {
                Err(Error::InvalidArgument(format!("k = {n}*{num}/{den} is not an integer")))
            } else {
                Ok(n * num / den)
            }
        })
        .collect::<Result<_>>()?;
    let n_max = *grid.iter().max().ok_or(Error::InsufficientGrid(0))?;
    let m_max = grid.iter().zip(&ks).map(|(n, k)| n + k).max().unwrap_or(0);
    let table = RecurrenceTable::load_or_build(family, n_max, m_max, cache)?;
    let one = HpFloat::from_i64(1, p);
    grid.iter()
        .zip(&ks)
        .map(|(&n, &k)| {
            let dom = match family {
                Family::Csg => csg_dominant_log(n, k, p)?,
                Family::Cmg => cmg_dominant_log(n, k, p)?,
                _ => return Err(Error::InvalidArgument("c1 covers csg and cmg".into())),
            };
            let le = HpFloat::ln_bigint(table.get(n, n + k), p);
            Ok(&(&le - &dom).exp() - &one)
        })
        .collect()
}

pub fn estimate_c1(family: Family, num: usize, den: usize, grid: &[usize], p: usize, cache: Option<&Path>) -> Result<C1Estimate> {
    if grid.len() < 3 {
        return Err(Error::InsufficientGrid(grid.len()));
    }
    let r = relative_gaps(family, num, den, grid, p, cache)?;
    richardson(grid, &r)
}
