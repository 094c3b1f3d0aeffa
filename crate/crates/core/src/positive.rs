//! (Multi)graphs whose components all have positive excess, and their cores.
//!
//! Two independent routes produce the excess-`k` series:
//!
//! * [`Route::WrightForm`] builds a t-rational from the large-powers
//!   integrand and evaluates it at `T(z)`.
//! * [`Route::CoreComposition`] counts (multi)cores exactly and plants trees
//!   on them: `MG^{>0}_k = sqrt(1-T) MCore_k(T)` and
//!   `SG^{>0}_k = e^{-V} Core_k(T)`.
//!
//! Core counts come from an integer convolution of signed patchwork counts
//! with the labeled-block numbers `R_{a,j}(N) = N! [x^N] e^{ax} (e^x-1-x)^j`.

use crate::arith::{factorial, factorials, odd_double_factorial, rat, BigRat};
use crate::error::{Error, Result};
use crate::kernel::{check_pole, kernel_base, mgpos_tform, txs_pow, HalfInt, TRational, XSeries};
use crate::patchwork::{signed_excess_poly, z_poly_eval, SignedPatchworks};
use crate::poly::Poly;
use crate::series::{unicycle_series, ExactSeries};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    MGpos,
    SGpos,
    MCore,
    Core,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    WrightForm,
    CoreComposition,
}

/// Series indexed by excess `k = 0..=k_max`, each of order `order`.
#[derive(Clone, Debug)]
pub struct ExcessSeriesFamily {
    pub tag: FamilyTag,
    pub order: usize,
    pub series: Vec<ExactSeries>,
}

impl ExcessSeriesFamily {
    pub fn build(tag: FamilyTag, k_max: usize, order: usize, route: Route) -> Result<Self> {
        let series = match (tag, route) {
            (FamilyTag::MCore, _) => mcore_series_table(k_max, order),
            (FamilyTag::Core, _) => core_series_table(k_max, order),
            (FamilyTag::MGpos, Route::CoreComposition) => {
                let t = crate::series::tree_series(order);
                let root = (&ExactSeries::one(order) - &t).pow_rat(&rat(1, 2))?;
                mcore_series_table(k_max, order)
                    .iter()
                    .map(|c| &root * &compose_with_tree(c, order))
                    .collect()
            }
            (FamilyTag::SGpos, Route::CoreComposition) => {
                let v = unicycle_series(order).v;
                let emv = (-&v).exp()?;
                core_series_table(k_max, order)
                    .iter()
                    .map(|c| &emv * &compose_with_tree(c, order))
                    .collect()
            }
            (FamilyTag::MGpos, Route::WrightForm) | (FamilyTag::SGpos, Route::WrightForm) => {
                let t = crate::series::tree_series(order);
                let mut out = vec![ExactSeries::one(order)];
                for k in 1..=k_max {
                    let f = if tag == FamilyTag::MGpos { mgpos_tform(k)? } else { sgpos_tform(k)? };
                    out.push(f.eval_series(&t)?);
                }
                out
            }
        };
        Ok(ExcessSeriesFamily { tag, order, series })
    }

    pub fn get(&self, k: usize) -> &ExactSeries {
        &self.series[k]
    }

    pub fn k_max(&self) -> usize {
        self.series.len() - 1
    }
}

/// `[z^n] T^j = (j/n) n^{n-j} / (n-j)!`, for all `j, n <= order`.
pub fn tree_powers(order: usize) -> Vec<Vec<BigRat>> {
    let f = factorials(order);
    (0..=order)
        .map(|j| {
            (0..=order)
                .map(|n| {
                    if j == 0 {
                        if n == 0 { BigRat::one() } else { BigRat::zero() }
                    } else if n < j {
                        BigRat::zero()
                    } else {
                        let num = BigInt::from(j) * BigInt::from(n).pow((n - j) as u32);
                        BigRat::new(num, BigInt::from(n) * &f[n - j])
                    }
                })
                .collect()
        })
        .collect()
}

/// `g(T(z))` using the closed form of the tree powers.
///
/// With `g_j = e_j / (L j!)`, `m! [z^m] g(T) = L^{-1} sum_j e_j C(m-1, j-1) m^{m-j}`.
pub fn compose_with_tree(g: &ExactSeries, order: usize) -> ExactSeries {
    let n = order.min(g.order());
    let f = factorials(order);
    let scaled: Vec<BigRat> = (0..=n).map(|j| g.coeff(j) * BigRat::from_integer(f[j].clone())).collect();
    let (e, l) = crate::series::common_denominator(&scaled);
    let mut out = vec![BigRat::zero(); order + 1];
    out[0] = g.coeff(0).clone();
    for m in 1..=order {
        let mb = BigInt::from(m);
        // binom(m-1, j-1) m^{m-j}, from j = m downwards
        let mut acc = BigInt::zero();
        let mut pw = BigInt::one();
        let mut bin = BigInt::one();
        for j in (1..=m).rev() {
            if j <= n && !e[j].is_zero() {
                acc += &e[j] * &bin * &pw;
            }
            if j > 1 {
                pw *= &mb;
                bin = bin * BigInt::from(j - 1) / BigInt::from(m - j + 1);
            }
        }
        out[m] = BigRat::new(acc, &l * &f[m]);
    }
    ExactSeries::from_coeffs(out)
}

/// `R_{a,j}(N)` for fixed `a`, `j <= j_max`, `N <= 2 (j + k_max)`.
///
/// Counts maps from `N` labeled points to `a` free bins and `j` labeled
/// blocks of size at least two. Adding point `N+1` either joins a bin or an
/// existing block, or forms a new pair with one earlier point:
/// `R_{a,j}(N+1) = (a+j) R_{a,j}(N) + j N R_{a,j-1}(N-1)`.
pub fn block_table(a: usize, j_max: usize, k_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let len = 2 * (j + k_max) + 1;
        let mut r = vec![BigInt::zero(); len];
        r[0] = if j == 0 { BigInt::one() } else { BigInt::zero() };
        for n in 0..len - 1 {
            let mut v = BigInt::from(a + j) * &r[n];
            if j > 0 && n >= 1 {
                v += BigInt::from(j * n) * &rows[j - 1][n - 1];
            }
            r[n + 1] = v;
        }
        rows.push(r);
    }
    rows
}

/// Multigraphs of minimum degree at least 2: `(2m)! [x^{2m}] (e^x-1-x)^n`.
pub fn mcore_coeff(n: usize, m: usize) -> BigInt {
    if m < n {
        return BigInt::zero();
    }
    block_table(0, n, m - n)[n][2 * m].clone()
}

/// `mcore(n, n+k)` for `n <= n_max`, `k <= k_max`, as `table[n][k]`.
pub fn mcore_table(n_max: usize, k_max: usize) -> Vec<Vec<BigInt>> {
    let r = block_table(0, n_max, k_max);
    (0..=n_max)
        .map(|n| (0..=k_max).map(|k| r[n][2 * (n + k)].clone()).collect())
        .collect()
}

/// Simple graphs of minimum degree at least 2, `table[n][k]` with `m = n + k`.
///
/// `#cores(n, M) = (2^M M!)^{-1} sum_{m1, a} C(M, m1) C(n, a) p(a, m1) R_{a,n-a}(2(M - m1))`
/// where `p(a, m1)` are the signed patchwork counts.
pub fn core_table(n_max: usize, k_max: usize) -> Result<Vec<Vec<BigInt>>> {
    let pw = SignedPatchworks::new(n_max, n_max + k_max);
    let pas = crate::connected::pascal(2 * n_max + k_max);
    let zero_table = || vec![vec![BigInt::zero(); k_max + 1]; n_max + 1];
    let sums = (0..=n_max)
        .into_par_iter()
        .map(|a| {
            let mut acc = zero_table();
            let r = block_table(a, n_max - a, k_max);
            for n in a..=n_max {
                let j = n - a;
                let ba = &pas[n][a];
                for k in 0..=k_max {
                    let mm = n + k;
                    // patchwork excess e = m1 - a ranges over 0..=k; a = 0 forces m1 = 0
                    let e_max = if a == 0 { 0 } else { k };
                    let mut s = BigInt::zero();
                    for e in 0..=e_max {
                        let m1 = a + e;
                        let p = pw.get(a, m1);
                        if p.is_zero() {
                            continue;
                        }
                        let rv = &r[j][2 * (mm - m1)];
                        if rv.is_zero() {
                            continue;
                        }
                        s += &pas[mm][m1] * p * rv;
                    }
                    acc[n][k] += s * ba;
                }
            }
            acc
        })
        .reduce(zero_table, |mut x, y| {
            for (rx, ry) in x.iter_mut().zip(y) {
                for (a, b) in rx.iter_mut().zip(ry) {
                    *a += b;
                }
            }
            x
        });
    let mut out = sums;
    for (n, row) in out.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            let mm = n + k;
            let d = BigInt::from(2).pow(mm as u32) * factorial(mm);
            let (q, rem) = v.div_rem(&d);
            if !rem.is_zero() {
                return Err(Error::NonIntegral(format!("core count n={n} m={mm}")));
            }
            *v = q;
        }
    }
    Ok(out)
}

pub fn core_coeff(n: usize, m: usize) -> Result<BigInt> {
    if m < n {
        return Ok(BigInt::zero());
    }
    Ok(core_table(n, m - n)?[n][m - n].clone())
}

/// `MCore_k(z) = sum_n mcore(n, n+k) z^n / (n! 2^{n+k} (n+k)!)`.
pub fn mcore_series_table(k_max: usize, order: usize) -> Vec<ExactSeries> {
    let tab = mcore_table(order, k_max);
    let f = factorials(2 * order + k_max);
    (0..=k_max)
        .map(|k| {
            ExactSeries::from_coeffs(
                (0..=order)
                    .map(|n| {
                        let d = &f[n] * BigInt::from(2).pow((n + k) as u32) * &f[n + k];
                        BigRat::new(tab[n][k].clone(), d)
                    })
                    .collect(),
            )
        })
        .collect()
}

/// `Core_k(z) = sum_n #cores(n, n+k) z^n / n!`.
pub fn core_series_table(k_max: usize, order: usize) -> Vec<ExactSeries> {
    let tab = core_table(order, k_max).expect("core counts are integers");
    (0..=k_max)
        .map(|k| {
            let c: Vec<BigInt> = (0..=order).map(|n| tab[n][k].clone()).collect();
            ExactSeries::from_egf_counts(&c)
        })
        .collect()
}

/// The x-series `sqrt(1-t) exp(-t (e^x-1)/2 - t^2 (e^{2x}-1)/4)`.
fn unicycle_twist(order: usize) -> Result<XSeries> {
    let f = factorials(order);
    let mut g = vec![TRational::zero()];
    for j in 1..=order {
        let a = BigRat::new(BigInt::from(-1), BigInt::from(2) * &f[j]);
        let b = BigRat::new(-BigInt::from(2).pow(j as u32), BigInt::from(4) * &f[j]);
        g.push(TRational::poly(Poly::from_coeffs(vec![BigRat::zero(), a, b])));
    }
    Ok(XSeries::from_coeffs(g).exp()?.scale(&TRational::one_minus_t_half_power(1)))
}

/// The `l`-terms of `SG^{>0}_k`: `(2(k-l)-1)!! [x^{2(k-l)}] P_l(t e^x, -1) E(t,x) kernel_base^{-(k-l+1/2)}`.
pub fn sgpos_tform_terms(k: usize) -> Result<Vec<TRational>> {
    let mut out = Vec::with_capacity(k + 1);
    for l in 0..=k {
        let r = k - l;
        let x = 2 * r;
        let pw = txs_pow(&kernel_base(r), HalfInt(-(2 * r as i64 + 1)))?;
        let p = z_poly_eval(&signed_excess_poly(l), x);
        let series = &(&p * &unicycle_twist(x)?) * &pw;
        out.push(series.coeff(x).scale(&BigRat::from_integer(odd_double_factorial(r))));
    }
    Ok(out)
}

/// `SG^{>0}_k` as a t-rational.
pub fn sgpos_tform(k: usize) -> Result<TRational> {
    let mut acc = TRational::zero();
    for term in sgpos_tform_terms(k)? {
        acc = acc.checked_add(&term)?;
    }
    if k > 0 {
        check_pole(k, &acc)?;
    }
    Ok(acc)
}

fn routes_agree(tag: FamilyTag, k: usize, order: usize) -> Result<ExactSeries> {
    let a = ExcessSeriesFamily::build(tag, k, order, Route::WrightForm)?;
    let b = ExcessSeriesFamily::build(tag, k, order, Route::CoreComposition)?;
    if a.get(k) != b.get(k) {
        return Err(Error::RouteMismatch(format!("{tag:?} k={k} order={order}")));
    }
    Ok(b.series[k].clone())
}

/// `MG^{>0}_k(z)` to order `order`, computed by both routes.
pub fn mgpos_series(k: usize, order: usize) -> Result<ExactSeries> {
    routes_agree(FamilyTag::MGpos, k, order)
}

/// `SG^{>0}_k(z)` to order `order`, computed by both routes.
pub fn sgpos_series(k: usize, order: usize) -> Result<ExactSeries> {
    routes_agree(FamilyTag::SGpos, k, order)
}

/// Weighted count `n! 2^{n+k} (n+k)! [z^n]` of a multigraph series.
pub fn multigraph_count(s: &ExactSeries, n: usize, k: usize) -> BigRat {
    let w = factorial(n) * BigInt::from(2).pow((n + k) as u32) * factorial(n + k);
    s.coeff(n) * BigRat::from_integer(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn multicore_values() {
        assert_eq!(mcore_coeff(1, 1), BigInt::from(1));
        assert_eq!(mcore_coeff(0, 0), BigInt::from(1));
        assert_eq!(mcore_coeff(2, 2), BigInt::from(6));
    }

    #[test]
    fn core_values() {
        assert_eq!(core_coeff(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(core_coeff(4, 4).unwrap(), BigInt::from(3));
        assert_eq!(core_coeff(4, 6).unwrap(), BigInt::from(1));
        assert_eq!(core_coeff(2, 1).unwrap(), BigInt::from(0));
        assert_eq!(core_coeff(0, 0).unwrap(), BigInt::from(1));
    }

    #[test]
    fn excess_zero_is_one() {
        for tag in [FamilyTag::MGpos, FamilyTag::SGpos] {
            let f = ExcessSeriesFamily::build(tag, 2, 10, Route::CoreComposition).unwrap();
            assert_eq!(f.get(0), &ExactSeries::one(10));
        }
    }

    #[test]
    fn first_excess_counts() {
        let mg = mgpos_series(1, 6).unwrap();
        assert_eq!(multigraph_count(&mg, 1, 1), rat(1, 1));
        let sg = sgpos_series(1, 6).unwrap();
        assert_eq!(sg.egf_counts().unwrap()[4], BigInt::from(6));
        let sg2 = sgpos_series(2, 6).unwrap();
        assert_eq!(sg2.egf_counts().unwrap()[4], BigInt::from(1));
    }

    #[test]
    fn routes_agree_at_moderate_order() {
        for k in 1..=4 {
            mgpos_series(k, 14).unwrap();
            sgpos_series(k, 14).unwrap();
        }
    }

    #[test]
    fn graphs_below_multigraphs() {
        let mg = ExcessSeriesFamily::build(FamilyTag::MGpos, 4, 30, Route::CoreComposition).unwrap();
        let sg = ExcessSeriesFamily::build(FamilyTag::SGpos, 4, 30, Route::CoreComposition).unwrap();
        for k in 1..=4 {
            for n in 0..=30 {
                assert!(sg.get(k).coeff(n) <= mg.get(k).coeff(n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn sgpos_form_pole_bound() {
        for k in 1..=5 {
            let v = sgpos_tform(k).unwrap();
            assert!(v.half_pole() % 2 == 0 && v.half_pole() <= 6 * k as i64);
        }
    }

    #[test]
    fn tree_power_table() {
        let t = crate::series::tree_series(9);
        let tp = tree_powers(9);
        let mut pw = ExactSeries::one(9);
        for row in tp.iter().take(5) {
            assert_eq!(pw.coeffs(), &row[..]);
            pw = &pw * &t;
        }
        assert_eq!(tp[2][3].to_f64(), Some(2.0));
    }
}
