//! Exact counts of connected graphs and multigraphs by excess.
//!
//! The excess-generating-function route takes the positive-excess series
//! and applies `C_k = [y^k] log(1 + sum_l F_l y^l)`. The logarithm runs on
//! integer count sequences, where the product of two excess slices is a
//! labeled convolution (binomial in vertices, and also in edges for
//! multigraphs) and the recurrence `k C_k = k F_k - sum_j j C_j F_{k-j}`
//! divides exactly.
//!
//! Two classical recurrences on the component containing vertex 1 serve as
//! independent oracles.

use crate::arith::{binomial, factorial, pow_int, BigRat};
use crate::brute::{projection_fibers, Budget};
use crate::error::{Error, Result};
use crate::positive::{ExcessSeriesFamily, FamilyTag, Route};
use crate::series::{unicycle_series, ExactSeries};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Csg,
    Cmg,
    SGpos,
    MGpos,
}

impl Family {
    pub fn is_multigraph(self) -> bool {
        matches!(self, Family::Cmg | Family::MGpos)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Csg => "csg",
            Family::Cmg => "cmg",
            Family::SGpos => "sgpos",
            Family::MGpos => "mgpos",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountRoute {
    ExcessGf,
    Recurrence,
    BruteForce,
}

fn big_as_string<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    pub family: Family,
    pub n: usize,
    pub k: i64,
    #[serde(serialize_with = "big_as_string")]
    pub count: BigInt,
    pub route: CountRoute,
}

/// Counts indexed by excess `k >= -1` and vertex count `n`.
#[derive(Clone, Debug)]
pub struct ExcessCounts {
    pub family: Family,
    pub n_max: usize,
    pub k_max: usize,
    /// `rows[k + 1][n]`.
    rows: Vec<Vec<BigInt>>,
}

impl ExcessCounts {
    pub fn get(&self, n: usize, k: i64) -> &BigInt {
        &self.rows[(k + 1) as usize][n]
    }

    pub fn record(&self, n: usize, k: i64) -> CountRecord {
        CountRecord { family: self.family, n, k, count: self.get(n, k).clone(), route: CountRoute::ExcessGf }
    }
}

/// Pascal triangle rows `0..=n`.
pub fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut r = vec![BigInt::one(); i + 1];
        for j in 1..i {
            r[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(r);
    }
    rows
}

/// Per-excess integer counts `n! [z^n] F` (graphs) or `n! 2^m m! [z^n] F` (multigraphs).
fn series_to_counts(s: &ExactSeries, k: usize, multigraph: bool) -> Result<Vec<BigInt>> {
    (0..=s.order())
        .map(|n| {
            let mut w = factorial(n);
            if multigraph {
                w *= BigInt::from(2).pow((n + k) as u32) * factorial(n + k);
            }
            let v = s.coeff(n) * BigRat::from_integer(w);
            crate::arith::as_integer(&v).ok_or_else(|| Error::NonIntegral(format!("n={n} k={k}: {v}")))
        })
        .collect()
}

/// `MG^{>0}` or `SG^{>0}` counts, `table[k][n]` for `0 <= k <= k_max`.
pub fn positive_counts(family: Family, n_max: usize, k_max: usize, route: Route) -> Result<Vec<Vec<BigInt>>> {
    let (tag, multi) = match family {
        Family::MGpos | Family::Cmg => (FamilyTag::MGpos, true),
        Family::SGpos | Family::Csg => (FamilyTag::SGpos, false),
    };
    let fam = ExcessSeriesFamily::build(tag, k_max, n_max, route)?;
    (0..=k_max).map(|k| series_to_counts(fam.get(k), k, multi)).collect()
}

/// Labeled product of two excess slices with excesses `ka` and `kb`.
pub fn slice_product(a: &[BigInt], ka: usize, b: &[BigInt], kb: usize, multi: bool, pas: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n_max = a.len() - 1;
    (0..=n_max)
        .map(|n| {
            let mut acc = BigInt::zero();
            for s in 0..=n {
                if a[s].is_zero() || b[n - s].is_zero() {
                    continue;
                }
                let mut t = &pas[n][s] * &a[s] * &b[n - s];
                if multi {
                    t *= &pas[n + ka + kb][s + ka];
                }
                acc += t;
            }
            acc
        })
        .collect()
}

/// `[y^k] log(1 + sum_{l>=1} F_l y^l)` on count slices; `pos[0]` is the unit slice.
pub fn log_counts(pos: &[Vec<BigInt>], multi: bool) -> Result<Vec<Vec<BigInt>>> {
    let k_max = pos.len() - 1;
    let n_max = pos[0].len() - 1;
    let pas = pascal(2 * n_max + 2 * k_max + 1);
    let mut out: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n_max + 1]];
    for k in 1..=k_max {
        let mut acc: Vec<BigInt> = pos[k].iter().map(|v| v * BigInt::from(k)).collect();
        for j in 1..k {
            let p = slice_product(&out[j], j, &pos[k - j], k - j, multi, &pas);
            for (x, y) in acc.iter_mut().zip(p) {
                *x -= y * BigInt::from(j);
            }
        }
        let mut row = Vec::with_capacity(n_max + 1);
        for (n, v) in acc.into_iter().enumerate() {
            let (q, r) = v.div_rem(&BigInt::from(k));
            if !r.is_zero() {
                return Err(Error::NonIntegral(format!("connected count n={n} k={k}")));
            }
            row.push(q);
        }
        out.push(row);
    }
    Ok(out)
}

/// Connected counts for `k = -1..=k_max`, `n <= n_max`, by the excess-gf route.
pub fn connected_counts(family: Family, n_max: usize, k_max: usize) -> Result<ExcessCounts> {
    let multi = match family {
        Family::Csg => false,
        Family::Cmg => true,
        _ => return Err(Error::InvalidArgument("connected counts need csg or cmg".into())),
    };
    let mut rows = Vec::with_capacity(k_max + 2);
    rows.push(
        (0..=n_max)
            .map(|n| if n == 0 { BigInt::zero() } else { tree_count(n, multi) })
            .collect(),
    );
    let uni = unicycle_series(n_max);
    rows.push(series_to_counts(if multi { &uni.mv } else { &uni.v }, 0, multi)?);
    if k_max >= 1 {
        let pos = positive_counts(family, n_max, k_max, Route::CoreComposition)?;
        let logs = log_counts(&pos, multi)?;
        rows.extend(logs.into_iter().skip(1));
    }
    Ok(ExcessCounts { family, n_max, k_max, rows })
}

fn tree_count(n: usize, multi: bool) -> BigInt {
    let t = if n == 1 { BigInt::one() } else { pow_int(&BigInt::from(n), n - 2) };
    if multi {
        t * BigInt::from(2).pow((n - 1) as u32) * factorial(n - 1)
    } else {
        t
    }
}

fn check_args(n: usize, k: i64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if k < -1 {
        return Err(Error::InvalidExcess(k));
    }
    Ok(())
}

pub fn csg_exact(n: usize, k: i64) -> Result<CountRecord> {
    check_args(n, k)?;
    Ok(connected_counts(Family::Csg, n, k.max(0) as usize)?.record(n, k))
}

pub fn cmg_exact(n: usize, k: i64) -> Result<CountRecord> {
    check_args(n, k)?;
    Ok(connected_counts(Family::Cmg, n, k.max(0) as usize)?.record(n, k))
}

/// Literal composition sum `sum_q (-1)^{q+1}/q sum_{k_1+..+k_q=k} prod F_{k_j}`.
pub fn composition_log_literal(terms: &[ExactSeries], k: usize) -> ExactSeries {
    let order = terms[1].order();
    let mut total = ExactSeries::zero(order);
    fn walk(terms: &[ExactSeries], left: usize, acc: &ExactSeries, q: usize, total: &mut ExactSeries) {
        if left == 0 {
            let c = BigRat::new(BigInt::from(if q % 2 == 1 { 1 } else { -1 }), BigInt::from(q));
            *total = &*total + &acc.scale(&c);
            return;
        }
        for part in 1..=left {
            walk(terms, left - part, &(acc * &terms[part]), q + 1, total);
        }
    }
    if k >= 1 {
        walk(terms, k, &ExactSeries::one(order), 0, &mut total);
    }
    total
}

/// `log(1 + sum F_l y^l)` over exact series.
pub fn log_in_y_series(terms: &[ExactSeries]) -> Vec<ExactSeries> {
    let order = terms[0].order();
    let k_max = terms.len() - 1;
    let mut out = vec![ExactSeries::zero(order); k_max + 1];
    for k in 1..=k_max {
        let mut acc = terms[k].scale(&BigRat::from_integer(BigInt::from(k)));
        for j in 1..k {
            acc = &acc - &(&out[j] * &terms[k - j]).scale(&BigRat::from_integer(BigInt::from(j)));
        }
        out[k] = acc.scale(&BigRat::new(BigInt::one(), BigInt::from(k)));
    }
    out
}

const CACHE_VERSION: u32 = 1;

/// Connected counts `c(n, m)` from the classical recurrences, `rows[n][m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceTable {
    pub family: Family,
    pub n_max: usize,
    pub m_max: usize,
    rows: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    family: Family,
    n_max: usize,
    m_max: usize,
    rows: Vec<Vec<String>>,
}

impl RecurrenceTable {
    pub fn get(&self, n: usize, m: usize) -> &BigInt {
        &self.rows[n][m]
    }

    pub fn build(family: Family, n_max: usize, m_max: usize) -> Result<Self> {
        let rows = match family {
            Family::Csg => csg_recurrence_rows(n_max, m_max),
            Family::Cmg => cmg_recurrence_rows(n_max, m_max),
            _ => return Err(Error::InvalidArgument("recurrence oracle covers csg and cmg".into())),
        };
        Ok(RecurrenceTable { family, n_max, m_max, rows })
    }

    pub fn cache_path(dir: &Path, family: Family, n_max: usize, m_max: usize) -> PathBuf {
        dir.join(format!("{}_n{}_m{}.v{}.json", family.name(), n_max, m_max, CACHE_VERSION))
    }

    pub fn to_json(&self) -> String {
        let f = CacheFile {
            version: CACHE_VERSION,
            family: self.family,
            n_max: self.n_max,
            m_max: self.m_max,
            rows: self.rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        };
        serde_json::to_string(&f).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: CacheFile = serde_json::from_str(s).map_err(|e| Error::Cache(e.to_string()))?;
        if f.version != CACHE_VERSION {
            return Err(Error::Cache(format!("version {} is not {}", f.version, CACHE_VERSION)));
        }
        let rows = f
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.parse::<BigInt>().map_err(|e| Error::Cache(e.to_string()))).collect())
            .collect::<Result<Vec<Vec<BigInt>>>>()?;
        if rows.len() != f.n_max + 1 || rows.iter().any(|r| r.len() != f.m_max + 1) {
            return Err(Error::Cache("table shape does not match its header".into()));
        }
        Ok(RecurrenceTable { family: f.family, n_max: f.n_max, m_max: f.m_max, rows })
    }

    /// Reads the table from `dir` if present, otherwise builds and stores it.
    pub fn load_or_build(family: Family, n_max: usize, m_max: usize, dir: Option<&Path>) -> Result<Self> {
        let Some(dir) = dir else {
            return Self::build(family, n_max, m_max);
        };
        let path = Self::cache_path(dir, family, n_max, m_max);
        if let Ok(s) = std::fs::read_to_string(&path) {
            return Self::from_json(&s);
        }
        let t = Self::build(family, n_max, m_max)?;
        std::fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, t.to_json()).map_err(|e| Error::Cache(e.to_string()))?;
        std::fs::rename(&tmp, &path).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(t)
    }
}

fn csg_recurrence_rows(n_max: usize, m_max: usize) -> Vec<Vec<BigInt>> {
    let pairs = |n: usize| (n * n.saturating_sub(1) / 2) as u64;
    let totals: Vec<Vec<BigInt>> = (0..=n_max)
        .map(|n| (0..=m_max).map(|m| binomial(pairs(n), m as u64)).collect())
        .collect();
    let mut c: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m_max + 1]];
    for n in 1..=n_max {
        let mut row = totals[n].clone();
        for s in 1..n {
            let b = binomial(n as u64 - 1, s as u64 - 1);
            let rest = &totals[n - s];
            let j_lo = s - 1;
            let j_hi = (pairs(s) as usize).min(m_max);
            for (m, slot) in row.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                let lo = j_lo.max(m.saturating_sub(pairs(n - s) as usize));
                for j in lo..=j_hi.min(m) {
                    acc += &c[s][j] * &rest[m - j];
                }
                if !acc.is_zero() {
                    *slot -= acc * &b;
                }
            }
        }
        c.push(row);
    }
    c
}

fn cmg_recurrence_rows(n_max: usize, m_max: usize) -> Vec<Vec<BigInt>> {
    let pas = pascal(m_max);
    // totals[n][e] = n^{2e}
    let totals: Vec<Vec<BigInt>> = (0..=n_max)
        .map(|n| {
            let sq = BigInt::from(n * n);
            let mut r = vec![BigInt::one(); m_max + 1];
            for e in 1..=m_max {
                r[e] = &r[e - 1] * &sq;
            }
            r
        })
        .collect();
    let mut c: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m_max + 1]];
    for n in 1..=n_max {
        let mut row = totals[n].clone();
        for s in 1..n {
            let b = binomial(n as u64 - 1, s as u64 - 1);
            for (m, slot) in row.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for j in (s - 1)..=m {
                    acc += &pas[m][j] * &c[s][j] * &totals[n - s][m - j];
                }
                if !acc.is_zero() {
                    *slot -= acc * &b;
                }
            }
        }
        c.push(row);
    }
    c
}

pub fn csg_recurrence_oracle(n: usize, m: usize) -> BigInt {
    RecurrenceTable::build(Family::Csg, n, m).expect("csg table").get(n, m).clone()
}

pub fn cmg_recurrence_oracle(n: usize, m: usize) -> BigInt {
    RecurrenceTable::build(Family::Cmg, n, m).expect("cmg table").get(n, m).clone()
}

/// Every simple graph lifts to exactly `2^m m!` multigraphs, and every graph occurs.
pub fn projection_factor_check(n: usize, m: usize, budget: &Budget) -> Result<bool> {
    let fibers = projection_fibers(n, m, budget)?;
    let size = BigInt::from(2).pow(m as u32) * factorial(m);
    let graphs = binomial((n * n.saturating_sub(1) / 2) as u64, m as u64);
    Ok(BigInt::from(fibers.len()) == graphs && fibers.values().all(|&c| BigInt::from(c) == size))
}
