//! Patchworks: sets of loops and double edges glued into a multigraph.
//!
//! The trivariate series `P(z, w, u)` marks vertices by `z`, edges by `w`
//! and parts by `u`. It is obtained from the graph series as
//! `P = e^{-z} sum_n z^n/n! e^{n u w/2} (SG(w,u) e^{-w})^{C(n,2)}`,
//! which is the composition `SG(z e^{uw/2}, SG(w,u) e^{-w} - 1) e^{-z}`
//! written out row by row.

use crate::arith::{binomial, factorials, rat, rat_int, rat_to_string, BigRat};
use crate::kernel::{TRational, XSeries};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// Truncated table of `[z^n w^m] P(z, w, u)` as polynomials in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrivariateSlice {
    pub nz: usize,
    pub nw: usize,
    coeffs: Vec<Vec<Poly>>,
}

impl TrivariateSlice {
    pub fn coeff(&self, n: usize, m: usize) -> &Poly {
        &self.coeffs[n][m]
    }

    /// `n! 2^m m! [u^p z^n w^m] P`, the number of patchworks with `p` parts.
    pub fn count(&self, n: usize, m: usize, p: usize) -> BigRat {
        let f = factorials(n.max(m));
        let w = BigInt::from(2).pow(m as u32) * &f[m] * &f[n];
        self.coeffs[n][m].coeff(p) * BigRat::from_integer(w)
    }
}

type WSeries = Vec<Poly>;

fn w_mul(a: &WSeries, b: &WSeries, order: usize) -> WSeries {
    let mut out = vec![Poly::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// `a^e` for a series with constant term 1, by the power recurrence.
fn w_pow(a: &WSeries, e: u64, order: usize) -> WSeries {
    let mut f = vec![Poly::zero(); order + 1];
    f[0] = Poly::one();
    let e1 = BigInt::from(e) + 1;
    for m in 1..=order {
        let mut acc = Poly::zero();
        for j in 1..=m.min(a.len() - 1) {
            if a[j].is_zero() {
                continue;
            }
            let w = BigRat::from_integer(&e1 * BigInt::from(j) - BigInt::from(m));
            acc = &acc + &(&a[j] * &f[m - j]).scale(&w);
        }
        f[m] = acc.scale(&rat(1, m as i64));
    }
    f
}

/// `exp(c u w)` for a rational `c`.
fn w_exp_linear(c: &BigRat, order: usize) -> WSeries {
    let f = factorials(order);
    let mut out = Vec::with_capacity(order + 1);
    let mut cp = BigRat::one();
    for (j, fj) in f.iter().enumerate() {
        out.push(Poly::monomial(&cp / BigRat::from_integer(fj.clone()), j));
        cp *= c;
    }
    out
}

pub fn patchwork_gf(nz: usize, nw: usize) -> TrivariateSlice {
    let f = factorials(nz.max(nw));
    let one_plus_u = Poly::from_ints(&[1, 1]);
    // SG(w, u) e^{-w}
    let sg: WSeries = (0..=nw)
        .map(|j| {
            one_plus_u
                .pow(j * j.saturating_sub(1) / 2)
                .scale(&BigRat::new(BigInt::one(), f[j].clone()))
        })
        .collect();
    let em: WSeries = (0..=nw)
        .map(|j| {
            let s = if j % 2 == 0 { 1 } else { -1 };
            Poly::constant(BigRat::new(BigInt::from(s), f[j].clone()))
        })
        .collect();
    let d = w_mul(&sg, &em, nw);
    // rows[n] = n! [z^n] (P e^z)
    let rows: Vec<WSeries> = (0..=nz)
        .map(|n| {
            let pairs = (n * n.saturating_sub(1) / 2) as u64;
            let dn = w_pow(&d, pairs, nw);
            w_mul(&dn, &w_exp_linear(&rat(n as i64, 2), nw), nw)
        })
        .collect();
    let mut coeffs = vec![vec![Poly::zero(); nw + 1]; nz + 1];
    for n in 0..=nz {
        for a in 0..=n {
            let sign = if (n - a) % 2 == 0 { 1 } else { -1 };
            let c = BigRat::new(BigInt::from(sign), &f[a] * &f[n - a]);
            for m in 0..=nw {
                if !rows[a][m].is_zero() {
                    coeffs[n][m] = &coeffs[n][m] + &rows[a][m].scale(&c);
                }
            }
        }
    }
    TrivariateSlice { nz, nw, coeffs }
}

/// `P_k^{>0}(z, u)`: coefficients by power of `z`, each a polynomial in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct PatchworkPoly {
    pub k: usize,
    pub coeffs: Vec<Poly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PatchworkRecord {
    pub k: usize,
    /// `z_coefficients[n][j]` is the coefficient of `z^n u^j`.
    pub z_coefficients: Vec<Vec<String>>,
}

impl PatchworkPoly {
    pub fn z_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|p| !p.is_zero())
    }

    pub fn eval_u(&self, u: &BigRat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|p| p.eval(u)).collect())
    }

    pub fn record(&self) -> PatchworkRecord {
        PatchworkRecord {
            k: self.k,
            z_coefficients: self
                .coeffs
                .iter()
                .map(|p| p.coeffs().iter().map(rat_to_string).collect())
                .collect(),
        }
    }

    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (n, p) in self.coeffs.iter().enumerate() {
            if !p.is_zero() {
                parts.push(format!("[{}]*z^{n}", p.display("u")));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// The excess-`k` diagonal of `P` divided by `P_0 = e^{uz/2 + uz^2/4}`, reduced mod `z^{k+3}`.
///
/// This is the tabulated form. A connected patchwork of excess `k` has at
/// most `k+2` vertices, but disjoint unions of several positive-excess parts
/// reach `3k` vertices, so for `k >= 2` this truncation drops terms. Use
/// [`patchwork_excess_poly_full`] when exact counts depend on the result.
pub fn patchwork_excess_poly(k: usize) -> PatchworkPoly {
    excess_poly_to(k, k + 2)
}

/// The full `P_k^{>0}(z, u)`, a polynomial of z-degree `3k`.
pub fn patchwork_excess_poly_full(k: usize) -> PatchworkPoly {
    excess_poly_to(k, 3 * k)
}

fn excess_poly_to(k: usize, top: usize) -> PatchworkPoly {
    let top = top.max(2);
    let slice = patchwork_gf(top, top + k);
    let diag: Vec<Poly> = (0..=top).map(|n| slice.coeff(n, n + k).clone()).collect();
    // exp(-u z/2 - u z^2/4) as a z-series with u-polynomial coefficients
    let g = [Poly::zero(), Poly::monomial(rat(-1, 2), 1), Poly::monomial(rat(-1, 4), 1)];
    let mut e = vec![Poly::zero(); top + 1];
    e[0] = Poly::one();
    for m in 1..=top {
        let mut acc = Poly::zero();
        for j in 1..=m.min(2) {
            acc = &acc + &(&g[j] * &e[m - j]).scale(&rat_int(j as i64));
        }
        e[m] = acc.scale(&rat(1, m as i64));
    }
    PatchworkPoly { k, coeffs: w_mul(&diag, &e, top) }
}

/// `P(t e^x, u)` as an x-series of order `order`.
pub fn patchwork_eval(poly: &PatchworkPoly, u: &BigRat, order: usize) -> XSeries {
    z_poly_eval(&poly.eval_u(u), order)
}

/// `p(t e^x)` as an x-series: the coefficient of `x^j` is `sum_n p_n n^j / j! t^n`.
pub fn z_poly_eval(p: &Poly, order: usize) -> XSeries {
    let f = factorials(order);
    let coeffs = (0..=order)
        .map(|j| {
            let c: Vec<BigRat> = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| c * BigRat::new(BigInt::from(n).pow(j as u32), f[j].clone()))
                .collect();
            TRational::poly(Poly::from_coeffs(c))
        })
        .collect();
    XSeries::from_coeffs(coeffs)
}

/// The full `P_k^{>0}(z, -1)` from the signed integer table.
pub fn signed_excess_poly(k: usize) -> Poly {
    let top = 3 * k;
    let pw = SignedPatchworks::new(top, top + k);
    let f = factorials(top + k);
    let diag: Vec<BigRat> = (0..=top)
        .map(|a| {
            let d = &f[a] * BigInt::from(2).pow((a + k) as u32) * &f[a + k];
            BigRat::new(pw.get(a, a + k).clone(), d)
        })
        .collect();
    let twist = crate::series::ExactSeries::from_poly(
        &Poly::from_coeffs(vec![BigRat::zero(), rat(1, 2), rat(1, 4)]),
        top,
    )
    .exp()
    .expect("zero constant term");
    let prod = &crate::series::ExactSeries::from_coeffs(diag) * &twist;
    Poly::from_coeffs(prod.coeffs().to_vec())
}

/// Signed patchwork counts at `u = -1`: `a! 2^m m! [z^a w^m] P(z, w, -1)`.
///
/// At `u = -1` we have `SG(w, -1) = 1 + w`, so each row is
/// `(1+w)^{C(n,2)} e^{-(C(n,2) + n/2) w}`, which satisfies a three-term
/// integer recurrence in `m`.
#[derive(Clone, Debug)]
pub struct SignedPatchworks {
    pub a_max: usize,
    pub m_max: usize,
    table: Vec<Vec<BigInt>>,
}

impl SignedPatchworks {
    pub fn new(a_max: usize, m_max: usize) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..=a_max)
            .map(|n| {
                let n_i = n as i64;
                let two_c = BigInt::from(n_i * (n_i - 1) + n_i);
                let mut s = vec![BigInt::one()];
                if m_max >= 1 {
                    s.push(BigInt::from(-n_i));
                }
                for m in 1..m_max {
                    let a = BigInt::from(-n_i - 2 * m as i64) * &s[m];
                    let b = BigInt::from(2 * m as i64) * &two_c * &s[m - 1];
                    s.push(a - b);
                }
                s
            })
            .collect();
        let table = (0..=a_max)
            .map(|a| {
                (0..=m_max)
                    .map(|m| {
                        let mut acc = BigInt::zero();
                        for (n, row) in rows.iter().enumerate().take(a + 1) {
                            let b = binomial(a as u64, n as u64) * &row[m];
                            if (a - n) % 2 == 0 {
                                acc += b;
                            } else {
                                acc -= b;
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        SignedPatchworks { a_max, m_max, table }
    }

    pub fn get(&self, a: usize, m: usize) -> &BigInt {
        &self.table[a][m]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[(i64, i64, usize)]) -> Poly {
        let mut p = Poly::zero();
        for &(n, d, e) in c {
            p = &p + &Poly::monomial(rat(n, d), e);
        }
        p
    }

    #[test]
    fn empty_patchwork_and_excess_zero() {
        let s = patchwork_gf(4, 6);
        assert_eq!(s.coeff(0, 0), &Poly::one());
        for n in 0..=4 {
            for m in 0..=6 {
                if (n, m) != (0, 0) {
                    assert_eq!(s.coeff(n, m).coeff(0), rat(0, 1), "n={n} m={m}");
                }
            }
        }
        assert_eq!(patchwork_excess_poly(0).coeffs, vec![Poly::one(), Poly::zero(), Poly::zero()]);
    }

    #[test]
    fn first_excess_polynomial() {
        let p = patchwork_excess_poly(1);
        assert_eq!(p.coeffs[0], Poly::zero());
        assert_eq!(p.coeffs[1], up(&[(1, 8, 2)]));
        assert_eq!(p.coeffs[2], up(&[(1, 12, 3), (1, 2, 2)]));
        assert_eq!(p.coeffs[3], up(&[(1, 8, 2)]));
    }

    #[test]
    fn full_polynomial_degree() {
        for k in 1..=3 {
            let full = patchwork_excess_poly_full(k);
            assert_eq!(full.z_degree(), Some(3 * k));
            // the top coefficient comes from k disjoint excess-1 parts on 3 vertices
            let top = &full.coeffs[3 * k];
            let expect = rat(1, 8).pow(k as i32) / BigRat::from_integer(crate::arith::factorial(k));
            assert_eq!(top, &Poly::monomial(expect, 2 * k));
            let short = patchwork_excess_poly(k);
            assert_eq!(&full.coeffs[..=k + 2], &short.coeffs[..]);
            assert_eq!(signed_excess_poly(k), full.eval_u(&rat(-1, 1)));
        }
        // a slice deep enough to see terms beyond 3k: they vanish
        let p = excess_poly_to(2, 9);
        assert!(p.coeffs[7..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn signed_table_matches_symbolic_slice() {
        let s = patchwork_gf(5, 9);
        let signed = SignedPatchworks::new(5, 9);
        let f = factorials(9);
        for a in 0..=5 {
            for m in 0..=9 {
                let v = s.coeff(a, m).eval(&rat(-1, 1))
                    * BigRat::from_integer(&f[a] * &f[m] * BigInt::from(2).pow(m as u32));
                assert_eq!(v, BigRat::from_integer(signed.get(a, m).clone()), "a={a} m={m}");
            }
        }
    }

    #[test]
    fn no_patchwork_has_negative_excess() {
        let signed = SignedPatchworks::new(12, 11);
        for a in 0..=12 {
            for m in 0..a.min(12) {
                assert!(signed.get(a, m).is_zero(), "a={a} m={m}");
            }
        }
    }
}
