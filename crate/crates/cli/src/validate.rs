//! Built-in consistency checks run by `conngraph validate`.

use conngraph::arith::rat;
use conngraph::asymptotics::{saddle_identities, solve_saddle};
use conngraph::brute::{enumerate, projection_fibers, Budget, Kind};
use conngraph::connected::{connected_counts, positive_counts, projection_factor_check, Family, RecurrenceTable};
use conngraph::patchwork::patchwork_excess_poly;
use conngraph::positive::Route;
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, r: Result<String, String>) -> Check {
    match r {
        Ok(detail) => Check { name: name.into(), passed: true, detail },
        Err(detail) => Check { name: name.into(), passed: false, detail },
    }
}

// (z power, u power, numerator, denominator), as printed
const P0: &[(usize, usize, i64, i64)] = &[(0, 0, 1, 1)];
const P1: &[(usize, usize, i64, i64)] = &[(1, 2, 1, 8), (2, 3, 1, 12), (2, 2, 1, 2), (3, 2, 1, 8)];
const P2: &[(usize, usize, i64, i64)] = &[
    (1, 3, 1, 48),
    (2, 2, 1, 16),
    (2, 3, 17, 24),
    (2, 4, 155, 384),
    (2, 5, 1, 8),
    (2, 6, 1, 48),
    (3, 3, 7, 16),
    (3, 4, 7, 48),
    (3, 5, 1, 96),
    (4, 3, 1, 12),
    (4, 4, 9, 64),
    (4, 5, 1, 24),
    (4, 6, 1, 288),
];
const P3: &[(usize, usize, i64, i64)] = &[
    (1, 4, 1, 384),
    (2, 3, 3, 16),
    (2, 4, 17, 16),
    (2, 5, 2461, 1920),
    (2, 6, 47, 48),
    (2, 7, 25, 48),
    (2, 8, 3, 16),
    (2, 9, 1, 24),
    (2, 10, 1, 240),
    (3, 3, 1, 12),
    (3, 4, 377, 384),
    (3, 5, 119, 192),
    (3, 6, 195, 1024),
    (3, 7, 7, 192),
    (3, 8, 1, 384),
    (4, 4, 43, 96),
    (4, 5, 1, 2),
    (4, 6, 625, 2304),
    (4, 7, 443, 4608),
    (4, 8, 1, 48),
    (4, 9, 1, 576),
    (5, 4, 7, 96),
    (5, 5, 61, 192),
    (5, 6, 443, 3072),
    (5, 7, 1, 36),
    (5, 8, 7, 2304),
];

fn golden(k: usize, table: &[(usize, usize, i64, i64)]) -> Result<(), String> {
    let p = patchwork_excess_poly(k);
    let mut seen = 0;
    for (zi, poly) in p.coeffs.iter().enumerate() {
        for (ui, c) in poly.coeffs().iter().enumerate() {
            let want = table
                .iter()
                .find(|e| e.0 == zi && e.1 == ui)
                .map(|e| rat(e.2, e.3))
                .unwrap_or_else(|| rat(0, 1));
            if *c != want {
                return Err(format!("k={k} z^{zi} u^{ui}: got {c}, expected {want}"));
            }
            if *c != rat(0, 1) {
                seen += 1;
            }
        }
    }
    if seen != table.len() {
        return Err(format!("k={k}: {seen} nonzero terms, expected {}", table.len()));
    }
    Ok(())
}

fn golden_tables() -> Result<String, String> {
    for (k, t) in [(0, P0), (1, P1), (2, P2), (3, P3)] {
        golden(k, t)?;
    }
    Ok("P_0..P_3 match term by term".into())
}

fn projection(budget: &Budget) -> Result<String, String> {
    let e = |e: conngraph::Error| e.to_string();
    if !projection_factor_check(3, 2, budget).map_err(e)? {
        return Err("n=3 m=2: fibers differ from 2^m m!".into());
    }
    let f = projection_fibers(3, 2, budget).map_err(e)?;
    if f.len() != 3 || f.values().any(|&c| c != 8) {
        return Err(format!("n=3 m=2: {} fibers", f.len()));
    }
    Ok("n=3 m=2: 3 graphs, 8 multigraphs each".into())
}

fn small_values() -> Result<String, String> {
    let e = |e: conngraph::Error| e.to_string();
    let g = connected_counts(Family::Csg, 4, 1).map_err(e)?;
    let m = connected_counts(Family::Cmg, 2, 1).map_err(e)?;
    let want = [(g.get(4, -1), 16), (g.get(4, 0), 15), (g.get(4, 1), 6), (m.get(2, 1), 56)];
    for (got, w) in want {
        if *got != BigInt::from(w) {
            return Err(format!("got {got}, expected {w}"));
        }
    }
    Ok("csg(4,-1)=16, csg(4,0)=15, csg(4,1)=6, cmg(2,1)=56".into())
}

/// Excess-series route against the recurrence for `n <= n_max`, `k <= k_max`.
fn gf_vs_recurrence(family: Family, n_max: usize, k_max: usize) -> Result<String, String> {
    let e = |e: conngraph::Error| e.to_string();
    let gf = connected_counts(family, n_max, k_max).map_err(e)?;
    let rec = RecurrenceTable::build(family, n_max, n_max + k_max).map_err(e)?;
    for n in 1..=n_max {
        for k in -1..=k_max as i64 {
            let a = gf.get(n, k);
            let b = rec.get(n, (n as i64 + k) as usize);
            if a != b {
                return Err(format!("n={n} k={k}: {a} vs {b}"));
            }
        }
    }
    Ok(format!("n <= {n_max}, k <= {k_max}"))
}

/// Excess-series, recurrence and exhaustive routes on every cell within budget.
fn triple_route(family: Family, n_max: usize, k_max: usize, budget: &Budget) -> Result<String, String> {
    let e = |e: conngraph::Error| e.to_string();
    let gf = connected_counts(family, n_max, k_max).map_err(e)?;
    let rec = RecurrenceTable::build(family, n_max, n_max + k_max).map_err(e)?;
    let kind = if family.is_multigraph() { Kind::Multigraph } else { Kind::Graph };
    let mut cells = 0;
    for n in 1..=n_max {
        for k in -1..=k_max as i64 {
            let m = (n as i64 + k) as usize;
            let brute = match enumerate(kind, n, m, budget, |g| g.is_connected()) {
                Ok(c) => BigInt::from(c),
                Err(conngraph::Error::BudgetExceeded(_)) => continue,
                Err(x) => return Err(x.to_string()),
            };
            let (a, b) = (gf.get(n, k), rec.get(n, m));
            if *a != brute || *b != brute {
                return Err(format!("n={n} k={k}: {a}, {b}, {brute}"));
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells agree"))
}

/// Both positive-excess routes against exhaustive enumeration.
fn positive_routes(family: Family, n_max: usize, k_max: usize, budget: &Budget) -> Result<String, String> {
    let e = |e: conngraph::Error| e.to_string();
    let a = positive_counts(family, n_max, k_max, Route::WrightForm).map_err(e)?;
    let b = positive_counts(family, n_max, k_max, Route::CoreComposition).map_err(e)?;
    let kind = if family.is_multigraph() { Kind::Multigraph } else { Kind::Graph };
    let mut cells = 0;
    for k in 0..=k_max {
        for n in 1..=n_max {
            if a[k][n] != b[k][n] {
                return Err(format!("n={n} k={k}: routes give {} and {}", a[k][n], b[k][n]));
            }
            match enumerate(kind, n, n + k, budget, |g| g.all_positive_excess()) {
                Ok(c) if BigInt::from(c) == a[k][n] => cells += 1,
                Ok(c) => return Err(format!("n={n} k={k}: {} vs brute {c}", a[k][n])),
                Err(conngraph::Error::BudgetExceeded(_)) => {}
                Err(x) => return Err(x.to_string()),
            }
        }
    }
    Ok(format!("routes agree for n <= {n_max}, k <= {k_max}; {cells} cells enumerated"))
}

fn saddle(ratios: &[(i64, i64)]) -> Result<String, String> {
    let mut worst = 0.0f64;
    for &(a, b) in ratios {
        let s = solve_saddle(&rat(a, b), 192).map_err(|e| e.to_string())?;
        let m = saddle_identities(&s).max().to_f64();
        if !(m < 1e-40) {
            return Err(format!("ratio {a}/{b}: residual {m:e}"));
        }
        worst = worst.max(m);
    }
    Ok(format!("{} ratios, max residual {worst:.1e}", ratios.len()))
}

pub fn run(full: bool, budget: &Budget) -> Vec<Check> {
    let mut out = vec![
        check("golden patchwork tables", golden_tables()),
        check("projection factor", projection(budget)),
        check("small values", small_values()),
        check("csg series vs recurrence", gf_vs_recurrence(Family::Csg, 12, 12)),
        check("cmg series vs recurrence", gf_vs_recurrence(Family::Cmg, 8, 8)),
        check("saddle identities", saddle(&[(1, 10), (1, 2), (1, 1), (3, 1)])),
    ];
    if full {
        out.extend([
            check("csg triple route", triple_route(Family::Csg, 7, 14, budget)),
            check("cmg triple route", triple_route(Family::Cmg, 4, 4, budget)),
            check("sgpos routes", positive_routes(Family::SGpos, 7, 8, budget)),
            check("mgpos routes", positive_routes(Family::MGpos, 4, 3, budget)),
            check("csg series vs recurrence, wide", gf_vs_recurrence(Family::Csg, 40, 40)),
            check("cmg series vs recurrence, wide", gf_vs_recurrence(Family::Cmg, 30, 30)),
            check("saddle identities, wide", saddle(&[(1, 100), (1, 7), (2, 3), (5, 4), (7, 1), (10, 1)])),
        ]);
    }
    out
}
