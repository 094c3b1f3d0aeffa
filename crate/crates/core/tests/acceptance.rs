//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use conngraph::arith::{binomial, factorial, rat, BigRat};
use conngraph::asymptotics::c1::relative_gaps;
use conngraph::asymptotics::sqdk::{const_bound_sweep, exp_bound_sweep};
use conngraph::asymptotics::{fixed_excess_error, fixed_excess_exact, saddle_identities, solve_saddle, HpFloat};
use conngraph::brute::{enumerate, ie_truncated_check, projection_fibers, Budget, Kind};
use conngraph::connected::{cmg_exact, connected_counts, csg_exact, positive_counts, projection_factor_check, Family, RecurrenceTable};
use conngraph::kernel::mgpos_tform;
use conngraph::patchwork::patchwork_excess_poly;
use conngraph::positive::{sgpos_tform, ExcessSeriesFamily, FamilyTag, Route};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use std::path::PathBuf;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("CONNGRAPH_CACHE_DIR").map(PathBuf::from)
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

fn golden_matches(k: usize, table: &[(usize, usize, i64, i64)]) -> Result<(), String> {
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
                return Err(format!("k={k} z^{zi} u^{ui}: got {c}, printed {want}"));
            }
            if *c != rat(0, 1) {
                seen += 1;
            }
        }
    }
    if seen != table.len() {
        return Err(format!("k={k}: {seen} nonzero terms, printed {}", table.len()));
    }
    Ok(())
}

fn crit1() -> Outcome {
    for (k, t) in [(0, P0), (1, P1), (2, P2), (3, P3)] {
        if let Err(e) = golden_matches(k, t) {
            return outcome(false, e);
        }
    }
    outcome(true, "P_0..P_3 equal the printed tables term by term")
}

fn crit2() -> Outcome {
    let (n_max, k_max) = (25usize, 12i64);
    let gf = match connected_counts(Family::Csg, n_max, k_max as usize) {
        Ok(g) => g,
        Err(e) => return outcome(false, e.to_string()),
    };
    let rec = RecurrenceTable::load_or_build(Family::Csg, n_max, n_max + k_max as usize, cache_dir().as_deref()).unwrap();
    let budget = Budget::default();
    let mut cells = 0;
    let mut brute_cells = 0;
    for n in 1..=n_max {
        for k in -1..=k_max {
            let m = n as i64 + k;
            if m > (n * (n - 1) / 2) as i64 {
                continue;
            }
            let m = m as usize;
            let a = gf.get(n, k);
            if a != rec.get(n, m) {
                return outcome(false, format!("n={n} k={k}: excess-gf {a} vs recurrence {}", rec.get(n, m)));
            }
            cells += 1;
            if n <= 6 {
                let b = enumerate(Kind::Graph, n, m, &budget, |g| g.is_connected()).unwrap();
                if BigInt::from(b) != *a {
                    return outcome(false, format!("n={n} k={k}: brute {b} vs {a}"));
                }
                brute_cells += 1;
            }
        }
    }
    let spot = [(4, 2, 1), (4, 1, 6), (4, -1, 16)]
        .iter()
        .all(|&(n, k, c)| csg_exact(n, k).map(|r| r.count == BigInt::from(c)).unwrap_or(false));
    outcome(spot, format!("{cells} cells agree with the recurrence, {brute_cells} with brute force"))
}

fn crit3() -> Outcome {
    let (n_max, k_max) = (20usize, 10i64);
    let gf = match connected_counts(Family::Cmg, n_max, k_max as usize) {
        Ok(g) => g,
        Err(e) => return outcome(false, e.to_string()),
    };
    let rec = RecurrenceTable::load_or_build(Family::Cmg, n_max, n_max + k_max as usize, cache_dir().as_deref()).unwrap();
    let budget = Budget::default();
    let mut cells = 0;
    let mut brute_cells = 0;
    for n in 1..=n_max {
        for k in -1..=k_max {
            let m = (n as i64 + k) as usize;
            let a = gf.get(n, k);
            if a != rec.get(n, m) {
                return outcome(false, format!("n={n} k={k}: excess-gf {a} vs recurrence {}", rec.get(n, m)));
            }
            cells += 1;
            if n <= 3 && m <= 5 {
                let b = enumerate(Kind::Multigraph, n, m, &budget, |g| g.is_connected()).unwrap();
                if BigInt::from(b) != *a {
                    return outcome(false, format!("n={n} k={k}: brute {b} vs {a}"));
                }
                brute_cells += 1;
            }
        }
    }
    let spot = [(1, 1, 1), (2, 1, 56), (3, -1, 24)]
        .iter()
        .all(|&(n, k, c)| cmg_exact(n, k).map(|r| r.count == BigInt::from(c)).unwrap_or(false));
    outcome(spot, format!("{cells} cells agree with the recurrence, {brute_cells} with brute force"))
}

fn crit4() -> Outcome {
    let order = 40;
    let k_max = 6;
    for (tag, name) in [(FamilyTag::MGpos, "mgpos"), (FamilyTag::SGpos, "sgpos")] {
        for k in 1..=k_max {
            let f = if tag == FamilyTag::MGpos { mgpos_tform(k) } else { sgpos_tform(k) };
            let f = match f {
                Ok(f) => f,
                Err(e) => return outcome(false, format!("{name} k={k}: {e}")),
            };
            if f.half_pole() % 2 != 0 || f.half_pole() > 6 * k as i64 {
                return outcome(false, format!("{name} k={k}: pole {}/2", f.half_pole()));
            }
        }
        let a = ExcessSeriesFamily::build(tag, k_max, order, Route::WrightForm).unwrap();
        let b = ExcessSeriesFamily::build(tag, k_max, order, Route::CoreComposition).unwrap();
        for k in 1..=k_max {
            if a.get(k) != b.get(k) {
                return outcome(false, format!("{name} k={k}: routes differ"));
            }
        }
    }
    outcome(true, format!("integer poles <= 3k and identical series to z^{order} for k <= {k_max}"))
}

fn crit5() -> Outcome {
    let g = positive_counts(Family::SGpos, 30, 4, Route::CoreComposition).unwrap();
    let m = positive_counts(Family::MGpos, 30, 4, Route::CoreComposition).unwrap();
    for k in 0..=4 {
        for n in 0..=30 {
            let edges = n + k;
            let lifted = &g[k][n] * BigInt::from(2).pow(edges as u32) * factorial(edges);
            if lifted > m[k][n] {
                return outcome(false, format!("n={n} k={k}: {lifted} > {}", m[k][n]));
            }
        }
    }
    outcome(true, "2^m m! SG^{>0}_{n,k} <= MG^{>0}_{n,k} for k <= 4, n <= 30")
}

fn crit6() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    // the exact counts at n = 400, 1600 come from Lagrange extraction; confirm it against the recurrence first
    let g = RecurrenceTable::build(Family::Csg, 60, 61).unwrap();
    let mm = RecurrenceTable::build(Family::Cmg, 40, 41).unwrap();
    for n in 1..=60 {
        if fixed_excess_exact(n, 1, Family::Csg).unwrap() != BigRat::from_integer(g.get(n, n + 1).clone()) {
            return outcome(false, format!("Lagrange csg n={n} disagrees with recurrence"));
        }
        if n <= 40 {
            let w = BigInt::from(2).pow((n + 1) as u32) * factorial(n + 1);
            if fixed_excess_exact(n, 1, Family::Cmg).unwrap() * BigRat::from_integer(w) != BigRat::from_integer(mm.get(n, n + 1).clone()) {
                return outcome(false, format!("Lagrange cmg n={n} disagrees with recurrence"));
            }
        }
    }
    for f in [Family::Csg, Family::Cmg] {
        let a = fixed_excess_error(400, 1, f, 256).unwrap().to_f64();
        let b = fixed_excess_error(1600, 1, f, 256).unwrap().to_f64();
        let q = b / a;
        pass &= (0.35..=0.70).contains(&q);
        detail.push(format!("{}: e(400)={a:.4e} e(1600)={b:.4e} ratio={q:.4}", f.name()));
    }
    outcome(pass, detail.join("; "))
}

fn crit7() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for (f, grid) in [(Family::Csg, [30usize, 60, 120]), (Family::Cmg, [20, 40, 80])] {
        let r: Vec<f64> = relative_gaps(f, 1, 1, &grid, 256, cache_dir().as_deref())
            .unwrap()
            .iter()
            .map(|x| x.to_f64().abs())
            .collect();
        let q = r[2] / r[1];
        pass &= r[0] > r[1] && r[1] > r[2] && (0.35..=0.70).contains(&q);
        detail.push(format!("{}: r={:.4e},{:.4e},{:.4e} ratio={q:.4}", f.name(), r[0], r[1], r[2]));
    }
    outcome(pass, detail.join("; "))
}

fn crit8() -> Outcome {
    // every connected multigraph of positive excess is a positive-excess multigraph, so
    // MGpos/CMG >= 1; the interval [1 - 5/n, 1] is checked on CMG/MGpos
    let pos = positive_counts(Family::MGpos, 80, 80, Route::CoreComposition).unwrap();
    let conn = connected_counts(Family::Cmg, 80, 80).unwrap();
    let rec = RecurrenceTable::load_or_build(Family::Cmg, 80, 160, cache_dir().as_deref()).unwrap();
    let mut pass = true;
    let mut detail = Vec::new();
    for n in [20usize, 40, 80] {
        if conn.get(n, n as i64) != rec.get(n, 2 * n) {
            return outcome(false, format!("n={n}: CMG routes differ"));
        }
        let r = BigRat::new(conn.get(n, n as i64).clone(), pos[n][n].clone());
        let lo = rat(n as i64 - 5, n as i64);
        pass &= r >= lo && r <= rat(1, 1);
        let x = HpFloat::from_rat(&r, 128).to_f64();
        detail.push(format!("n={n}: CMG/MGpos={x:.6} (MGpos/CMG={:.6})", 1.0 / x));
    }
    outcome(pass, detail.join("; "))
}

fn crit9() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20240611);
    let tol = HpFloat::parse("1e-30", 256);
    let mut worst = HpFloat::from_i64(0, 256);
    for _ in 0..20 {
        // log-uniform on [1/10, 10], as an exact rational
        let x: f64 = 10f64.powf(rng.random_range(-1.0..=1.0));
        let ratio = BigRat::new(BigInt::from((x * 1e6).round() as i64), BigInt::from(1_000_000));
        let s = match solve_saddle(&ratio, 256) {
            Ok(s) => s,
            Err(e) => return outcome(false, e.to_string()),
        };
        let m = saddle_identities(&s).max();
        if m > worst {
            worst = m;
        }
    }
    outcome(worst < tol, format!("max relative residual over 5 identities and 20 ratios: {}", worst.to_decimal(4)))
}

fn crit10() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for k in [20, 50, 100, 200] {
        let s = const_bound_sweep(k).unwrap();
        pass &= s.holds && s.s1_is_one;
        detail.push(format!("k={k} max S/3q={:.4}", s.max_ratio));
    }
    for k in [40, 41, 50, 64, 100] {
        let qs: Vec<usize> = (1..=k).collect();
        for d in 0..=2 {
            let s = exp_bound_sweep(k, d, &qs).unwrap();
            if !s.violations.is_empty() {
                pass = false;
                detail.push(format!("S_(q,k-{d},k) > 2^-k at k={k} q={:?}", s.violations));
            }
        }
    }
    outcome(pass, detail.join(", ") + ", exponential bound holds for d <= 2, k in {40,41,50,64,100}")
}

fn crit11() -> Outcome {
    let budget = Budget::default();
    let mut checks = 0;
    let mut simple = 0;
    for n in 1..=2 {
        for m in 0..=4 {
            for d in 0..=3 {
                let c = match ie_truncated_check(n, m, d, &budget) {
                    Ok(c) => c,
                    Err(e) => return outcome(false, e.to_string()),
                };
                if !c.passed {
                    return outcome(false, format!("n={n} m={m} d={d}: brute {} series {}", c.brute, c.series));
                }
                checks += 1;
                let k = m as i64 - n as i64;
                if k >= 0 && d as i64 > k {
                    if c.simple.as_ref() != Some(&c.series) {
                        return outcome(false, format!("n={n} m={m} d={d}: simple count differs"));
                    }
                    simple += 1;
                }
            }
        }
    }
    outcome(true, format!("{checks} cases pass, {simple} of them against the simple-graph count"))
}

fn crit12() -> Outcome {
    let budget = Budget::default();
    for n in 1..=4 {
        for m in 0..=4 {
            if !projection_factor_check(n, m, &budget).unwrap() {
                return outcome(false, format!("n={n} m={m}"));
            }
        }
    }
    let f = projection_fibers(3, 2, &budget).unwrap();
    let ok = f.len() as u64 == 3 && f.values().all(|&c| c == 8) && binomial(3, 2) == BigInt::from(3);
    outcome(ok, format!("n <= 4, m <= 4 exhaustive; n=3 m=2 has {} fibers of size 8", f.len()))
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, fn() -> Outcome)> = vec![
        (1, "golden patchwork polynomials", Duration::from_secs(10), crit1),
        (2, "graph routes agree", Duration::from_secs(300), crit2),
        (3, "multigraph routes agree", Duration::from_secs(300), crit3),
        (4, "Wright-form structure", Duration::MAX, crit4),
        (5, "coefficient-wise domination", Duration::MAX, crit5),
        (6, "fixed-excess convergence", Duration::from_secs(120), crit6),
        (7, "large-excess dominant term", Duration::MAX, crit7),
        (8, "connectivity dominance", Duration::MAX, crit8),
        (9, "saddle identities", Duration::from_secs(10), crit9),
        (10, "double-factorial sweeps", Duration::from_secs(60), crit10),
        (11, "inclusion-exclusion identity", Duration::MAX, crit11),
        (12, "projection factor", Duration::MAX, crit12),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        let dt = t.elapsed();
        let in_time = dt <= limit;
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        let time_note = if in_time { String::new() } else { format!(" [over the {}s limit]", limit.as_secs()) };
        println!(
            "criterion {id:>2} {:<4} {name} ({:.1}s){time_note}: {}",
            if pass { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
