//! Command-line front end for exact counts, tables, validation and asymptotics.

mod output;
mod validate;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conngraph::asymptotics::{self, HpFloat};
use conngraph::brute::{enumerate, Budget, Kind};
use conngraph::connected::{connected_counts, positive_counts, CountRecord, CountRoute, Family, RecurrenceTable};
use conngraph::kernel::{wright_polys, WrightFamily};
use conngraph::patchwork::{patchwork_excess_poly, patchwork_excess_poly_full};
use conngraph::positive::Route;
use conngraph::{Error, Result};
use num_bigint::BigInt;
use output::{json, write_records, Format};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact counts beyond this size are refused with exit code 3.
const EXACT_N_MAX: usize = 200;
const EXACT_K_MAX: i64 = 200;

#[derive(Parser, Debug)]
#[command(name = "conngraph", version, about = "Connected graphs and multigraphs counted by excess")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Directory for cached recurrence tables (overrides CONNGRAPH_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Largest vertex count for brute-force graph enumeration.
    #[arg(long, global = true, default_value_t = Budget::default().graph_n_max)]
    budget_graph_n: usize,
    /// Largest number of edge sequences for brute-force multigraph enumeration.
    #[arg(long, global = true, default_value_t = Budget::default().multigraph_max)]
    budget_multigraph: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

impl Global {
    fn budget(&self) -> Budget {
        Budget { graph_n_max: self.budget_graph_n, multigraph_max: self.budget_multigraph }
    }

    fn cache(&self) -> Option<PathBuf> {
        self.cache_dir.clone().or_else(|| std::env::var_os("CONNGRAPH_CACHE_DIR").map(PathBuf::from))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Csg,
    Cmg,
    Sgpos,
    Mgpos,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Csg => Family::Csg,
            FamilyArg::Cmg => Family::Cmg,
            FamilyArg::Sgpos => Family::SGpos,
            FamilyArg::Mgpos => Family::MGpos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    ExcessGf,
    Recurrence,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WrightArg {
    Mg,
    Sg,
    Cmg,
    Csg,
}

/// Inclusive integer range written `a..b`, or a single integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Span {
    lo: i64,
    hi: i64,
}

fn parse_span(s: &str) -> std::result::Result<Span, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim_start_matches('=').trim()),
        None => (s.trim(), s.trim()),
    };
    let lo: i64 = lo.parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: i64 = hi.parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(Span { lo, hi })
}

fn parse_precision(s: &str) -> std::result::Result<usize, String> {
    let p: usize = s.parse().map_err(|_| format!("bad precision {s:?}"))?;
    if p < 64 {
        return Err("precision must be at least 64 bits".into());
    }
    Ok(p)
}

/// Comma-separated list of vertex counts.
#[derive(Clone, Debug)]
struct Grid(Vec<usize>);

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| format!("bad grid entry {x:?}"))).collect::<std::result::Result<_, _>>().map(Grid)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact count for one (family, n, k).
    Count {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = RouteArg::ExcessGf)]
        route: RouteArg,
    },
    /// Exact counts over ranges of n and k (inclusive, written a..b); n is the outer loop.
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_parser = parse_span)]
        n: Span,
        #[arg(long, value_parser = parse_span, allow_hyphen_values = true)]
        k: Span,
        #[arg(long, value_enum, default_value_t = RouteArg::ExcessGf)]
        route: RouteArg,
    },
    /// Cross-route and golden-value checks; exit code 1 on any failure.
    Validate {
        #[arg(long, value_enum, default_value_t = Suite::Quick)]
        suite: Suite,
    },
    /// Saddle point, dominant term, exact comparison and truncation report.
    Asympt {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Truncation depth for the composition expansion.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_parser = parse_precision, default_value_t = asymptotics::DEFAULT_PRECISION)]
        precision: usize,
        /// Comma-separated vertex counts at the same ratio k/n for the c1 estimate.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
    },
    /// Wright polynomial tables.
    Wright {
        #[arg(long)]
        k_max: usize,
        #[arg(long, value_enum)]
        family: Option<WrightArg>,
    },
    /// Positive-excess patchwork polynomial of excess k.
    Patchwork {
        #[arg(long)]
        k: usize,
        /// All z-degrees up to 3k instead of the low-order table.
        #[arg(long)]
        full: bool,
    },
    /// Normalized double-factorial composition sums.
    Sqdk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 0)]
        d: usize,
    },
}

fn check_size(n: usize, k: i64) -> Result<()> {
    if n > EXACT_N_MAX || k > EXACT_K_MAX {
        return Err(Error::BudgetExceeded(format!("exact counts limited to n <= {EXACT_N_MAX}, k <= {EXACT_K_MAX}")));
    }
    Ok(())
}

/// Counts for every `n` in `ns` and `k` in `ks`, in that order.
fn count_cells(family: Family, route: RouteArg, ns: &[usize], ks: &[i64], g: &Global) -> Result<Vec<CountRecord>> {
    for &n in ns {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
    }
    if let Some(&k) = ks.iter().find(|&&k| k < -1) {
        return Err(Error::InvalidExcess(k));
    }
    let n_max = *ns.iter().max().unwrap_or(&1);
    let k_max = *ks.iter().max().unwrap_or(&0);
    check_size(n_max, k_max)?;
    let mut out = Vec::with_capacity(ns.len() * ks.len());
    let record = |n: usize, k: i64, count: BigInt, route: CountRoute| CountRecord { family, n, k, count, route };
    match (route, family) {
        (RouteArg::ExcessGf, Family::Csg | Family::Cmg) => {
            let t = connected_counts(family, n_max, k_max.max(0) as usize)?;
            for &n in ns {
                for &k in ks {
                    out.push(t.record(n, k));
                }
            }
        }
        (RouteArg::ExcessGf, Family::SGpos | Family::MGpos) => {
            let t = positive_counts(family, n_max, k_max.max(0) as usize, Route::CoreComposition)?;
            for &n in ns {
                for &k in ks {
                    let c = if k < 0 { BigInt::from(0) } else { t[k as usize][n].clone() };
                    out.push(record(n, k, c, CountRoute::ExcessGf));
                }
            }
        }
        (RouteArg::Recurrence, Family::Csg | Family::Cmg) => {
            let m_max = (n_max as i64 + k_max).max(0) as usize;
            let t = RecurrenceTable::load_or_build(family, n_max, m_max, g.cache().as_deref())?;
            for &n in ns {
                for &k in ks {
                    let m = n as i64 + k;
                    let c = if m < 0 { BigInt::from(0) } else { t.get(n, m as usize).clone() };
                    out.push(record(n, k, c, CountRoute::Recurrence));
                }
            }
        }
        (RouteArg::Recurrence, _) => {
            return Err(Error::InvalidArgument("the recurrence route covers csg and cmg".into()));
        }
        (RouteArg::BruteForce, _) => {
            let budget = g.budget();
            let kind = if family.is_multigraph() { Kind::Multigraph } else { Kind::Graph };
            for &n in ns {
                for &k in ks {
                    let m = n as i64 + k;
                    let c = if m < 0 {
                        0
                    } else if matches!(family, Family::Csg | Family::Cmg) {
                        enumerate(kind, n, m as usize, &budget, |x| x.is_connected())?
                    } else {
                        enumerate(kind, n, m as usize, &budget, |x| x.all_positive_excess())?
                    };
                    out.push(record(n, k, BigInt::from(c), CountRoute::BruteForce));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct AsymptReport {
    family: Family,
    n: usize,
    k: usize,
    precision: usize,
    lambda: String,
    zeta: String,
    tau: String,
    det: String,
    residual: String,
    log_dominant: String,
    log_exact: Option<String>,
    ratio: Option<String>,
    relative_gap: Option<String>,
    truncation: Option<asymptotics::TruncationReport>,
    c1_estimate: Option<String>,
    c1_pairwise: Option<Vec<String>>,
}

fn digits(x: &HpFloat) -> String {
    x.to_decimal(x.decimal_digits().saturating_sub(3))
}

fn run_asympt(family: Family, n: usize, k: usize, d: Option<usize>, p: usize, grid: Option<Grid>, g: &Global) -> Result<AsymptReport> {
    if !matches!(family, Family::Csg | Family::Cmg) {
        return Err(Error::InvalidArgument("asympt covers csg and cmg".into()));
    }
    let s = asymptotics::dominant::saddle_for(n, k, p)?;
    let dom = match family {
        Family::Csg => asymptotics::csg_dominant_log(n, k, p)?,
        _ => asymptotics::cmg_dominant_log(n, k, p)?,
    };
    let (mut log_exact, mut ratio, mut gap) = (None, None, None);
    if n <= EXACT_N_MAX && k as i64 <= EXACT_K_MAX {
        let t = RecurrenceTable::load_or_build(family, n, n + k, g.cache().as_deref())?;
        let le = HpFloat::ln_bigint(t.get(n, n + k), p);
        let r = (&le - &dom).exp();
        gap = Some(digits(&(&r - &HpFloat::from_i64(1, p))));
        ratio = Some(digits(&r));
        log_exact = Some(digits(&le));
    }
    let truncation = match d {
        Some(d) => Some(asymptotics::truncation_report(family, n, k, d)?),
        None => None,
    };
    let (mut c1, mut c1p) = (None, None);
    if let Some(Grid(grid)) = grid {
        let e = asymptotics::estimate_c1(family, k, n, &grid, p, g.cache().as_deref())?;
        c1 = Some(digits(&e.estimate));
        c1p = Some(e.pairwise.iter().map(digits).collect());
    }
    Ok(AsymptReport {
        family,
        n,
        k,
        precision: p,
        lambda: digits(&s.lambda),
        zeta: digits(&s.zeta),
        tau: digits(&s.tau),
        det: digits(&s.det),
        residual: s.residual.to_decimal(6),
        log_dominant: digits(&dom),
        log_exact,
        ratio,
        relative_gap: gap,
        truncation,
        c1_estimate: c1,
        c1_pairwise: c1p,
    })
}

fn print_plain_pairs(pairs: &[(&str, String)]) {
    for (k, v) in pairs {
        println!("{k}: {v}");
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = cli.global;
    match cli.command {
        Command::Count { family, n, k, route } => {
            let recs = count_cells(family.into(), route, &[n], &[k], &g)?;
            write_records(&recs, g.format, true).map_err(|e| Error::Numerical(e.to_string()))?;
        }
        Command::Table { family, n, k, route } => {
            if n.lo < 1 {
                return Err(Error::InvalidArgument("n ranges start at 1".into()));
            }
            let ns: Vec<usize> = (n.lo..=n.hi).map(|v| v as usize).collect();
            let ks: Vec<i64> = (k.lo..=k.hi).collect();
            let recs = count_cells(family.into(), route, &ns, &ks, &g)?;
            write_records(&recs, g.format, false).map_err(|e| Error::Numerical(e.to_string()))?;
        }
        Command::Validate { suite } => {
            let checks = validate::run(suite == Suite::Full, &g.budget());
            let ok = checks.iter().all(|c| c.passed);
            match g.format {
                Format::Json => println!("{}", json(&checks)),
                _ => {
                    for c in &checks {
                        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                    }
                }
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Asympt { family, n, k, d, precision, grid } => {
            let r = run_asympt(family.into(), n, k, d, precision, grid, &g)?;
            match g.format {
                Format::Plain => print_plain_pairs(&[
                    ("lambda", r.lambda.clone()),
                    ("log_dominant", r.log_dominant.clone()),
                    ("log_exact", r.log_exact.clone().unwrap_or_else(|| "n/a".into())),
                    ("ratio", r.ratio.clone().unwrap_or_else(|| "n/a".into())),
                    ("residual", r.residual.clone()),
                ]),
                _ => println!("{}", json(&r)),
            }
        }
        Command::Wright { k_max, family } => {
            let t = wright_polys(k_max)?;
            let fams = match family {
                Some(f) => vec![match f {
                    WrightArg::Mg => WrightFamily::Mg,
                    WrightArg::Sg => WrightFamily::Sg,
                    WrightArg::Cmg => WrightFamily::Cmg,
                    WrightArg::Csg => WrightFamily::Csg,
                }],
                None => vec![WrightFamily::Mg, WrightFamily::Sg, WrightFamily::Cmg, WrightFamily::Csg],
            };
            let recs: Vec<_> = fams.iter().flat_map(|&f| t.records(f)).collect();
            match g.format {
                Format::Plain => {
                    for (f, r) in fams.iter().flat_map(|&f| (1..=k_max).map(move |k| (f, k))).zip(&recs) {
                        println!("{} k={}: ({}) / (1-t)^{}", f.0.name(), f.1, t.table(f.0)[f.1].display("t"), r.pole);
                    }
                }
                _ => println!("{}", json(&recs)),
            }
        }
        Command::Patchwork { k, full } => {
            let p = if full { patchwork_excess_poly_full(k) } else { patchwork_excess_poly(k) };
            match g.format {
                Format::Plain => println!("{}", p.display()),
                _ => println!("{}", json(&p.record())),
            }
        }
        Command::Sqdk { k, q, d } => match q {
            Some(q) => {
                let s = asymptotics::sqdk(q, d, k)?;
                match g.format {
                    Format::Plain => println!("{}", conngraph::arith::rat_to_string(&s)),
                    _ => println!("{}", json(&serde_json::json!({"q": q, "d": d, "k": k, "value": conngraph::arith::rat_to_string(&s)}))),
                }
            }
            None => {
                let t = asymptotics::sqdk_table(d, k)?;
                match g.format {
                    Format::Plain => {
                        for (i, v) in t.values.iter().enumerate() {
                            println!("q={} {}", i + 1, conngraph::arith::rat_to_string(v));
                        }
                    }
                    _ => println!("{}", json(&t)),
                }
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => 3,
        Error::InvalidArgument(_) | Error::InvalidExcess(_) | Error::NonPositiveRatio(_) | Error::InsufficientGrid(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
