//! Exhaustive enumeration of small labeled graphs and multigraphs.
//!
//! Multigraphs follow the counting model directly: `m` labeled, oriented
//! edges, each an ordered pair of vertices, so there are `n^{2m}` of them.
//! Vertices are `0..n` and the edge label is the position in `edges`.

use crate::arith::{factorial, BigRat};
use crate::error::{Error, Result};
use crate::positive::sgpos_tform_terms;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmallMultigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    pub n: usize,
    /// Unordered pairs stored as `(a, b)` with `a < b`.
    pub edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    pub fn to_multigraph(&self) -> SmallMultigraph {
        SmallMultigraph { n: self.n, edges: self.edges.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Graph,
    Multigraph,
}

/// Size limits for exhaustive runs.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub graph_n_max: usize,
    pub multigraph_max: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { graph_n_max: 7, multigraph_max: 100_000_000 }
    }
}

/// One connected component: vertex count and edge count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: usize,
    pub edges: usize,
}

impl Component {
    pub fn excess(&self) -> i64 {
        self.edges as i64 - self.vertices as i64
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

impl SmallMultigraph {
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Degrees, with a loop contributing 2.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn components(&self) -> Vec<Component> {
        let mut p: Vec<usize> = (0..self.n).collect();
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut p, a), find(&mut p, b));
            if ra != rb {
                p[ra] = rb;
            }
        }
        let mut tally: BTreeMap<usize, Component> = BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut p, v);
            tally.entry(r).or_insert(Component { vertices: 0, edges: 0 }).vertices += 1;
        }
        for &(a, _) in &self.edges {
            let r = find(&mut p, a);
            tally.get_mut(&r).expect("root seen").edges += 1;
        }
        tally.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Every component has excess at least 1 (the empty multigraph qualifies).
    pub fn all_positive_excess(&self) -> bool {
        self.components().iter().all(|c| c.excess() >= 1)
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub fn has_parallel(&self) -> bool {
        let mut seen: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loop() && !self.has_parallel()
    }

    /// The unordered edge set of a simple multigraph.
    pub fn underlying_graph(&self) -> SmallGraph {
        let mut e: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        SmallGraph { n: self.n, edges: e }
    }

    fn decode(n: usize, m: usize, mut idx: u64) -> Self {
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let a = (idx % n as u64) as usize;
            idx /= n as u64;
            let b = (idx % n as u64) as usize;
            idx /= n as u64;
            edges.push((a, b));
        }
        SmallMultigraph { n, edges }
    }
}

fn multigraph_total(n: usize, m: usize, budget: &Budget) -> Result<u64> {
    if n == 0 {
        return Ok(if m == 0 { 1 } else { 0 });
    }
    let total = (n as u64).checked_pow(2 * m as u32);
    match total {
        Some(t) if t <= budget.multigraph_max => Ok(t),
        _ => Err(Error::BudgetExceeded(format!("{n}^(2*{m}) multigraphs"))),
    }
}

/// Sum of `f(G)` over all multigraphs (or graphs) with `n` vertices and `m` edges.
pub fn sum_over<F>(kind: Kind, n: usize, m: usize, budget: &Budget, f: F) -> Result<i128>
where
    F: Fn(&SmallMultigraph) -> i128 + Sync,
{
    match kind {
        Kind::Multigraph => {
            let total = multigraph_total(n, m, budget)?;
            if n == 0 {
                return Ok(if total == 1 { f(&SmallMultigraph { n: 0, edges: vec![] }) } else { 0 });
            }
            Ok((0..total)
                .into_par_iter()
                .map(|i| f(&SmallMultigraph::decode(n, m, i)))
                .sum())
        }
        Kind::Graph => {
            if n > budget.graph_n_max {
                return Err(Error::BudgetExceeded(format!("graphs on {n} vertices")));
            }
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let p = pairs.len();
            if m > p {
                return Ok(0);
            }
            Ok((0u64..1 << p)
                .into_par_iter()
                .filter(|mask| mask.count_ones() as usize == m)
                .map(|mask| {
                    let edges = (0..p).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
                    f(&SmallMultigraph { n, edges })
                })
                .sum())
        }
    }
}

/// Number of objects satisfying `pred`.
pub fn enumerate<F>(kind: Kind, n: usize, m: usize, budget: &Budget, pred: F) -> Result<u64>
where
    F: Fn(&SmallMultigraph) -> bool + Sync,
{
    let s = sum_over(kind, n, m, budget, |g| pred(g) as i128)?;
    Ok(s as u64)
}

/// A loop (one edge) or a double edge (two parallel edges), by edge label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LdPart {
    pub edges: Vec<usize>,
}

pub fn ld_set(g: &SmallMultigraph) -> Vec<LdPart> {
    let mut out = Vec::new();
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if a == b {
            out.push(LdPart { edges: vec![i] });
        }
    }
    for i in 0..g.m() {
        let (a, b) = g.edges[i];
        if a == b {
            continue;
        }
        for j in i + 1..g.m() {
            let (c, d) = g.edges[j];
            if (a, b) == (c, d) || (a, b) == (d, c) {
                out.push(LdPart { edges: vec![i, j] });
            }
        }
    }
    out
}

/// Vertex and edge masks covered by a set of parts.
fn union_masks(g: &SmallMultigraph, parts: &[LdPart], pick: u64) -> (u64, u64) {
    let (mut vm, mut em) = (0u64, 0u64);
    for (i, part) in parts.iter().enumerate() {
        if pick >> i & 1 == 1 {
            for &e in &part.edges {
                em |= 1 << e;
                let (a, b) = g.edges[e];
                vm |= 1 << a | 1 << b;
            }
        }
    }
    (vm, em)
}

/// Strips degree <= 1 vertices, smooths degree-2 vertices and drops isolated loops.
pub fn kernel_of(g: &SmallMultigraph) -> SmallMultigraph {
    let mut alive = vec![true; g.n];
    let mut edges: Vec<Option<(usize, usize)>> = g.edges.iter().copied().map(Some).collect();
    loop {
        let mut deg = vec![0usize; g.n];
        for &(a, b) in edges.iter().flatten() {
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut changed = false;
        for v in 0..g.n {
            if !alive[v] {
                continue;
            }
            match deg[v] {
                0 => {
                    alive[v] = false;
                    changed = true;
                }
                1 => {
                    alive[v] = false;
                    for e in edges.iter_mut() {
                        if matches!(e, Some((a, b)) if *a == v || *b == v) {
                            *e = None;
                        }
                    }
                    changed = true;
                }
                2 => {
                    let inc: Vec<usize> = (0..edges.len())
                        .filter(|&i| matches!(edges[i], Some((a, b)) if a == v || b == v))
                        .collect();
                    alive[v] = false;
                    if inc.len() == 1 {
                        // a lone loop
                        edges[inc[0]] = None;
                    } else {
                        let other = |i: usize| {
                            let (a, b) = edges[i].expect("live edge");
                            if a == v { b } else { a }
                        };
                        let (x, y) = (other(inc[0]), other(inc[1]));
                        edges[inc[0]] = Some((x, y));
                        edges[inc[1]] = None;
                    }
                    changed = true;
                }
                _ => {}
            }
            if changed {
                break;
            }
        }
        if !changed {
            break;
        }
    }
    let mut relabel = vec![usize::MAX; g.n];
    let mut n = 0;
    for v in 0..g.n {
        if alive[v] {
            relabel[v] = n;
            n += 1;
        }
    }
    let edges = edges.into_iter().flatten().map(|(a, b)| (relabel[a], relabel[b])).collect();
    SmallMultigraph { n, edges }
}

/// Brute-force and series sides of the bounded inclusion-exclusion identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IeCheck {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub brute: BigInt,
    pub series: BigInt,
    /// `2^m m!` times the number of simple positive-excess graphs, when `d > k`.
    pub simple: Option<BigInt>,
    pub passed: bool,
}

/// `sum_G sum_{P in LD(G), k(P) < d} (-1)^{|P|}` over positive-excess multigraphs,
/// against `n! 2^m m! [z^n]` of the first `d` inclusion-exclusion terms.
pub fn ie_truncated_check(n: usize, m: usize, d: usize, budget: &Budget) -> Result<IeCheck> {
    let k = m as i64 - n as i64;
    let brute = sum_over(Kind::Multigraph, n, m, budget, |g| {
        if !g.all_positive_excess() {
            return 0;
        }
        let parts = ld_set(g);
        let mut acc = 0i128;
        for pick in 0u64..1 << parts.len() {
            let (vm, em) = union_masks(g, &parts, pick);
            let kp = em.count_ones() as i64 - vm.count_ones() as i64;
            if kp < d as i64 {
                acc += if pick.count_ones() % 2 == 0 { 1 } else { -1 };
            }
        }
        acc
    })?;
    let weight = BigInt::from(2).pow(m as u32) * factorial(m);
    let series = if k < 1 {
        if n == 0 && d > 0 { weight.clone() } else { BigInt::zero() }
    } else {
        let terms = sgpos_tform_terms(k as usize)?;
        let mut acc = BigRat::zero();
        for term in terms.iter().take(d.min(k as usize + 1)) {
            acc += term.tree_coeff(n);
        }
        let v = acc * BigRat::from_integer(factorial(n) * &weight);
        crate::arith::as_integer(&v).ok_or_else(|| Error::NonIntegral(v.to_string()))?
    };
    let simple = if k >= 0 && d as i64 > k {
        let c = enumerate(Kind::Graph, n, m, budget, |g| g.all_positive_excess())?;
        Some(BigInt::from(c) * &weight)
    } else {
        None
    };
    let brute = BigInt::from(brute);
    let passed = brute == series && simple.as_ref().is_none_or(|s| *s == series);
    Ok(IeCheck { n, m, d, brute, series, simple, passed })
}

/// Patchworks on vertex set `0..n` with edge labels `0..m` and exactly `p` parts.
///
/// A patchwork is a set of loops and double edges of some multigraph whose
/// union is that whole multigraph.
pub fn patchwork_count(n: usize, m: usize, p: usize, budget: &Budget) -> Result<u64> {
    let full_v = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let full_e = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let s = sum_over(Kind::Multigraph, n, m, budget, |g| {
        let parts = ld_set(g);
        let mut c = 0i128;
        for pick in 0u64..1 << parts.len() {
            if pick.count_ones() as usize != p {
                continue;
            }
            let (vm, em) = union_masks(g, &parts, pick);
            if vm == full_v && em == full_e {
                c += 1;
            }
        }
        c
    })?;
    Ok(s.to_u64().unwrap_or(0))
}

/// Fibers of the label/orientation erasing map on simple multigraphs.
pub fn projection_fibers(n: usize, m: usize, budget: &Budget) -> Result<BTreeMap<Vec<(usize, usize)>, u64>> {
    let total = multigraph_total(n, m, budget)?;
    let mut map = BTreeMap::new();
    if n == 0 {
        if total == 1 {
            map.insert(Vec::new(), 1);
        }
        return Ok(map);
    }
    for i in 0..total {
        let g = SmallMultigraph::decode(n, m, i);
        if g.is_simple() {
            *map.entry(g.underlying_graph().edges).or_insert(0) += 1;
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::patchwork::patchwork_gf;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate(Kind::Graph, 4, 6, &b(), |_| true).unwrap(), 1);
        assert_eq!(enumerate(Kind::Multigraph, 2, 1, &b(), |_| true).unwrap(), 4);
        assert_eq!(enumerate(Kind::Graph, 5, 5, &b(), |g| g.is_connected()).unwrap(), 222);
        let tight = Budget { graph_n_max: 3, multigraph_max: 10 };
        assert!(matches!(enumerate(Kind::Graph, 4, 2, &tight, |_| true), Err(Error::BudgetExceeded(_))));
        assert!(matches!(enumerate(Kind::Multigraph, 2, 2, &tight, |_| true), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn ld_examples() {
        let g = SmallMultigraph { n: 1, edges: vec![(0, 0)] };
        assert_eq!(ld_set(&g).len(), 1);
        let g = SmallMultigraph { n: 2, edges: vec![(0, 1), (1, 0), (0, 1)] };
        assert_eq!(ld_set(&g).len(), 3);
        let g = SmallMultigraph { n: 3, edges: vec![(0, 1), (1, 2)] };
        assert!(ld_set(&g).is_empty());
    }

    #[test]
    fn kernels_of_trees_and_unicycles_vanish() {
        let tree = SmallMultigraph { n: 4, edges: vec![(0, 1), (1, 2), (1, 3)] };
        assert_eq!(kernel_of(&tree).n, 0);
        let uni = SmallMultigraph { n: 4, edges: vec![(0, 1), (1, 2), (2, 0), (2, 3)] };
        assert_eq!(kernel_of(&uni).n, 0);
        let looped = SmallMultigraph { n: 2, edges: vec![(0, 0), (0, 1)] };
        assert_eq!(kernel_of(&looped).n, 0);
        // theta graph: two vertices of degree 3 joined by three paths
        let theta = SmallMultigraph { n: 4, edges: vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 1)] };
        let k = kernel_of(&theta);
        assert_eq!((k.n, k.m()), (2, 3));
    }

    #[test]
    fn kernel_size_bounds() {
        for (n, m) in [(3, 4), (3, 5), (4, 5), (2, 4)] {
            sum_over(Kind::Multigraph, n, m, &b(), |g| {
                if g.all_positive_excess() {
                    let k = (m - n) as usize;
                    let ker = kernel_of(g);
                    assert!(ker.n <= 2 * k && ker.m() <= 3 * k, "{g:?}");
                    assert_eq!(ker.m() as i64 - ker.n as i64, k as i64);
                    assert!(ker.min_degree() >= 3 || ker.n == 0);
                }
                0
            })
            .unwrap();
        }
    }

    #[test]
    fn component_classes_partition() {
        let (n, m) = (3, 3);
        let total = enumerate(Kind::Multigraph, n, m, &b(), |_| true).unwrap();
        let with_tree = enumerate(Kind::Multigraph, n, m, &b(), |g| g.components().iter().any(|c| c.excess() == -1)).unwrap();
        let uni_no_tree = enumerate(Kind::Multigraph, n, m, &b(), |g| {
            let c = g.components();
            c.iter().all(|c| c.excess() >= 0) && c.iter().any(|c| c.excess() == 0)
        })
        .unwrap();
        let pos = enumerate(Kind::Multigraph, n, m, &b(), |g| g.all_positive_excess()).unwrap();
        assert_eq!(with_tree + uni_no_tree + pos, total);
    }

    #[test]
    fn patchwork_counts_match_series() {
        let s = patchwork_gf(3, 4);
        for n in 0..=3 {
            for m in 0..=4 {
                if (n as u64).pow(2 * m as u32) > 5000 {
                    continue;
                }
                for p in 0..=4 {
                    let brute = patchwork_count(n, m, p, &b()).unwrap();
                    assert_eq!(s.count(n, m, p), BigRat::from_integer(BigInt::from(brute)), "n={n} m={m} p={p}");
                }
            }
        }
    }

    #[test]
    fn ie_identity_small() {
        for (n, m, d) in [(1, 2, 1), (2, 3, 2), (1, 3, 3)] {
            let r = ie_truncated_check(n, m, d, &b()).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn projection_fiber_sizes() {
        let f = projection_fibers(3, 2, &b()).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.values().all(|&c| c == 8));
        assert_eq!(BigInt::from(f.len()), binomial(3, 2));
    }
}
