//! Brute-force baselines over vertex subsets encoded as bit masks.
//!
//! Nothing here shares code with the fast paths in `invariants`, `blocks` or
//! `partition`; every answer comes from plain enumeration of subsets.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::Graph;
use crate::invariants::ExtInt;
use crate::partition::{Partition, PartitionKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle budget is {max_n}")]
    OverBudget { n: usize, max_n: usize },
    #[error("oracle time limit of {0:?} exceeded")]
    Timeout(Duration),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub time_limit: Option<Duration>,
}

impl OracleBudget {
    pub const fn new(max_n: usize) -> Self {
        OracleBudget { max_n, time_limit: None }
    }

    /// Default for partition search: 12 vertices.
    pub const fn partitions() -> Self {
        OracleBudget::new(12)
    }

    /// Default for invariant enumeration: 16 vertices.
    pub const fn invariants() -> Self {
        OracleBudget::new(16)
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    fn admit(&self, g: &Graph) -> Result<(), OracleError> {
        // Masks are u64; the hard cap keeps tables addressable.
        if g.n() > self.max_n || g.n() > 30 {
            return Err(OracleError::OverBudget { n: g.n(), max_n: self.max_n });
        }
        Ok(())
    }
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect()
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

fn to_vec(mask: u64) -> Vec<usize> {
    members(mask).collect()
}

/// Per-subset table of independence, weight and minimum degree.
struct SubsetTable {
    independent: Vec<bool>,
    weight: Vec<u64>,
    min_degree: Vec<u64>,
}

fn subset_table(g: &Graph) -> SubsetTable {
    let n = g.n();
    let nbr = neighbor_masks(g);
    let size = 1usize << n;
    let mut independent = vec![true; size];
    let mut weight = vec![0u64; size];
    let mut min_degree = vec![u64::MAX; size];
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let d = g.deg(v) as u64;
        independent[mask] = independent[rest] && nbr[v] & mask as u64 == 0;
        weight[mask] = weight[rest] + d;
        min_degree[mask] = min_degree[rest].min(d);
    }
    SubsetTable { independent, weight, min_degree }
}

/// Minimum weight of a large independent set by enumerating every subset.
pub fn oracle_sigma_star(g: &Graph, budget: &OracleBudget) -> Result<ExtInt, OracleError> {
    budget.admit(g)?;
    let t = subset_table(g);
    let mut best = ExtInt::Infinite;
    for mask in 1..t.independent.len() {
        let size = (mask as u64).count_ones() as u64;
        if t.independent[mask] && size > t.min_degree[mask] {
            best = best.min(ExtInt::Finite(t.weight[mask]));
        }
    }
    Ok(best)
}

/// Maximum size of a light independent set by enumerating every subset.
pub fn oracle_alpha_star(g: &Graph, budget: &OracleBudget) -> Result<usize, OracleError> {
    budget.admit(g)?;
    let t = subset_table(g);
    let cap = (g.n() as u64).saturating_sub(1);
    let mut best = 0;
    for mask in 0..t.independent.len() {
        if t.independent[mask] && t.weight[mask] <= cap {
            best = best.max((mask as u64).count_ones() as usize);
        }
    }
    Ok(best)
}

/// Whether the vertices of `mask` induce a connected subgraph (empty: false).
fn connected_within(nbr: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut seen = mask & mask.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = nbr[v] & mask & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == mask
}

/// More than two vertices, connected, and connected after deleting any one.
fn biconnected_within(nbr: &[u64], mask: u64) -> bool {
    mask.count_ones() > 2
        && connected_within(nbr, mask)
        && members(mask).all(|v| connected_within(nbr, mask & !(1 << v)))
}

/// Brute-force 2-connectivity of the whole graph.
pub fn oracle_is_biconnected(g: &Graph) -> bool {
    assert!(g.n() <= 64, "oracle works on at most 64 vertices");
    let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    biconnected_within(&neighbor_masks(g), full)
}

/// Brute-force cut vertices: deleting them increases the number of components.
pub fn oracle_cut_vertices(g: &Graph) -> Vec<usize> {
    let base = g.components().len();
    (0..g.n())
        .filter(|&v| {
            let rest: Vec<usize> = (0..g.n()).filter(|&w| w != v).collect();
            let (sub, _) = g.induced(&rest);
            // Deleting an isolated vertex removes a component.
            sub.components().len() > base - usize::from(g.deg(v) == 0)
        })
        .collect()
}

fn biconnected_masks(g: &Graph, include_k2: bool) -> Vec<u64> {
    let nbr = neighbor_masks(g);
    (1u64..1 << g.n())
        .filter(|&m| {
            if m.count_ones() == 2 {
                let v = m.trailing_zeros() as usize;
                include_k2 && nbr[v] & m != 0
            } else {
                biconnected_within(&nbr, m)
            }
        })
        .collect()
}

/// Every vertex set inducing a 2-connected subgraph, plus edges when
/// `include_k2`. Sets are sorted; the list is ordered by bit mask.
pub fn enumerate_biconnected_subsets(
    g: &Graph,
    include_k2: bool,
    budget: &OracleBudget,
) -> Result<Vec<Vec<usize>>, OracleError> {
    budget.admit(g)?;
    Ok(biconnected_masks(g, include_k2).into_iter().map(to_vec).collect())
}

const UNKNOWN: u8 = u8::MAX;
const IMPOSSIBLE: u8 = u8::MAX - 1;

struct MinSearch {
    /// Feasible parts indexed by their lowest member.
    by_low: Vec<Vec<u64>>,
    almost: bool,
    /// `memo[flag][uncovered]`: fewest parts covering `uncovered`.
    memo: [Vec<u8>; 2],
    choice: [Vec<u64>; 2],
    deadline: Option<(Instant, Duration)>,
    ticks: u32,
}

impl MinSearch {
    fn solve(&mut self, uncovered: u64, k2_used: bool) -> Result<u8, OracleError> {
        if uncovered == 0 {
            return Ok(0);
        }
        let flag = usize::from(k2_used);
        let cached = self.memo[flag][uncovered as usize];
        if cached != UNKNOWN {
            return Ok(cached);
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(4096) {
            if let Some((start, limit)) = self.deadline {
                if start.elapsed() > limit {
                    return Err(OracleError::Timeout(limit));
                }
            }
        }
        let low = uncovered.trailing_zeros() as usize;
        let mut best = IMPOSSIBLE;
        let mut pick = 0;
        for i in 0..self.by_low[low].len() {
            let part = self.by_low[low][i];
            if part & !uncovered != 0 {
                continue;
            }
            let is_k2 = part.count_ones() == 2;
            if is_k2 && (!self.almost || k2_used) {
                continue;
            }
            let sub = self.solve(uncovered & !part, k2_used || is_k2)?;
            if sub != IMPOSSIBLE && sub + 1 < best {
                best = sub + 1;
                pick = part;
            }
        }
        self.memo[flag][uncovered as usize] = best;
        self.choice[flag][uncovered as usize] = pick;
        Ok(best)
    }
}

/// Exact minimum number of parts of a 2-proper partition, or of an almost
/// 2-proper one when `allow_k2_first`. `None` when no such partition exists.
///
/// Vertices are relabeled by (degree, id) so that low-degree vertices, which
/// have the fewest feasible parts, are branched on first. The lowest uncovered
/// vertex is assigned to each feasible part containing it; results per
/// uncovered set are memoized.
pub fn oracle_min_2pp(
    g: &Graph,
    allow_k2_first: bool,
    budget: &OracleBudget,
) -> Result<Option<(usize, Partition)>, OracleError> {
    budget.admit(g)?;
    let n = g.n();
    let kind = if allow_k2_first { PartitionKind::AlmostTwoProper } else { PartitionKind::TwoProper };
    if n == 0 {
        return Ok(Some((0, Partition::new(Vec::new(), kind))));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.deg(v), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let relabeled = g.permute(&pos);

    let mut by_low = vec![Vec::new(); n];
    for m in biconnected_masks(&relabeled, allow_k2_first) {
        by_low[m.trailing_zeros() as usize].push(m);
    }
    // Larger parts first: good solutions are found early.
    for list in &mut by_low {
        list.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    }
    let size = 1usize << n;
    let mut search = MinSearch {
        by_low,
        almost: allow_k2_first,
        memo: [vec![UNKNOWN; size], vec![UNKNOWN; size]],
        choice: [vec![0; size], vec![0; size]],
        deadline: budget.time_limit.map(|l| (Instant::now(), l)),
        ticks: 0,
    };
    let full = (size - 1) as u64;
    let best = search.solve(full, false)?;
    if best == IMPOSSIBLE {
        return Ok(None);
    }
    let mut parts = Vec::with_capacity(best as usize);
    let (mut uncovered, mut k2_used) = (full, false);
    while uncovered != 0 {
        let part = search.choice[usize::from(k2_used)][uncovered as usize];
        k2_used |= part.count_ones() == 2;
        uncovered &= !part;
        parts.push(members(part).map(|i| order[i]).collect::<Vec<_>>());
    }
    Ok(Some((best as usize, Partition::new(parts, kind))))
}
