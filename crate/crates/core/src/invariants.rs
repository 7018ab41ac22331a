//! Degree invariants: minimum degree, minimum degree sum and product over
//! non-adjacent pairs, minimum weight of a large independent set and the
//! light independence number.
//!
//! Terminology, for an independent set `I`:
//! * weight `w(I)` is the sum of the degrees of its vertices,
//! * `I` is *large* when `|I| >= min degree in I + 1`,
//! * `I` is *light* when `w(I) <= n - 1`.
//!
//! `sigma_star` is the minimum weight of a large independent set (`+inf` if
//! there is none) and `alpha_star` the maximum size of a light one. Both are
//! computed exactly by depth-first branch and bound over vertices ordered by
//! non-decreasing degree.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::{Graph, GraphError};

/// A non-negative integer or `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    Finite(u64),
    Infinite,
}

impl ExtInt {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            ExtInt::Infinite => None,
        }
    }

    /// `self >= k` for a plain integer.
    pub fn at_least(self, k: u64) -> bool {
        self >= ExtInt::Finite(k)
    }
}

impl From<u64> for ExtInt {
    fn from(v: u64) -> Self {
        ExtInt::Finite(v)
    }
}

impl PartialEq<u64> for ExtInt {
    fn eq(&self, other: &u64) -> bool {
        *self == ExtInt::Finite(*other)
    }
}

impl PartialOrd<u64> for ExtInt {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&ExtInt::Finite(*other)))
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::Infinite => f.write_str("inf"),
        }
    }
}

/// An independent set with its weight and classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSetReport {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub weight: u64,
    /// Minimum degree inside the set; `None` for the empty set (read as `+inf`).
    pub min_degree: Option<usize>,
    pub is_large: bool,
    pub is_light: bool,
}

impl IndependentSetReport {
    /// Describes `vertices`, which must be independent in `g`.
    pub fn new(g: &Graph, vertices: &[usize]) -> IndependentSetReport {
        debug_assert!(g.is_independent(vertices));
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        let weight = vs.iter().map(|&v| g.deg(v) as u64).sum::<u64>();
        let min_degree = vs.iter().map(|&v| g.deg(v)).min();
        let is_large = min_degree.is_some_and(|d| vs.len() > d);
        let is_light = weight < g.n() as u64;
        IndependentSetReport { vertices: vs, weight, min_degree, is_large, is_light }
    }
}

/// Every invariant at once, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSummary {
    pub n: usize,
    pub delta: usize,
    pub sigma2: ExtInt,
    pub pi2: ExtInt,
    pub sigma_star: ExtInt,
    pub sigma_star_witness: Option<IndependentSetReport>,
    pub alpha_star: usize,
    pub alpha_star_witness: IndependentSetReport,
    pub alpha: usize,
}

pub fn summarize(g: &Graph) -> Result<InvariantSummary, GraphError> {
    let delta = min_degree(g)?;
    let (alpha_star, alpha_star_witness) = alpha_star(g)?;
    let (sigma_star, sigma_star_witness) = sigma_star(g);
    Ok(InvariantSummary {
        n: g.n(),
        delta,
        sigma2: sigma2(g),
        pi2: pi2(g),
        sigma_star,
        sigma_star_witness,
        alpha_star,
        alpha_star_witness,
        alpha: alpha(g),
    })
}

pub fn min_degree(g: &Graph) -> Result<usize, GraphError> {
    (0..g.n()).map(|u| g.deg(u)).min().ok_or(GraphError::Empty)
}

fn min_over_non_adjacent_pairs(g: &Graph, f: impl Fn(u64, u64) -> u64) -> ExtInt {
    let mut best = ExtInt::Infinite;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                best = best.min(ExtInt::Finite(f(g.deg(u) as u64, g.deg(v) as u64)));
            }
        }
    }
    best
}

/// Minimum `d(u) + d(v)` over distinct non-adjacent pairs; `+inf` when complete.
pub fn sigma2(g: &Graph) -> ExtInt {
    min_over_non_adjacent_pairs(g, |a, b| a + b)
}

/// Minimum `d(u) * d(v)` over distinct non-adjacent pairs; `+inf` when complete.
pub fn pi2(g: &Graph) -> ExtInt {
    min_over_non_adjacent_pairs(g, |a, b| a * b)
}

/// Vertices sorted by (degree, id).
fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.deg(v), v));
    order
}

/// Blocking counters over vertex ids: a vertex is available while no chosen
/// vertex is adjacent to it.
struct Blocker<'g> {
    g: &'g Graph,
    blocked: Vec<u32>,
}

impl<'g> Blocker<'g> {
    fn new(g: &'g Graph) -> Self {
        Blocker { g, blocked: vec![0; g.n()] }
    }

    fn push(&mut self, v: usize) {
        for &w in self.g.neighbors(v) {
            self.blocked[w] += 1;
        }
    }

    fn pop(&mut self, v: usize) {
        for &w in self.g.neighbors(v) {
            self.blocked[w] -= 1;
        }
    }

    #[inline]
    fn free(&self, v: usize) -> bool {
        self.blocked[v] == 0
    }
}

/// Search for a minimum-weight large independent set, strictly lighter than
/// `limit`. With `first_only` the search stops at the first such set.
///
/// The first vertex of a large set in degree order carries its minimum
/// degree `d`, and dropping extra vertices keeps a set large while lowering
/// its weight, so an optimal set has that pivot plus exactly `d` later,
/// pairwise non-adjacent, non-neighbors.
fn large_set_search(g: &Graph, limit: ExtInt, first_only: bool) -> Option<(u64, Vec<usize>)> {
    let order = degree_order(g);
    let mut best: ExtInt = limit;
    let mut found: Option<(u64, Vec<usize>)> = None;
    let mut blocker = Blocker::new(g);

    for (pos, &pivot) in order.iter().enumerate() {
        let d = g.deg(pivot) as u64;
        // Every member has degree >= d.
        if ExtInt::Finite(d * (d + 1)) >= best {
            break;
        }
        if d == 0 {
            found = Some((0, vec![pivot]));
            break;
        }
        let candidates: Vec<usize> = order[pos + 1..].iter().copied().filter(|&w| !g.has_edge(pivot, w)).collect();
        if (candidates.len() as u64) < d {
            continue;
        }
        let mut chosen = vec![pivot];
        blocker.push(pivot);
        pick_light_k(g, &candidates, 0, d as usize, d, &mut blocker, &mut chosen, &mut best, &mut found, first_only);
        blocker.pop(pivot);
        if first_only && found.is_some() {
            break;
        }
    }
    found
}

#[allow(clippy::too_many_arguments)]
fn pick_light_k(
    g: &Graph,
    cands: &[usize],
    start: usize,
    need: usize,
    weight: u64,
    blocker: &mut Blocker<'_>,
    chosen: &mut Vec<usize>,
    best: &mut ExtInt,
    found: &mut Option<(u64, Vec<usize>)>,
    first_only: bool,
) -> bool {
    if need == 0 {
        if ExtInt::Finite(weight) < *best {
            *best = ExtInt::Finite(weight);
            *found = Some((weight, chosen.clone()));
            return first_only;
        }
        return false;
    }
    // Lower bound: the next `need` free candidates are the lightest left.
    let mut bound = weight;
    let mut seen = 0;
    for &w in &cands[start..] {
        if blocker.free(w) {
            bound += g.deg(w) as u64;
            seen += 1;
            if seen == need {
                break;
            }
        }
    }
    if seen < need || ExtInt::Finite(bound) >= *best {
        return false;
    }
    for i in start..cands.len() {
        let w = cands[i];
        if !blocker.free(w) {
            continue;
        }
        if ExtInt::Finite(weight + (g.deg(w) * need) as u64) >= *best {
            // Remaining candidates are no lighter than w.
            break;
        }
        chosen.push(w);
        blocker.push(w);
        let stop =
            pick_light_k(g, cands, i + 1, need - 1, weight + g.deg(w) as u64, blocker, chosen, best, found, first_only);
        blocker.pop(w);
        chosen.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Minimum weight of a large independent set, with a witness when finite.
pub fn sigma_star(g: &Graph) -> (ExtInt, Option<IndependentSetReport>) {
    match large_set_search(g, ExtInt::Infinite, false) {
        Some((w, set)) => (ExtInt::Finite(w), Some(IndependentSetReport::new(g, &set))),
        None => (ExtInt::Infinite, None),
    }
}

/// Whether `sigma_star(g) >= threshold`. On failure returns a large
/// independent set lighter than `threshold` (not necessarily the lightest).
pub fn sigma_star_at_least(g: &Graph, threshold: u64) -> Result<(), IndependentSetReport> {
    match large_set_search(g, ExtInt::Finite(threshold), true) {
        Some((_, set)) => Err(IndependentSetReport::new(g, &set)),
        None => Ok(()),
    }
}

struct MaxSearch<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    budget: Option<u64>,
    blocker: Blocker<'g>,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl MaxSearch<'_> {
    fn run(&mut self, start: usize, weight: u64) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        // Upper bound: free vertices from `start` on, lightest first, that
        // still fit in the remaining budget.
        let mut room = 0;
        let mut spent = weight;
        for &v in &self.order[start..] {
            if !self.blocker.free(v) {
                continue;
            }
            let d = self.g.deg(v) as u64;
            if self.budget.is_some_and(|b| spent + d > b) {
                break;
            }
            spent += d;
            room += 1;
        }
        if self.chosen.len() + room <= self.best.len() {
            return;
        }
        for i in start..self.order.len() {
            let v = self.order[i];
            if !self.blocker.free(v) {
                continue;
            }
            let w = weight + self.g.deg(v) as u64;
            if self.budget.is_some_and(|b| w > b) {
                break;
            }
            self.chosen.push(v);
            self.blocker.push(v);
            self.run(i + 1, w);
            self.blocker.pop(v);
            self.chosen.pop();
        }
    }
}

fn max_independent(g: &Graph, budget: Option<u64>) -> Vec<usize> {
    let mut search =
        MaxSearch { g, order: degree_order(g), budget, blocker: Blocker::new(g), chosen: Vec::new(), best: Vec::new() };
    search.run(0, 0);
    search.best
}

/// Light independence number with a maximum light independent set.
pub fn alpha_star(g: &Graph) -> Result<(usize, IndependentSetReport), GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    let best = max_independent(g, Some(g.n() as u64 - 1));
    Ok((best.len(), IndependentSetReport::new(g, &best)))
}

/// Independence number.
pub fn alpha(g: &Graph) -> usize {
    max_independent(g, None).len()
}
