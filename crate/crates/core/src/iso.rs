//! Backtracking isomorphism test for small graphs.
//!
//! Vertices are refined by (degree, sorted neighbor degrees); the pattern is
//! matched in breadth-first order so every new vertex after the first in its
//! component already has a mapped neighbor.

use std::collections::VecDeque;

use crate::graph::Graph;

fn signature(g: &Graph, v: usize) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.deg(w)).collect();
    nd.sort_unstable();
    (g.deg(v), nd)
}

fn match_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    let mut starts: Vec<usize> = (0..g.n()).collect();
    // Rare vertices first: high degree tends to prune earlier.
    starts.sort_by_key(|&v| std::cmp::Reverse(g.deg(v)));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Finds a bijection `map` with `a.has_edge(u, v) == b.has_edge(map[u], map[v])`.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let sig_a: Vec<_> = (0..n).map(|v| signature(a, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| signature(b, v)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }
    let order = match_order(a);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &sig_a, &sig_b, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    sig_a: &[(usize, Vec<usize>)],
    sig_b: &[(usize, Vec<usize>)],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    // Restrict candidates to neighbors of an already mapped neighbor.
    let anchor = a.neighbors(v).iter().find(|&&w| map[w] != usize::MAX).map(|&w| map[w]);
    let candidates: Vec<usize> = match anchor {
        Some(img) => b.neighbors(img).to_vec(),
        None => (0..b.n()).collect(),
    };
    for c in candidates {
        if used[c] || sig_a[v] != sig_b[c] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| a.has_edge(u, v) == b.has_edge(map[u], c));
        if !consistent {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if extend(a, b, sig_a, sig_b, order, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[c] = false;
    }
    false
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}
