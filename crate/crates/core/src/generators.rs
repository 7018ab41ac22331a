//! Named graphs, the two sharpness constructions and a seeded random model.

use thiserror::Error;

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("valid")
}

/// `C_n` for `n >= 3`; smaller `n` give a path.
pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    if n >= 3 {
        edges.push((n - 1, 0));
    }
    Graph::from_edges(n, edges).expect("valid")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid")
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).expect("valid")
}

/// SplitMix64. Portable across implementations: state advances by
/// `0x9E3779B97F4A7C15`, output is the standard xor-shift-multiply finalizer.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `0..bound` (`bound > 0`), by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Fisher-Yates, from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }
}

/// `G(n, p)`: pairs `(i, j)`, `i < j`, are visited in lexicographic order and
/// each draws one `next_f64()`; the edge is present when the draw is `< p`.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_f64() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SharpnessError {
    #[error("clique sizes must be non-empty")]
    Empty,
    #[error("smallest clique has {min} vertices, needs at least d + 1 = {need}")]
    CliqueTooSmall { min: usize, need: usize },
    #[error("order {n} must exceed d(d+1)+1 = {bound}")]
    OrderTooSmall { n: usize, bound: usize },
}

/// Clique sizes `t_1, ..., t_d` of a sharpness construction; `n = 1 + sum t_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessSpec {
    t: Vec<usize>,
}

impl SharpnessSpec {
    /// Requires every `t_i >= d + 1` and `n > d(d+1) + 1`.
    pub fn new(t: Vec<usize>) -> Result<SharpnessSpec, SharpnessError> {
        let spec = SharpnessSpec::boundary(t)?;
        let d = spec.d();
        let bound = d * (d + 1) + 1;
        if spec.n() <= bound {
            return Err(SharpnessError::OrderTooSmall { n: spec.n(), bound });
        }
        Ok(spec)
    }

    /// Like [`SharpnessSpec::new`] but also admits `n = d(d+1) + 1`, i.e. all
    /// cliques of size exactly `d + 1`.
    pub fn boundary(t: Vec<usize>) -> Result<SharpnessSpec, SharpnessError> {
        let d = t.len();
        let min = *t.iter().min().ok_or(SharpnessError::Empty)?;
        if min < d + 1 {
            return Err(SharpnessError::CliqueTooSmall { min, need: d + 1 });
        }
        Ok(SharpnessSpec { t })
    }

    pub fn d(&self) -> usize {
        self.t.len()
    }

    pub fn n(&self) -> usize {
        1 + self.t.iter().sum::<usize>()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.t
    }

    /// Vertex ranges of the cliques; the hub is vertex `n - 1`.
    pub fn cliques(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.t
            .iter()
            .map(|&size| {
                let r = start..start + size;
                start += size;
                r
            })
            .collect()
    }

    fn clique_edges(&self) -> Vec<(usize, usize)> {
        self.cliques()
            .into_iter()
            .flat_map(|r| r.clone().flat_map(move |i| (i + 1..r.end).map(move |j| (i, j))))
            .collect()
    }
}

/// Disjoint cliques plus a hub joined to the lowest vertex of each clique.
pub fn gen_sharp_gt(spec: &SharpnessSpec) -> Graph {
    let hub = spec.n() - 1;
    let mut edges = spec.clique_edges();
    edges.extend(spec.cliques().into_iter().map(|r| (r.start, hub)));
    Graph::from_edges(spec.n(), edges).expect("valid")
}

/// Disjoint cliques plus a hub joined to every clique vertex.
pub fn gen_sharp_gt_prime(spec: &SharpnessSpec) -> Graph {
    let hub = spec.n() - 1;
    let mut edges = spec.clique_edges();
    edges.extend((0..hub).map(|v| (v, hub)));
    Graph::from_edges(spec.n(), edges).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(complete(0).n(), 0);
    }

    #[test]
    fn splitmix_reference_values() {
        // Published SplitMix64 outputs for seed 1234567.
        let mut r = SplitMix64::new(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(gen_random(10, 0.5, 1), gen_random(10, 0.5, 1));
        assert_ne!(gen_random(30, 0.5, 1), gen_random(30, 0.5, 2));
        assert_eq!(gen_random(8, 0.0, 3).edge_count(), 0);
        assert_eq!(gen_random(8, 1.0, 3).edge_count(), 28);
    }

    #[test]
    fn permutation_is_bijective() {
        let mut r = SplitMix64::new(9);
        let mut p = r.permutation(50);
        p.sort_unstable();
        assert_eq!(p, (0..50).collect::<Vec<_>>());
    }

    #[test]
    fn sharpness_spec_validation() {
        let s = SharpnessSpec::new(vec![3, 4]).unwrap();
        assert_eq!((s.d(), s.n()), (2, 8));
        assert_eq!(SharpnessSpec::new(vec![3, 3]), Err(SharpnessError::OrderTooSmall { n: 7, bound: 7 }));
        assert!(SharpnessSpec::boundary(vec![3, 3]).is_ok());
        assert_eq!(SharpnessSpec::new(vec![2, 5]), Err(SharpnessError::CliqueTooSmall { min: 2, need: 3 }));
        assert_eq!(SharpnessSpec::new(vec![]), Err(SharpnessError::Empty));
        assert!(SharpnessSpec::new(vec![4, 4, 4]).is_err());
        assert_eq!(SharpnessSpec::boundary(vec![4, 4, 4]).unwrap().n(), 13);
    }

    #[test]
    fn sharpness_graphs() {
        let s = SharpnessSpec::new(vec![3, 4]).unwrap();
        let g = gen_sharp_gt(&s);
        assert_eq!(g.n(), 8);
        assert_eq!(g.neighbors(7), &[0, 3]);
        assert_eq!(g.edge_count(), 3 + 6 + 2);
        let gp = gen_sharp_gt_prime(&s);
        assert_eq!(gp.deg(7), 7);
        assert_eq!(gp.edge_count(), 3 + 6 + 7);
    }
}
