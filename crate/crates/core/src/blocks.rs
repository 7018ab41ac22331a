//! Blocks, cut vertices and the rooted block-cut-vertex tree.

use thiserror::Error;

use crate::graph::Graph;

/// Blocks and cut vertices of a graph.
///
/// Blocks are listed in discovery order of a depth-first search started at
/// the smallest vertex of each component; that order is the block id. Each
/// block's vertex list is sorted. An isolated vertex forms a single-vertex
/// block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<usize>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
    is_cut: Vec<bool>,
    /// For every vertex, the ids of the blocks containing it.
    vertex_blocks: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn is_cut(&self, v: usize) -> bool {
        self.is_cut[v]
    }

    pub fn blocks_of(&self, v: usize) -> &[usize] {
        &self.vertex_blocks[v]
    }

    /// Cut vertices lying in block `b`.
    pub fn cuts_in(&self, b: usize) -> Vec<usize> {
        self.blocks[b].iter().copied().filter(|&v| self.is_cut[v]).collect()
    }

    /// Blocks that are leaves of the block-cut-vertex tree: exactly one cut
    /// vertex in a component that has at least one.
    pub fn end_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.cuts_in(b).len() == 1).collect()
    }
}

struct Frame {
    v: usize,
    parent: usize,
    next: usize,
}

pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    const NONE: usize = usize::MAX;
    let mut disc = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut time = 0;
    // Reused membership marks for collecting a block off the edge stack.
    let mut mark = vec![usize::MAX; n];

    for root in 0..n {
        if disc[root] != NONE {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.deg(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        let mut root_children = 0;
        let mut stack = vec![Frame { v: root, parent: NONE, next: 0 }];
        while let Some(top) = stack.last_mut() {
            let v = top.v;
            if top.next < g.deg(v) {
                let w = g.neighbors(v)[top.next];
                top.next += 1;
                if disc[w] == NONE {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push(Frame { v: w, parent: v, next: 0 });
                } else if w != top.parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            let parent = top.parent;
            stack.pop();
            if parent == NONE {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                if parent != root {
                    is_cut[parent] = true;
                }
                let id = blocks.len();
                let mut block = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    for x in [a, b] {
                        if mark[x] != id {
                            mark[x] = id;
                            block.push(x);
                        }
                    }
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                block.sort_unstable();
                blocks.push(block);
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }

    let mut vertex_blocks = vec![Vec::new(); n];
    for (id, block) in blocks.iter().enumerate() {
        for &v in block {
            vertex_blocks[v].push(id);
        }
    }
    let cut_vertices = (0..n).filter(|&v| is_cut[v]).collect();
    BlockDecomposition { blocks, cut_vertices, is_cut, vertex_blocks }
}

/// 2-connected: more than two vertices, connected, and no cut vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    if g.n() <= 2 || !g.is_connected() {
        return false;
    }
    block_decomposition(g).cut_vertices.is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no cut vertex")]
    NoCutVertex,
    #[error("block {0} is not an end-block")]
    NotEndBlock(usize),
    #[error("block {0} does not exist")]
    NoSuchBlock(usize),
}

/// The block-cut-vertex tree of a connected graph with a cut vertex, rooted
/// at an end-block.
#[derive(Debug, Clone)]
pub struct RootedBlockTree {
    pub decomposition: BlockDecomposition,
    pub root: usize,
    /// Parent cut vertex `u_B` of each block; `None` for the root.
    pub parent_cut: Vec<Option<usize>>,
    /// Child blocks hanging off each cut vertex (indexed by vertex; empty for
    /// non-cut vertices).
    pub cut_children: Vec<Vec<usize>>,
    /// Non-cut vertices of each block, sorted.
    pub x_sets: Vec<Vec<usize>>,
    /// Carrier `A_B`: vertex set of the chosen block of `B - u_B` containing
    /// `X_B`. `None` for the root, for blocks with empty `X_B`, and when no
    /// block of `B - u_B` contains `X_B`.
    pub carriers: Vec<Option<Vec<usize>>>,
    /// Blocks in pre-order (root first).
    pub order: Vec<usize>,
}

/// End-block with the smallest minimum vertex id; ties go to the lower block id.
pub fn default_root(decomp: &BlockDecomposition) -> Option<usize> {
    decomp.end_blocks().into_iter().min_by_key(|&b| (decomp.blocks[b][0], b))
}

pub fn root_block_tree(g: &Graph, root: usize) -> Result<RootedBlockTree, TreeError> {
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    let decomp = block_decomposition(g);
    if decomp.cut_vertices.is_empty() {
        return Err(TreeError::NoCutVertex);
    }
    if root >= decomp.blocks.len() {
        return Err(TreeError::NoSuchBlock(root));
    }
    if decomp.cuts_in(root).len() != 1 {
        return Err(TreeError::NotEndBlock(root));
    }

    let nb = decomp.blocks.len();
    let mut parent_cut = vec![None; nb];
    let mut cut_children = vec![Vec::new(); g.n()];
    let mut visited = vec![false; nb];
    let mut order = Vec::with_capacity(nb);
    let mut stack = vec![root];
    visited[root] = true;
    while let Some(b) = stack.pop() {
        order.push(b);
        for &x in &decomp.blocks[b] {
            if !decomp.is_cut(x) || parent_cut[b] == Some(x) {
                continue;
            }
            for &child in decomp.blocks_of(x) {
                if !visited[child] {
                    visited[child] = true;
                    parent_cut[child] = Some(x);
                    cut_children[x].push(child);
                }
            }
            // Push in reverse so lower block ids are visited first.
            for &child in cut_children[x].iter().rev() {
                stack.push(child);
            }
        }
    }

    let x_sets: Vec<Vec<usize>> =
        decomp.blocks.iter().map(|blk| blk.iter().copied().filter(|&v| !decomp.is_cut(v)).collect()).collect();

    let carriers = (0..nb)
        .map(|b| match parent_cut[b] {
            Some(u) if !x_sets[b].is_empty() => carrier(g, &decomp.blocks[b], u, &x_sets[b]),
            _ => None,
        })
        .collect();

    Ok(RootedBlockTree { decomposition: decomp, root, parent_cut, cut_children, x_sets, carriers, order })
}

/// Largest block of `B - u` containing every vertex of `x`; ties go to the
/// smaller minimum vertex id, then lexicographically.
fn carrier(g: &Graph, block: &[usize], u: usize, x: &[usize]) -> Option<Vec<usize>> {
    let rest: Vec<usize> = block.iter().copied().filter(|&v| v != u).collect();
    let (sub, map) = g.induced(&rest);
    let inner = block_decomposition(&sub);
    let mut local_x: Vec<usize> = x.iter().map(|v| rest.binary_search(v).expect("X_B lies in B - u")).collect();
    local_x.sort_unstable();
    inner
        .blocks
        .iter()
        .filter(|blk| local_x.iter().all(|v| blk.binary_search(v).is_ok()))
        .map(|blk| blk.iter().map(|&i| map[i]).collect::<Vec<_>>())
        .max_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)))
}

impl RootedBlockTree {
    pub fn block(&self, b: usize) -> &[usize] {
        &self.decomposition.blocks[b]
    }

    pub fn block_count(&self) -> usize {
        self.decomposition.blocks.len()
    }

    /// Child cut vertices of block `b`.
    pub fn child_cuts(&self, b: usize) -> Vec<usize> {
        self.decomposition.cuts_in(b).into_iter().filter(|&x| self.parent_cut[b] != Some(x)).collect()
    }

    /// `B(b)`: `b` and all of its descendant blocks, pre-order.
    pub fn subtree_blocks(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(c) = stack.pop() {
            out.push(c);
            for x in self.child_cuts(c) {
                stack.extend(self.cut_children[x].iter().rev());
            }
        }
        out
    }

    /// Vertex set of `G(b)`, sorted.
    pub fn subtree_vertices(&self, b: usize) -> Vec<usize> {
        let mut vs: Vec<usize> = self.subtree_blocks(b).into_iter().flat_map(|c| self.block(c).to_vec()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Blocks of the subtree at `b` with non-empty `X`.
    pub fn tilde_blocks(&self, b: usize) -> Vec<usize> {
        self.subtree_blocks(b).into_iter().filter(|&c| !self.x_sets[c].is_empty()).collect()
    }
}
