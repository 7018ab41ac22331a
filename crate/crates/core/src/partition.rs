//! 2-proper and almost 2-proper partitions: verification and construction.
//!
//! The main construction walks the block-cut-vertex tree bottom-up. For a
//! non-root block `B` with parent cut vertex `u_B` it builds
//!
//! * `P-(B)`, a 2-proper partition of `G(B) - u_B`, and
//! * `P(B)`, a 2-proper partition of `G(B)` (only needed when `X_B` is
//!   non-empty),
//!
//! and finally returns `{V(B0)}` plus `P-(B)` of every block hanging off the
//! root's cut vertex. Any step whose structural premise fails yields a
//! [`ClaimFailure`]; [`construct_2pp`] then tries the fallbacks.

use std::collections::HashMap;
use std::fmt;

use crate::blocks::{block_decomposition, default_root, is_biconnected, root_block_tree, RootedBlockTree};
use crate::exceptional::{recognize_with_map, ExceptionalClass};
use crate::graph::Graph;
use crate::invariants::{alpha_star, sigma_star_at_least, IndependentSetReport};
use crate::oracle::{oracle_min_2pp, OracleBudget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    TwoProper,
    /// The first part may induce `K2`.
    AlmostTwoProper,
}

impl PartitionKind {
    pub fn tag(self) -> &'static str {
        match self {
            PartitionKind::TwoProper => "2proper",
            PartitionKind::AlmostTwoProper => "almost",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "2proper" => Some(PartitionKind::TwoProper),
            "almost" => Some(PartitionKind::AlmostTwoProper),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<Vec<usize>>,
    pub kind: PartitionKind,
}

impl Partition {
    /// Normalizes: each part sorted, parts ordered by smallest vertex; for the
    /// almost kind the first two-vertex part is moved to the front.
    pub fn new(parts: Vec<Vec<usize>>, kind: PartitionKind) -> Partition {
        let mut parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        parts.sort_by_key(|p| p.first().copied());
        if kind == PartitionKind::AlmostTwoProper {
            if let Some(i) = parts.iter().position(|p| p.len() == 2) {
                let k2 = parts.remove(i);
                parts.insert(0, k2);
            }
        }
        Partition { parts, kind }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Same parts, relabeled as almost 2-proper.
    pub fn into_almost(self) -> Partition {
        Partition::new(self.parts, PartitionKind::AlmostTwoProper)
    }
}

/// Why a part fails to induce a 2-connected subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartDefect {
    TooSmall(usize),
    Disconnected,
    CutVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionIssue {
    VertexOutOfRange(usize),
    Repeated(usize),
    Uncovered(usize),
    EmptyPart(usize),
    NotBiconnected { part: usize, defect: PartDefect },
}

impl fmt::Display for PartitionIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionIssue::VertexOutOfRange(v) => write!(f, "vertex {v} is out of range"),
            PartitionIssue::Repeated(v) => write!(f, "vertex {v} appears more than once"),
            PartitionIssue::Uncovered(v) => write!(f, "vertex {v} is not covered"),
            PartitionIssue::EmptyPart(i) => write!(f, "part {i} is empty"),
            PartitionIssue::NotBiconnected { part, defect } => {
                write!(f, "part {part} is not 2-connected: ")?;
                match defect {
                    PartDefect::TooSmall(k) => write!(f, "only {k} vertices"),
                    PartDefect::Disconnected => f.write_str("disconnected"),
                    PartDefect::CutVertex(v) => write!(f, "cut vertex {v}"),
                }
            }
        }
    }
}

fn part_defect(g: &Graph, part: &[usize]) -> Option<PartDefect> {
    if part.len() < 3 {
        return Some(PartDefect::TooSmall(part.len()));
    }
    let (sub, map) = g.induced(part);
    if !sub.is_connected() {
        return Some(PartDefect::Disconnected);
    }
    block_decomposition(&sub).cut_vertices.first().map(|&c| PartDefect::CutVertex(map[c]))
}

/// Checks cover, disjointness and connectivity of every part; for the almost
/// kind part 0 may also induce `K2`. Returns every issue found.
pub fn verify_partition(g: &Graph, p: &Partition) -> Result<(), Vec<PartitionIssue>> {
    let n = g.n();
    let mut issues = Vec::new();
    let mut seen = vec![false; n];
    for (i, part) in p.parts.iter().enumerate() {
        if part.is_empty() {
            issues.push(PartitionIssue::EmptyPart(i));
        }
        for &v in part {
            if v >= n {
                issues.push(PartitionIssue::VertexOutOfRange(v));
            } else if seen[v] {
                issues.push(PartitionIssue::Repeated(v));
            } else {
                seen[v] = true;
            }
        }
    }
    issues.extend((0..n).filter(|&v| !seen[v]).map(PartitionIssue::Uncovered));
    if !issues.is_empty() {
        return Err(issues);
    }
    for (i, part) in p.parts.iter().enumerate() {
        let k2_ok =
            i == 0 && p.kind == PartitionKind::AlmostTwoProper && part.len() == 2 && g.has_edge(part[0], part[1]);
        if k2_ok {
            continue;
        }
        if let Some(defect) = part_defect(g, part) {
            issues.push(PartitionIssue::NotBiconnected { part: i, defect });
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(issues)
    }
}

/// A structural premise of the tree construction that does not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimKind {
    /// No block of `B - u_B` contains `X_B`.
    MissingCarrier,
    /// The carrier `A_B` has fewer than 3 vertices.
    SmallCarrier,
    /// A cut vertex that must be covered from below has no child block with
    /// non-cut vertices.
    NoCoveringChild,
    /// A block used as a part has fewer than 3 vertices.
    SmallBlock,
    /// The assembled partition failed verification.
    Unverified,
    /// A partition was found but has more than `alpha*` parts.
    BoundExceeded,
}

impl ClaimKind {
    pub fn tag(self) -> &'static str {
        match self {
            ClaimKind::MissingCarrier => "missing-carrier",
            ClaimKind::SmallCarrier => "small-carrier",
            ClaimKind::NoCoveringChild => "no-covering-child",
            ClaimKind::SmallBlock => "small-block",
            ClaimKind::Unverified => "unverified",
            ClaimKind::BoundExceeded => "bound-exceeded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClaimFailure {
    pub claim: ClaimKind,
    /// Block id in the decomposition the tree was built from (for
    /// `BoundExceeded` and `Unverified`, the root block).
    pub block: usize,
}

impl fmt::Display for ClaimFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at block {}", self.claim.tag(), self.block)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionPath {
    Components,
    Biconnected,
    Tree,
    EndTriangle,
    CliqueComponents,
    Oracle,
}

impl ConstructionPath {
    pub const ALL: [ConstructionPath; 6] = [
        ConstructionPath::Components,
        ConstructionPath::Biconnected,
        ConstructionPath::Tree,
        ConstructionPath::EndTriangle,
        ConstructionPath::CliqueComponents,
        ConstructionPath::Oracle,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ConstructionPath::Components => "components",
            ConstructionPath::Biconnected => "biconnected",
            ConstructionPath::Tree => "tree",
            ConstructionPath::EndTriangle => "end-triangle",
            ConstructionPath::CliqueComponents => "clique-components",
            ConstructionPath::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionOutcome {
    Partitioned { partition: Partition, parts_bound: usize, path: ConstructionPath },
    Exceptional(ExceptionalClass),
    PreconditionFailed(IndependentSetReport),
    ConstructionFailure(ClaimFailure),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionOptions {
    /// Try every end-block as root and keep the smallest result.
    pub all_roots: bool,
    /// Last-resort exhaustive search; `None` disables it.
    pub oracle: Option<OracleBudget>,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions { all_roots: false, oracle: Some(OracleBudget::partitions()) }
    }
}

struct TreeBuilder<'a> {
    tree: &'a RootedBlockTree,
    minus: HashMap<usize, Vec<Vec<usize>>>,
    full: HashMap<usize, Vec<Vec<usize>>>,
}

impl TreeBuilder<'_> {
    fn fail(claim: ClaimKind, block: usize) -> ClaimFailure {
        ClaimFailure { claim, block }
    }

    /// Child block of `x` used to cover `x`: smallest id with non-empty `X`.
    fn covering_child(&self, x: usize, b: usize) -> Result<usize, ClaimFailure> {
        self.tree.cut_children[x]
            .iter()
            .copied()
            .filter(|&c| !self.tree.x_sets[c].is_empty())
            .min()
            .ok_or(Self::fail(ClaimKind::NoCoveringChild, b))
    }

    /// `P(B)`: `{V(B)}` plus `P-` of every child block.
    fn full_partition(&mut self, b: usize) -> Result<Vec<Vec<usize>>, ClaimFailure> {
        if let Some(p) = self.full.get(&b) {
            return Ok(p.clone());
        }
        let tree = self.tree;
        let block = tree.block(b);
        if block.len() < 3 {
            return Err(Self::fail(ClaimKind::SmallBlock, b));
        }
        let mut parts = vec![block.to_vec()];
        for x in tree.child_cuts(b) {
            for &c in &tree.cut_children[x] {
                parts.extend(self.minus_partition(c)?);
            }
        }
        self.full.insert(b, parts.clone());
        Ok(parts)
    }

    /// `P-(B)`: a partition of `G(B) - u_B`.
    fn minus_partition(&mut self, b: usize) -> Result<Vec<Vec<usize>>, ClaimFailure> {
        if let Some(p) = self.minus.get(&b) {
            return Ok(p.clone());
        }
        let tree = self.tree;
        let u = tree.parent_cut[b].expect("non-root block");
        let mut parts = Vec::new();
        // Cut vertices of B (other than u_B) not covered by the carrier.
        let uncovered: Vec<usize> = if tree.x_sets[b].is_empty() {
            tree.block(b).iter().copied().filter(|&v| v != u).collect()
        } else {
            let carrier = tree.carriers[b].as_ref().ok_or(Self::fail(ClaimKind::MissingCarrier, b))?;
            if carrier.len() < 3 {
                return Err(Self::fail(ClaimKind::SmallCarrier, b));
            }
            parts.push(carrier.clone());
            tree.block(b).iter().copied().filter(|&v| v != u && carrier.binary_search(&v).is_err()).collect()
        };
        let mut selected = Vec::new();
        for &x in &uncovered {
            let c = self.covering_child(x, b)?;
            selected.push(c);
            parts.extend(self.full_partition(c)?);
        }
        for x in tree.child_cuts(b) {
            for &c in &tree.cut_children[x] {
                if !selected.contains(&c) {
                    parts.extend(self.minus_partition(c)?);
                }
            }
        }
        self.minus.insert(b, parts.clone());
        Ok(parts)
    }
}

/// The bottom-up construction over a rooted block tree. The result is
/// unverified; callers check it with [`verify_partition`].
pub fn tree_construct(tree: &RootedBlockTree) -> Result<Partition, ClaimFailure> {
    let mut builder = TreeBuilder { tree, minus: HashMap::new(), full: HashMap::new() };
    let root = tree.root;
    let root_block = tree.block(root);
    if root_block.len() < 3 {
        return Err(TreeBuilder::fail(ClaimKind::SmallBlock, root));
    }
    let mut parts = vec![root_block.to_vec()];
    for x in tree.child_cuts(root) {
        for &c in &tree.cut_children[x] {
            parts.extend(builder.minus_partition(c)?);
        }
    }
    Ok(Partition::new(parts, PartitionKind::TwoProper))
}

type Found = Result<(Vec<Vec<usize>>, ConstructionPath), ClaimFailure>;

fn checked(g: &Graph, parts: Vec<Vec<usize>>, bound: usize, block: usize) -> Result<Vec<Vec<usize>>, ClaimFailure> {
    let p = Partition::new(parts, PartitionKind::TwoProper);
    if verify_partition(g, &p).is_err() {
        return Err(ClaimFailure { claim: ClaimKind::Unverified, block });
    }
    if p.len() > bound {
        return Err(ClaimFailure { claim: ClaimKind::BoundExceeded, block });
    }
    Ok(p.parts)
}

/// Tree construction from one root, or from every end-block.
fn via_tree(g: &Graph, bound: usize, all_roots: bool) -> Result<Vec<Vec<usize>>, ClaimFailure> {
    let decomp = block_decomposition(g);
    let roots = if all_roots { decomp.end_blocks() } else { default_root(&decomp).into_iter().collect() };
    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut first_failure = None;
    for root in roots {
        let tree = root_block_tree(g, root).expect("connected with a cut vertex");
        let attempt = tree_construct(&tree).and_then(|p| checked(g, p.parts, bound, root));
        match attempt {
            Ok(parts) if best.as_ref().is_none_or(|b| parts.len() < b.len()) => best = Some(parts),
            Ok(_) => {}
            Err(e) => {
                first_failure.get_or_insert(e);
            }
        }
    }
    best.ok_or_else(|| first_failure.expect("a connected graph with a cut vertex has an end-block"))
}

/// An end-block on three vertices whose removal leaves a 2-connected graph.
fn end_triangle(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let decomp = block_decomposition(g);
    decomp.end_blocks().into_iter().find_map(|b| {
        let block = &decomp.blocks[b];
        if block.len() != 3 {
            return None;
        }
        let rest: Vec<usize> = (0..g.n()).filter(|v| block.binary_search(v).is_err()).collect();
        is_biconnected(&g.induced(&rest).0).then(|| vec![block.clone(), rest])
    })
}

/// Vertices outside the component of `G - removed` containing `keep`.
fn away_from(g: &Graph, removed: usize, keep: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    seen[removed] = true;
    seen[keep] = true;
    let mut stack = vec![keep];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..g.n()).filter(|&v| !seen[v]).collect()
}

/// For a block `B` and a vertex `u` of `B` outside `A_B ∪ {u_B}` whose only
/// neighbor among non-cut vertices lies in `X_B`: `V(B)` together with, for
/// each other neighbor `v` of `u`, the vertices cut off from `u` by `v`
/// (plus `v` itself when `v` is outside `B`).
fn clique_components(g: &Graph, tree: &RootedBlockTree) -> Option<Vec<Vec<usize>>> {
    let decomp = &tree.decomposition;
    for b in 0..tree.block_count() {
        let (Some(u_b), Some(carrier)) = (tree.parent_cut[b], tree.carriers[b].as_ref()) else {
            continue;
        };
        let block = tree.block(b);
        for &u in block {
            if u == u_b || carrier.binary_search(&u).is_ok() {
                continue;
            }
            let in_x: Vec<usize> = g.neighbors(u).iter().copied().filter(|&v| !decomp.is_cut(v)).collect();
            if in_x.len() != 1 || tree.x_sets[b].binary_search(&in_x[0]).is_err() {
                continue;
            }
            let mut parts = vec![block.to_vec()];
            for &v in g.neighbors(u).iter().filter(|&&v| v != in_x[0]) {
                let mut part = away_from(g, v, u);
                if block.binary_search(&v).is_err() {
                    part.push(v);
                }
                if !part.is_empty() {
                    parts.push(part);
                }
            }
            if verify_partition(g, &Partition::new(parts.clone(), PartitionKind::TwoProper)).is_ok() {
                return Some(parts);
            }
        }
    }
    None
}

fn fallbacks(g: &Graph, bound: usize, opts: &PartitionOptions, failure: ClaimFailure) -> Found {
    if let Some(parts) = end_triangle(g) {
        if parts.len() <= bound {
            return Ok((parts, ConstructionPath::EndTriangle));
        }
    }
    if let Some(root) = default_root(&block_decomposition(g)) {
        let tree = root_block_tree(g, root).expect("connected with a cut vertex");
        if let Some(parts) = clique_components(g, &tree) {
            if parts.len() <= bound {
                return Ok((parts, ConstructionPath::CliqueComponents));
            }
        }
    }
    if let Some(budget) = &opts.oracle {
        if let Ok(Some((k, p))) = oracle_min_2pp(g, false, budget) {
            if k <= bound {
                return Ok((p.parts, ConstructionPath::Oracle));
            }
            return Err(ClaimFailure { claim: ClaimKind::BoundExceeded, block: failure.block });
        }
    }
    Err(failure)
}

/// Construction without the hypothesis check; `bound` is `alpha*(g)`.
fn find_partition(g: &Graph, bound: usize, opts: &PartitionOptions) -> Found {
    if g.n() == 0 {
        return Ok((Vec::new(), ConstructionPath::Components));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let attempt = comps.iter().try_fold(Vec::new(), |mut acc, comp| {
            let (sub, map) = g.induced(comp);
            if recognize_with_map(&sub).is_some() {
                return Err(None);
            }
            let sub_bound = alpha_star(&sub).expect("non-empty").0;
            let (parts, _) = find_partition(&sub, sub_bound, opts).map_err(Some)?;
            acc.extend(parts.into_iter().map(|p| p.into_iter().map(|v| map[v]).collect::<Vec<_>>()));
            Ok(acc)
        });
        return match attempt {
            Ok(parts) => match checked(g, parts, bound, 0) {
                Ok(parts) => Ok((parts, ConstructionPath::Components)),
                Err(e) => fallback_disconnected(g, bound, opts, e),
            },
            Err(e) => fallback_disconnected(
                g,
                bound,
                opts,
                e.unwrap_or(ClaimFailure { claim: ClaimKind::Unverified, block: 0 }),
            ),
        };
    }
    if is_biconnected(g) {
        return Ok((vec![(0..g.n()).collect()], ConstructionPath::Biconnected));
    }
    if g.n() < 3 {
        return Err(ClaimFailure { claim: ClaimKind::SmallBlock, block: 0 });
    }
    match via_tree(g, bound, opts.all_roots) {
        Ok(parts) => Ok((parts, ConstructionPath::Tree)),
        Err(e) => fallbacks(g, bound, opts, e),
    }
}

fn fallback_disconnected(g: &Graph, bound: usize, opts: &PartitionOptions, failure: ClaimFailure) -> Found {
    if let Some(budget) = &opts.oracle {
        if let Ok(Some((k, p))) = oracle_min_2pp(g, false, budget) {
            if k <= bound {
                return Ok((p.parts, ConstructionPath::Oracle));
            }
        }
    }
    Err(failure)
}

/// Dispatch: hypothesis check, exceptional recognition, then construction.
pub fn construct_2pp(g: &Graph, opts: &PartitionOptions) -> PartitionOutcome {
    if let Err(witness) = sigma_star_at_least(g, g.n() as u64) {
        return PartitionOutcome::PreconditionFailed(witness);
    }
    if let Some(r) = recognize_with_map(g) {
        return PartitionOutcome::Exceptional(r.class);
    }
    let bound = if g.n() == 0 { 0 } else { alpha_star(g).expect("non-empty").0 };
    match find_partition(g, bound, opts) {
        Ok((parts, path)) => PartitionOutcome::Partitioned {
            partition: Partition::new(parts, PartitionKind::TwoProper),
            parts_bound: bound,
            path,
        },
        Err(e) => PartitionOutcome::ConstructionFailure(e),
    }
}

/// Closed-form almost 2-proper partitions of the exceptional graphs, given
/// the recognition map (`map[canonical id] = vertex`). `None` for the `F11`
/// and `F12` families, which have no closed form here.
pub fn exceptional_almost_partition(class: &ExceptionalClass, map: &[usize]) -> Option<Partition> {
    let parts: Vec<Vec<usize>> = match class {
        ExceptionalClass::K2 => vec![vec![map[0], map[1]]],
        ExceptionalClass::F5 => vec![vec![map[3], map[4]], vec![map[0], map[1], map[2]]],
        ExceptionalClass::H { .. } => {
            vec![vec![map[2], map[3]], map.iter().copied().filter(|&v| v != map[2] && v != map[3]).collect()]
        }
        ExceptionalClass::F11(_) | ExceptionalClass::F12(_) => return None,
    };
    Some(Partition::new(parts, PartitionKind::AlmostTwoProper))
}

/// The 3-part 2-proper partition `{a, c1, c2}`, `S1 ∪ {b}`, `S2` of `H`
/// graphs with `3 <= s <= t`, `t >= 4`.
pub fn h_three_part_partition(class: &ExceptionalClass, map: &[usize]) -> Option<Partition> {
    let ExceptionalClass::H { s, t, .. } = *class else { return None };
    if !class.has_three_part_partition() {
        return None;
    }
    let s1 = 4..4 + s - 1;
    let s2 = s1.end..s1.end + t - 1;
    let mut with_b: Vec<usize> = s1.map(|i| map[i]).collect();
    with_b.push(map[1]);
    let parts = vec![vec![map[0], map[2], map[3]], with_b, s2.map(|i| map[i]).collect()];
    Some(Partition::new(parts, PartitionKind::TwoProper))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlmostError {
    PreconditionFailed(IndependentSetReport),
    NotFound(Option<ClaimFailure>),
}

impl fmt::Display for AlmostError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlmostError::PreconditionFailed(w) => {
                write!(f, "large independent set {:?} has weight {}", w.vertices, w.weight)
            }
            AlmostError::NotFound(Some(c)) => write!(f, "no almost 2-proper partition found ({c})"),
            AlmostError::NotFound(None) => f.write_str("no almost 2-proper partition found"),
        }
    }
}

impl std::error::Error for AlmostError {}

/// An almost 2-proper partition with at most `alpha*` parts, for graphs with
/// `sigma* >= n`. Returns the partition and `alpha*`.
pub fn construct_almost_2pp(g: &Graph, opts: &PartitionOptions) -> Result<(Partition, usize), AlmostError> {
    match construct_2pp(g, opts) {
        PartitionOutcome::Partitioned { partition, parts_bound, .. } => Ok((partition.into_almost(), parts_bound)),
        PartitionOutcome::PreconditionFailed(w) => Err(AlmostError::PreconditionFailed(w)),
        PartitionOutcome::ConstructionFailure(c) => Err(AlmostError::NotFound(Some(c))),
        PartitionOutcome::Exceptional(class) => {
            let bound = alpha_star(g).expect("exceptional graphs are non-empty").0;
            let r = recognize_with_map(g).expect("recognized above");
            if let Some(p) = exceptional_almost_partition(&class, &r.map) {
                return Ok((p, bound));
            }
            // F11 / F12 have at most 12 vertices.
            let budget = OracleBudget::new(g.n().max(12));
            match oracle_min_2pp(g, true, &budget) {
                Ok(Some((k, p))) if k <= bound => Ok((p, bound)),
                _ => Err(AlmostError::NotFound(None)),
            }
        }
    }
}
