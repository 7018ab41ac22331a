//! Batch checks of the structural statements over graph corpora.
//!
//! A corpus is either every labeled graph on `n` vertices or a seeded random
//! ensemble. Each graph is evaluated independently (in parallel) and the
//! per-graph tallies are merged; violations are reported in graph6.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::blocks::{block_decomposition, default_root, is_biconnected, root_block_tree};
use crate::exceptional::{recognize_with_map, ExceptionalClass};
use crate::format::emit_graph6;
use crate::generators::{gen_random, SplitMix64};
use crate::graph::Graph;
use crate::invariants::{alpha_star, min_degree, pi2, sigma2, sigma_star, ExtInt};
use crate::oracle::{oracle_min_2pp, OracleBudget};
use crate::partition::{
    construct_2pp, construct_almost_2pp, h_three_part_partition, tree_construct, verify_partition, ConstructionPath,
    PartitionOptions, PartitionOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statement {
    /// σ* >= n implies a 2-proper partition with at most α* parts, or an
    /// exceptional graph.
    Ind,
    /// σ2 >= n/δ + δ - 1 implies π2 >= n - δ, which implies σ* >= n.
    Prop1,
    /// α* · σ2 <= 2(n - 1) for non-complete graphs with δ >= 1.
    Prop2,
    /// Component bounds for σ* and α*, and α* >= 2 with a cut vertex.
    Lemmas,
    /// π2 >= n - δ implies a partition with at most α* parts, or a graph in
    /// {K2, F5} ∪ F11 ∪ F12 ∪ balanced H.
    CorollaryPi,
    /// σ2 >= n/δ + δ - 1 implies a partition with |P| σ2 <= 2(n - 1), or a
    /// graph in {F5} ∪ F11 ∪ F12 ∪ balanced H of order 6 or 8.
    CorollarySigma,
    /// σ* >= n implies an almost 2-proper partition with at most α* parts.
    Almost,
    /// For non-exceptional graphs with σ* >= n: every end-block has at least
    /// 4 vertices, and a successful tree construction has exactly one part
    /// per block with non-cut vertices, at most α* in total.
    Claims,
}

impl Statement {
    pub const ALL: [Statement; 8] = [
        Statement::Ind,
        Statement::Prop1,
        Statement::Prop2,
        Statement::Lemmas,
        Statement::CorollaryPi,
        Statement::CorollarySigma,
        Statement::Almost,
        Statement::Claims,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Statement::Ind => "ind",
            Statement::Prop1 => "prop1",
            Statement::Prop2 => "prop2",
            Statement::Lemmas => "lemmas",
            Statement::CorollaryPi => "corollary-pi",
            Statement::CorollarySigma => "corollary-sigma",
            Statement::Almost => "almost",
            Statement::Claims => "claims",
        }
    }
}

impl FromStr for Statement {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Statement::ALL.into_iter().find(|st| st.tag() == s).ok_or_else(|| CheckError::UnknownStatement(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Corpus {
    /// All `2^(n(n-1)/2)` labeled graphs on `n` vertices.
    Exhaustive { n: usize },
    /// `count` graphs `G(n, p)`; graph `i` uses the `i`-th output of a
    /// SplitMix64 stream seeded with `seed`.
    Random { count: usize, n: usize, p: f64, seed: u64 },
}

impl fmt::Display for Corpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Corpus::Exhaustive { n } => write!(f, "exhaustive n={n}"),
            Corpus::Random { count, n, p, seed } => write!(f, "random count={count} n={n} p={p} seed={seed}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("exhaustive corpora need 1 <= n <= 7, got {0}")]
    ExhaustiveOrder(usize),
    #[error("the n = 7 corpus has 2^21 graphs; enable it explicitly")]
    OrderSevenOptIn,
    #[error("unknown statement {0:?}")]
    UnknownStatement(String),
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub allow_n7: bool,
    pub partition: PartitionOptions,
    /// Budget for oracle cross-checks; larger graphs are tallied as skipped.
    pub oracle: OracleBudget,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { allow_n7: false, partition: PartitionOptions::default(), oracle: OracleBudget::partitions() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tally {
    pub total: u64,
    pub hypothesis: u64,
    pub exceptional: u64,
    pub partitioned: BTreeMap<ConstructionPath, u64>,
    pub precondition_failed: u64,
    pub construction_failed: u64,
    pub budget_skipped: u64,
    /// Exceptional hits by class name.
    pub classes: BTreeMap<String, u64>,
    /// `graph6 reason`, sorted.
    pub violations: Vec<String>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.hypothesis += other.hypothesis;
        self.exceptional += other.exceptional;
        for (k, v) in other.partitioned {
            *self.partitioned.entry(k).or_default() += v;
        }
        for (k, v) in other.classes {
            *self.classes.entry(k).or_default() += v;
        }
        self.precondition_failed += other.precondition_failed;
        self.construction_failed += other.construction_failed;
        self.budget_skipped += other.budget_skipped;
        self.violations.extend(other.violations);
        self
    }

    fn violation(&mut self, g: &Graph, reason: impl fmt::Display) {
        self.violations.push(format!("{} {reason}", emit_graph6(g)));
    }

    fn exceptional(&mut self, class: &ExceptionalClass) {
        self.exceptional += 1;
        *self.classes.entry(class.to_string()).or_default() += 1;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheckReport {
    pub corpus: Corpus,
    pub statement: Statement,
    pub tally: Tally,
}

impl TheoremCheckReport {
    pub fn passed(&self) -> bool {
        self.tally.violations.is_empty()
    }

    /// Line-oriented `key=value` rendering.
    pub fn render(&self) -> String {
        let t = &self.tally;
        let mut out = String::new();
        out.push_str(&format!("corpus={}\n", self.corpus));
        out.push_str(&format!("statement={}\n", self.statement.tag()));
        out.push_str(&format!("total={}\n", t.total));
        out.push_str(&format!("hypothesis={}\n", t.hypothesis));
        out.push_str(&format!("exceptional={}\n", t.exceptional));
        for (class, count) in &t.classes {
            out.push_str(&format!("exceptional.{class}={count}\n"));
        }
        for path in ConstructionPath::ALL {
            out.push_str(&format!("partitioned.{}={}\n", path.tag(), t.partitioned.get(&path).copied().unwrap_or(0)));
        }
        out.push_str(&format!("precondition_failed={}\n", t.precondition_failed));
        out.push_str(&format!("construction_failed={}\n", t.construction_failed));
        out.push_str(&format!("budget_skipped={}\n", t.budget_skipped));
        out.push_str(&format!("violations={}\n", t.violations.len()));
        for v in &t.violations {
            out.push_str(&format!("violation={v}\n"));
        }
        out
    }
}

/// Labeled graph number `code`: bit `i` selects the `i`-th pair `(u, v)`,
/// `u < v`, in lexicographic order.
pub fn labeled_graph(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if code >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges).expect("valid")
}

pub fn run_check(corpus: Corpus, statement: Statement, opts: &CheckOptions) -> Result<TheoremCheckReport, CheckError> {
    let tally = match corpus {
        Corpus::Exhaustive { n } => {
            if n == 0 || n > 7 {
                return Err(CheckError::ExhaustiveOrder(n));
            }
            if n == 7 && !opts.allow_n7 {
                return Err(CheckError::OrderSevenOptIn);
            }
            let count = 1u64 << (n * (n - 1) / 2);
            (0..count)
                .into_par_iter()
                .fold(Tally::default, |acc, code| acc.merge(evaluate(&labeled_graph(n, code), statement, opts)))
                .reduce(Tally::default, Tally::merge)
        }
        Corpus::Random { count, n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CheckError::Probability(p));
            }
            let mut rng = SplitMix64::new(seed);
            let seeds: Vec<u64> = (0..count).map(|_| rng.next_u64()).collect();
            seeds
                .into_par_iter()
                .fold(Tally::default, |acc, s| acc.merge(evaluate(&gen_random(n, p, s), statement, opts)))
                .reduce(Tally::default, Tally::merge)
        }
    };
    let mut tally = tally;
    tally.violations.sort();
    Ok(TheoremCheckReport { corpus, statement, tally })
}

/// Tally for a single graph.
pub fn evaluate(g: &Graph, statement: Statement, opts: &CheckOptions) -> Tally {
    let mut t = Tally { total: 1, ..Tally::default() };
    if g.n() == 0 {
        return t;
    }
    match statement {
        Statement::Ind => check_ind(g, opts, &mut t),
        Statement::Prop1 => check_prop1(g, &mut t),
        Statement::Prop2 => check_prop2(g, &mut t),
        Statement::Lemmas => check_lemmas(g, &mut t),
        Statement::CorollaryPi => check_corollary_pi(g, opts, &mut t),
        Statement::CorollarySigma => check_corollary_sigma(g, opts, &mut t),
        Statement::Almost => check_almost(g, opts, &mut t),
        Statement::Claims => check_claims(g, opts, &mut t),
    }
    t
}

/// Tallies a 2-proper construction and flags unsound results. Returns the
/// exceptional class when there is one.
fn record_outcome(g: &Graph, outcome: &PartitionOutcome, t: &mut Tally) -> Option<ExceptionalClass> {
    match outcome {
        PartitionOutcome::Partitioned { partition, parts_bound, path } => {
            *t.partitioned.entry(*path).or_default() += 1;
            if verify_partition(g, partition).is_err() {
                t.violation(g, "partition fails verification");
            }
            if partition.len() > *parts_bound {
                t.violation(g, format!("{} parts exceed alpha*={parts_bound}", partition.len()));
            }
            None
        }
        PartitionOutcome::Exceptional(class) => {
            t.exceptional(class);
            Some(*class)
        }
        PartitionOutcome::PreconditionFailed(_) => {
            t.precondition_failed += 1;
            None
        }
        PartitionOutcome::ConstructionFailure(c) => {
            t.construction_failed += 1;
            t.violation(g, format!("construction failed: {c}"));
            None
        }
    }
}

fn check_ind(g: &Graph, opts: &CheckOptions, t: &mut Tally) {
    let outcome = construct_2pp(g, &opts.partition);
    if let PartitionOutcome::PreconditionFailed(w) = &outcome {
        t.precondition_failed += 1;
        if !w.is_large || w.weight >= g.n() as u64 {
            t.violation(g, "bad precondition witness");
        }
        return;
    }
    t.hypothesis += 1;
    if let Some(_class) = record_outcome(g, &outcome, t) {
        // Exceptional graphs must really lack a partition within the bound.
        let bound = alpha_star(g).expect("non-empty").0;
        match oracle_min_2pp(g, false, &opts.oracle) {
            Ok(Some((k, _))) if k <= bound => t.violation(g, format!("exceptional but has a {k}-part partition")),
            Ok(_) => {}
            Err(_) => t.budget_skipped += 1,
        }
    }
}

/// `δ σ2 >= n + δ² - δ`, the integer form of `σ2 >= n/δ + δ - 1`.
fn sigma2_condition(g: &Graph, delta: u64) -> bool {
    let n = g.n() as u64;
    delta >= 1
        && match sigma2(g) {
            ExtInt::Infinite => true,
            ExtInt::Finite(s) => delta * s >= n + delta * delta - delta,
        }
}

fn check_prop1(g: &Graph, t: &mut Tally) {
    let n = g.n() as u64;
    let delta = min_degree(g).expect("non-empty") as u64;
    let pi = pi2(g);
    let first = sigma2_condition(g, delta);
    let second = pi.at_least(n - delta);
    if first || second {
        t.hypothesis += 1;
    }
    if first && !second {
        t.violation(g, format!("sigma2 condition holds but pi2={pi} < n-delta={}", n - delta));
    }
    if second {
        let (s, _) = sigma_star(g);
        if !s.at_least(n) {
            t.violation(g, format!("pi2 condition holds but sigma*={s} < n={n}"));
        }
    }
}

fn check_prop2(g: &Graph, t: &mut Tally) {
    let delta = min_degree(g).expect("non-empty");
    let ExtInt::Finite(s2) = sigma2(g) else { return };
    if delta == 0 {
        return;
    }
    t.hypothesis += 1;
    let a = alpha_star(g).expect("non-empty").0 as u64;
    let n = g.n() as u64;
    if a * s2 > 2 * (n - 1) {
        t.violation(g, format!("alpha*={a} sigma2={s2} exceed 2(n-1)={}", 2 * (n - 1)));
    }
}

fn check_lemmas(g: &Graph, t: &mut Tally) {
    let comps = g.components();
    let whole_sigma = sigma_star(g).0;
    let whole_alpha = alpha_star(g).expect("non-empty").0;
    if comps.len() > 1 {
        t.hypothesis += 1;
        let mut sum = 0;
        for comp in &comps {
            let sub = g.induced(comp).0;
            let s = sigma_star(&sub).0;
            if whole_sigma > s {
                t.violation(g, format!("sigma*={whole_sigma} exceeds component sigma*={s}"));
            }
            sum += alpha_star(&sub).expect("non-empty").0;
        }
        if whole_alpha < sum {
            t.violation(g, format!("alpha*={whole_alpha} below component sum {sum}"));
        }
    } else if !block_decomposition(g).cut_vertices.is_empty() {
        t.hypothesis += 1;
        if whole_alpha < 2 {
            t.violation(g, format!("cut vertex but alpha*={whole_alpha}"));
        }
    }
}

fn check_corollary_pi(g: &Graph, opts: &CheckOptions, t: &mut Tally) {
    let n = g.n() as u64;
    let delta = min_degree(g).expect("non-empty") as u64;
    if !pi2(g).at_least(n - delta) {
        return;
    }
    t.hypothesis += 1;
    let outcome = construct_2pp(g, &opts.partition);
    if let PartitionOutcome::PreconditionFailed(w) = &outcome {
        t.precondition_failed += 1;
        t.violation(g, format!("pi2 condition holds but {:?} is large with weight {}", w.vertices, w.weight));
        return;
    }
    if let Some(class) = record_outcome(g, &outcome, t) {
        let listed = matches!(
            class,
            ExceptionalClass::K2 | ExceptionalClass::F5 | ExceptionalClass::F11(_) | ExceptionalClass::F12(_)
        ) || class.is_balanced_h();
        if !listed {
            t.violation(g, format!("{class} is not among the permitted exceptions"));
        }
    }
}

fn check_corollary_sigma(g: &Graph, opts: &CheckOptions, t: &mut Tally) {
    let delta = min_degree(g).expect("non-empty") as u64;
    if g.is_complete() || !sigma2_condition(g, delta) {
        return;
    }
    t.hypothesis += 1;
    let ExtInt::Finite(s2) = sigma2(g) else { unreachable!("non-complete") };
    let limit = 2 * (g.n() as u64 - 1);
    let outcome = construct_2pp(g, &opts.partition);
    match &outcome {
        PartitionOutcome::Partitioned { partition, .. } => {
            if partition.len() as u64 * s2 > limit {
                t.violation(g, format!("{} parts with sigma2={s2} exceed 2(n-1)={limit}", partition.len()));
            }
        }
        PartitionOutcome::PreconditionFailed(_) => {
            t.violation(g, "sigma2 condition holds but sigma* < n");
        }
        _ => {}
    }
    let Some(class) = record_outcome(g, &outcome, t) else { return };
    let listed = matches!(class, ExceptionalClass::F5 | ExceptionalClass::F11(_) | ExceptionalClass::F12(_))
        || (class.is_balanced_h() && class.order() <= 8);
    if listed {
        return;
    }
    let map = recognize_with_map(g).expect("exceptional").map;
    match h_three_part_partition(&class, &map) {
        Some(p) if verify_partition(g, &p).is_ok() && 3 * s2 <= limit => {}
        _ => t.violation(g, format!("{class} is not among the permitted exceptions")),
    }
}

fn check_almost(g: &Graph, opts: &CheckOptions, t: &mut Tally) {
    let n = g.n() as u64;
    if !sigma_star(g).0.at_least(n) {
        t.precondition_failed += 1;
        return;
    }
    t.hypothesis += 1;
    if let Some(r) = recognize_with_map(g) {
        t.exceptional(&r.class);
    }
    match construct_almost_2pp(g, &opts.partition) {
        Ok((p, bound)) => {
            if verify_partition(g, &p).is_err() {
                t.violation(g, "almost partition fails verification");
            }
            if p.len() > bound {
                t.violation(g, format!("{} parts exceed alpha*={bound}", p.len()));
            }
        }
        Err(e) => {
            t.construction_failed += 1;
            t.violation(g, e);
        }
    }
}

fn check_claims(g: &Graph, opts: &CheckOptions, t: &mut Tally) {
    let n = g.n() as u64;
    if !sigma_star(g).0.at_least(n) {
        t.precondition_failed += 1;
        return;
    }
    if let Some(r) = recognize_with_map(g) {
        t.exceptional(&r.class);
        return;
    }
    t.hypothesis += 1;
    let decomp = block_decomposition(g);
    for b in decomp.end_blocks() {
        if decomp.blocks[b].len() < 4 {
            t.violation(g, format!("end-block {:?} has fewer than 4 vertices", decomp.blocks[b]));
        }
    }
    if !g.is_connected() || is_biconnected(g) || g.n() < 3 {
        return;
    }
    let Some(root) = default_root(&decomp) else { return };
    let tree = root_block_tree(g, root).expect("connected with a cut vertex");
    match tree_construct(&tree) {
        Ok(p) if verify_partition(g, &p).is_ok() => {
            *t.partitioned.entry(ConstructionPath::Tree).or_default() += 1;
            let tilde = tree.tilde_blocks(root).len();
            let bound = alpha_star(g).expect("non-empty").0;
            if p.len() != tilde {
                t.violation(g, format!("tree partition has {} parts, {tilde} blocks with non-cut vertices", p.len()));
            }
            if tilde > bound {
                t.violation(g, format!("{tilde} blocks with non-cut vertices exceed alpha*={bound}"));
            }
        }
        _ => {
            t.construction_failed += 1;
            let _ = opts;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_graph_bits() {
        let g = labeled_graph(4, 0b100001);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert_eq!(labeled_graph(5, (1 << 10) - 1).edge_count(), 10);
    }

    #[test]
    fn statement_tags_round_trip() {
        for s in Statement::ALL {
            assert_eq!(s.tag().parse::<Statement>().unwrap(), s);
        }
        assert!("nope".parse::<Statement>().is_err());
    }

    #[test]
    fn corpus_limits() {
        let o = CheckOptions::default();
        assert_eq!(
            run_check(Corpus::Exhaustive { n: 8 }, Statement::Ind, &o).unwrap_err(),
            CheckError::ExhaustiveOrder(8)
        );
        assert_eq!(
            run_check(Corpus::Exhaustive { n: 7 }, Statement::Ind, &o).unwrap_err(),
            CheckError::OrderSevenOptIn
        );
    }

    #[test]
    fn exhaustive_four_is_clean() {
        let o = CheckOptions::default();
        for s in [Statement::Ind, Statement::Prop1, Statement::Prop2, Statement::Lemmas, Statement::Almost] {
            let r = run_check(Corpus::Exhaustive { n: 4 }, s, &o).unwrap();
            assert_eq!(r.tally.total, 64);
            assert!(r.passed(), "{}", r.render());
        }
    }

    #[test]
    fn f5_labeled_copies() {
        let r = run_check(Corpus::Exhaustive { n: 5 }, Statement::Ind, &CheckOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.tally.classes.get("F5"), Some(&15));
        assert_eq!(r.tally.exceptional, 15);
    }

    #[test]
    fn prop1_fails_on_single_vertex() {
        // K1 is complete, so pi2 = inf >= 1, yet {v} is large with weight 0.
        let r = run_check(Corpus::Exhaustive { n: 1 }, Statement::Prop1, &CheckOptions::default()).unwrap();
        assert_eq!(r.tally.violations.len(), 1);
    }
}
