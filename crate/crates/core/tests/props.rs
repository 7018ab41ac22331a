use proptest::prelude::*;
use twoproper::blocks::{block_decomposition, default_root, is_biconnected, root_block_tree};
use twoproper::check::labeled_graph;
use twoproper::format::{emit_edge_list, emit_graph6, emit_partition, parse_edge_list, parse_graph6, parse_partition};
use twoproper::generators::SplitMix64;
use twoproper::oracle::{oracle_alpha_star, oracle_cut_vertices, oracle_is_biconnected, oracle_sigma_star};
use twoproper::{
    alpha_star, construct_2pp, construct_almost_2pp, oracle_min_2pp, recognize, sigma_star, summarize,
    verify_partition, Graph, OracleBudget, Partition, PartitionKind, PartitionOptions, PartitionOutcome,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
}

/// Random graphs with edge density 0.7, where the partition hypothesis holds often.
fn dense_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (4..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = SplitMix64::new(seed);
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.next_f64() < 0.7 {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    })
}

fn perm_strategy(g: Graph) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let n = g.n();
    (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

fn outcome_tag(o: &PartitionOutcome) -> &'static str {
    match o {
        PartitionOutcome::Partitioned { .. } => "partitioned",
        PartitionOutcome::Exceptional(_) => "exceptional",
        PartitionOutcome::PreconditionFailed(_) => "precondition",
        PartitionOutcome::ConstructionFailure(_) => "failure",
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn blocks_match_brute_force(g in graph_strategy(9)) {
        let d = block_decomposition(&g);
        prop_assert_eq!(&d.cut_vertices, &oracle_cut_vertices(&g));
        prop_assert_eq!(is_biconnected(&g), oracle_is_biconnected(&g));
        for block in &d.blocks {
            let (h, _) = g.induced(block);
            prop_assert!(block.len() <= 2 || oracle_is_biconnected(&h), "block {:?} not 2-connected", block);
            prop_assert!(h.is_connected());
        }
        for (u, v) in g.edges() {
            let holders = d.blocks.iter().filter(|b| b.contains(&u) && b.contains(&v)).count();
            prop_assert_eq!(holders, 1, "edge ({}, {}) in {} blocks", u, v, holders);
        }
        for v in 0..g.n() {
            prop_assert!(!d.blocks_of(v).is_empty());
            prop_assert_eq!(d.is_cut(v), d.blocks_of(v).len() > 1);
        }
    }

    #[test]
    fn rooted_tree_covers_component(g in graph_strategy(9)) {
        prop_assume!(g.is_connected() && !is_biconnected(&g) && g.n() >= 3);
        let d = block_decomposition(&g);
        let root = default_root(&d).unwrap();
        let tree = root_block_tree(&g, root).unwrap();
        prop_assert_eq!(tree.order.len(), d.blocks.len());
        prop_assert_eq!(tree.parent_cut[root], None);
        let mut all = tree.subtree_vertices(root);
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        for &b in &tree.order[1..] {
            let u = tree.parent_cut[b].unwrap();
            prop_assert!(d.is_cut(u) && tree.block(b).contains(&u));
            if let Some(a) = &tree.carriers[b] {
                prop_assert!(!a.contains(&u));
                prop_assert!(tree.x_sets[b].iter().all(|x| a.contains(x)));
            }
        }
    }

    #[test]
    fn invariants_match_brute_force(g in graph_strategy(10)) {
        let budget = OracleBudget::invariants();
        prop_assert_eq!(sigma_star(&g).0, oracle_sigma_star(&g, &budget).unwrap());
        prop_assert_eq!(alpha_star(&g).unwrap().0, oracle_alpha_star(&g, &budget).unwrap());
    }

    #[test]
    fn invariants_ignore_labels((g, perm) in graph_strategy(9).prop_flat_map(perm_strategy)) {
        let h = g.permute(&perm);
        let a = summarize(&g).unwrap();
        let b = summarize(&h).unwrap();
        prop_assert_eq!(a.delta, b.delta);
        prop_assert_eq!(a.sigma2, b.sigma2);
        prop_assert_eq!(a.pi2, b.pi2);
        prop_assert_eq!(a.sigma_star, b.sigma_star);
        prop_assert_eq!(a.alpha_star, b.alpha_star);
        prop_assert_eq!(a.alpha, b.alpha);
    }

    #[test]
    fn witnesses_are_valid(g in graph_strategy(9)) {
        let s = summarize(&g).unwrap();
        prop_assert!(g.is_independent(&s.alpha_star_witness.vertices));
        prop_assert_eq!(s.alpha_star_witness.vertices.len(), s.alpha_star);
        prop_assert!(s.alpha_star_witness.weight < g.n() as u64);
        if let Some(w) = &s.sigma_star_witness {
            prop_assert!(g.is_independent(&w.vertices));
            prop_assert_eq!(Some(w.weight), s.sigma_star.finite());
        }
    }

    #[test]
    fn partitions_are_sound(g in dense_strategy(10)) {
        for all_roots in [false, true] {
            let opts = PartitionOptions { all_roots, ..PartitionOptions::default() };
            match construct_2pp(&g, &opts) {
                PartitionOutcome::Partitioned { partition, parts_bound, .. } => {
                    prop_assert_eq!(partition.kind, PartitionKind::TwoProper);
                    prop_assert!(verify_partition(&g, &partition).is_ok(), "{:?}", partition);
                    prop_assert!(partition.len() <= parts_bound);
                    let (best, _) = oracle_min_2pp(&g, false, &OracleBudget::partitions()).unwrap().unwrap();
                    prop_assert!(best <= partition.len());
                }
                PartitionOutcome::Exceptional(_) => prop_assert!(recognize(&g).is_some()),
                PartitionOutcome::PreconditionFailed(w) => {
                    prop_assert!(w.weight < g.n() as u64);
                    prop_assert!(g.is_independent(&w.vertices));
                }
                PartitionOutcome::ConstructionFailure(c) => prop_assert!(false, "construction failed: {:?}", c),
            }
        }
    }

    #[test]
    fn almost_partitions_are_sound(g in dense_strategy(10)) {
        if let Ok((p, bound)) = construct_almost_2pp(&g, &PartitionOptions::default()) {
            prop_assert_eq!(p.kind, PartitionKind::AlmostTwoProper);
            prop_assert!(verify_partition(&g, &p).is_ok(), "{:?}", p);
            prop_assert!(p.len() <= bound);
        }
    }

    #[test]
    fn outcome_ignores_labels((g, perm) in dense_strategy(9).prop_flat_map(perm_strategy)) {
        let opts = PartitionOptions::default();
        let a = construct_2pp(&g, &opts);
        let b = construct_2pp(&g.permute(&perm), &opts);
        prop_assert_eq!(outcome_tag(&a), outcome_tag(&b));
    }

    #[test]
    fn formats_round_trip(g in graph_strategy(12)) {
        prop_assert_eq!(&parse_edge_list(&emit_edge_list(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_graph6(&emit_graph6(&g)).unwrap(), &g);
    }

    #[test]
    fn partition_format_round_trips(g in dense_strategy(9)) {
        if let PartitionOutcome::Partitioned { partition, .. } = construct_2pp(&g, &PartitionOptions::default()) {
            prop_assert_eq!(parse_partition(&emit_partition(&partition)).unwrap(), partition.clone());
            let almost: Partition = partition.into_almost();
            prop_assert_eq!(parse_partition(&emit_partition(&almost)).unwrap(), almost);
        }
    }
}

#[test]
fn exhaustive_blocks_up_to_six() {
    for n in 1..=6usize {
        for code in 0..1u64 << (n * (n - 1) / 2) {
            let g = labeled_graph(n, code);
            let d = block_decomposition(&g);
            assert_eq!(d.cut_vertices, oracle_cut_vertices(&g), "n={n} code={code}");
            assert_eq!(is_biconnected(&g), oracle_is_biconnected(&g), "n={n} code={code}");
        }
    }
}

#[test]
fn exhaustive_partitions_at_six_are_verified() {
    let opts = PartitionOptions::default();
    let mut partitioned = 0;
    for code in 0..1u64 << 15 {
        let g = labeled_graph(6, code);
        if let PartitionOutcome::Partitioned { partition, .. } = construct_2pp(&g, &opts) {
            assert!(verify_partition(&g, &partition).is_ok(), "code={code}");
            partitioned += 1;
        }
    }
    assert_eq!(partitioned, 12068 - 360);
}
