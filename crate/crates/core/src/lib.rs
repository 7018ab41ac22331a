//! Partitions of graphs into 2-connected parts under degree conditions.
//!
//! The crate computes degree invariants over independent sets, recognizes a
//! small catalogue of exceptional graphs, and builds partitions of the vertex
//! set in which every part induces a 2-connected subgraph. Every fast path
//! has a brute-force counterpart in [`oracle`].

pub mod blocks;
pub mod check;
pub mod exceptional;
pub mod format;
pub mod generators;
pub mod graph;
pub mod invariants;
pub mod iso;
pub mod oracle;
pub mod partition;

pub use blocks::{block_decomposition, is_biconnected, root_block_tree, BlockDecomposition, RootedBlockTree};
pub use exceptional::{generate, recognize, recognize_with_map, ExceptionalClass};
pub use graph::{Graph, GraphError};
pub use invariants::{alpha, alpha_star, pi2, sigma2, sigma_star, summarize, ExtInt, InvariantSummary};
pub use oracle::{oracle_min_2pp, OracleBudget};
pub use partition::{
    construct_2pp, construct_almost_2pp, verify_partition, Partition, PartitionKind, PartitionOptions, PartitionOutcome,
};
