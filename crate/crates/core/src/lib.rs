//! Exact win probabilities for Pass the Buck on rooted trees.
//!
//! The buck starts at the root. At a vertex of degree `k` it moves to each
//! neighbor with probability `1/(k+1)`, or the game ends there with the
//! same probability. Three engines compute who wins:
//!
//! * [`direct`]: restoration functions from the lcm-of-periods recursion,
//!   in time roughly linear in the tree (times big-integer cost);
//! * [`abacus`]: Engel's stochastic abacus, chip by chip;
//! * [`markov`]: an exact rational solve of the absorbing Markov chain.
//!
//! All three agree exactly. See `examples/` for one program per capability.
//!
//! ```
//! use passbuck::{direct, tree::{EdgeList, RootedTree}};
//!
//! let edges = vec![(8, 4), (8, 7), (4, 1), (4, 2), (4, 3), (7, 6), (6, 5)];
//! let tree = RootedTree::from_edge_list(&EdgeList::new(edges, 8)).unwrap();
//! let table = direct::restoration_full(&tree);
//! assert_eq!(table.get(8).unwrap().to_string(), "91");
//! assert_eq!(table.total().to_string(), "212");
//! ```

pub mod abacus;
pub mod direct;
pub mod dot;
pub mod edgelist;
pub mod graph;
pub mod markov;
pub mod report;
pub mod tree;

use thiserror::Error;

pub use abacus::{AugmentedGraph, ChipConfiguration, FiringPolicy, SimError, SimLimits};
pub use direct::{
    restoration_full, win_probabilities, ExactRational, RestorationTable, WinDistribution,
};
pub use graph::Graph;
pub use markov::{absorption_probabilities, GameChain};
pub use tree::{random_tree, EdgeList, RootedTree, TreeError, VertexId};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] edgelist::ParseError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Markov(#[from] markov::MarkovError),
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
}

/// Reads an edge-list file and roots it at `root`.
pub fn load_tree(path: &std::path::Path, root: VertexId) -> Result<RootedTree, Error> {
    let text = std::fs::read_to_string(path)?;
    let edges = edgelist::parse_edges(&text)?;
    Ok(RootedTree::from_edge_list(&EdgeList::new(edges, root))?)
}
