//! Exact absorption probabilities of the Pass the Buck chain.
//!
//! The buck at a vertex of degree `k` moves to each neighbor with
//! probability `1/(k+1)` and is absorbed (that vertex wins) with probability
//! `1/(k+1)`. With `Q` the transient block, the expected number of visits
//! `x` from the start vertex solves `(I - Q)^T x = e_start`, and vertex `v`
//! wins with probability `x_v / (deg(v) + 1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::direct::{ExactRational, WinDistribution};
use crate::graph::Graph;
use crate::tree::{RootedTree, TreeError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkovError {
    #[error(transparent)]
    Structure(#[from] TreeError),
    #[error("singular system at column {0}")]
    Singular(usize),
}

/// The game's Markov chain on a connected graph with a start vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameChain {
    graph: Graph,
    start: VertexId,
}

pub fn build_chain(graph: Graph, start: VertexId) -> Result<GameChain, MarkovError> {
    if !graph.contains(start) {
        return Err(TreeError::VertexOutOfRange(start, graph.len()).into());
    }
    Ok(GameChain { graph, start })
}

/// Builds the chain from raw edges; rejects disconnected or non-simple
/// graphs.
pub fn chain_from_edges(
    edges: &[(VertexId, VertexId)],
    start: VertexId,
) -> Result<GameChain, MarkovError> {
    build_chain(Graph::from_edges(edges)?, start)
}

impl GameChain {
    pub fn from_tree(tree: &RootedTree) -> Self {
        GameChain {
            graph: Graph::from(tree),
            start: tree.root(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    fn step(&self, v: VertexId) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.graph.degree(v) + 1))
    }

    /// Probability of passing the buck from `v` to `w`.
    pub fn transition(&self, v: VertexId, w: VertexId) -> BigRational {
        if self.graph.neighbors(v).any(|u| u == w) {
            self.step(v)
        } else {
            BigRational::zero()
        }
    }

    /// Probability that the game ends at `v` while `v` holds the buck.
    pub fn absorption(&self, v: VertexId) -> BigRational {
        self.step(v)
    }

    /// Total outgoing probability of `v`; 1 for every vertex.
    pub fn row_sum(&self, v: VertexId) -> BigRational {
        self.graph
            .neighbors(v)
            .map(|w| self.transition(v, w))
            .fold(self.absorption(v), |a, b| a + b)
    }
}

/// Win probabilities for every vertex, indexed by `v - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsorptionVector {
    probabilities: Vec<ExactRational>,
}

impl AbsorptionVector {
    pub fn get(&self, v: VertexId) -> Option<&ExactRational> {
        self.probabilities.get((v as usize).checked_sub(1)?)
    }

    pub fn as_slice(&self) -> &[ExactRational] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn sum(&self) -> ExactRational {
        self.probabilities.iter().sum()
    }

    pub fn into_distribution(self) -> WinDistribution {
        WinDistribution::from_probabilities(self.probabilities)
    }
}

pub fn absorption_probabilities(chain: &GameChain) -> Result<AbsorptionVector, MarkovError> {
    let n = chain.len();
    let g = &chain.graph;
    // Row w, column v of (I - Q)^T is [v == w] - Q[v][w].
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for (v, row) in a.iter_mut().enumerate() {
        row[v] = BigRational::one();
    }
    for v in 1..=n as VertexId {
        let q = chain.step(v);
        for w in g.neighbors(v) {
            a[w as usize - 1][v as usize - 1] -= &q;
        }
    }
    let mut b = vec![BigRational::zero(); n];
    b[chain.start as usize - 1] = BigRational::one();

    let visits = solve(a, b)?;
    let probabilities = visits
        .into_iter()
        .enumerate()
        .map(|(i, x)| x * chain.step(i as VertexId + 1))
        .collect();
    Ok(AbsorptionVector { probabilities })
}

/// Gauss-Jordan elimination over the rationals, pivoting on the first
/// nonzero entry of each column.
fn solve(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Result<Vec<BigRational>, MarkovError> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(MarkovError::Singular(col))?;
        a.swap(col, pivot);
        b.swap(col, pivot);

        let inv = a[col][col].recip();
        for x in a[col][col..].iter_mut() {
            *x *= &inv;
        }
        b[col] *= &inv;

        let (pivot_row, pivot_b) = (a[col].clone(), b[col].clone());
        for r in (0..n).filter(|&r| r != col) {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (x, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
            b[r] -= &factor * &pivot_b;
        }
    }
    Ok(b)
}
