//! Engel's stochastic abacus for Pass the Buck.
//!
//! Each game vertex `v` gets an absorbing partner `a(v)`; the out-neighbors
//! of `v` are its graph neighbors plus `a(v)`, so `outdegree(v) =
//! degree(v) + 1`. A vertex holding at least `outdegree` chips fires by
//! sending one chip along each out-edge. Starting from critical loading
//! (`outdegree - 1` chips everywhere), chips are added one at a time at the
//! start vertex and the board is stabilized after each addition, until the
//! critical loading reappears. The chips collected by each `a(v)` are then
//! proportional to the probability that `v` wins.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::direct::RestorationTable;
use crate::graph::Graph;
use crate::tree::{RootedTree, TreeError, VertexId};

/// A game graph with its absorbing partners and a start vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedGraph {
    graph: Graph,
    start: usize,
    outdegree: Vec<u64>,
}

impl AugmentedGraph {
    pub fn new(graph: Graph, start: VertexId) -> Result<Self, TreeError> {
        if !graph.contains(start) {
            return Err(TreeError::VertexOutOfRange(start, graph.len()));
        }
        let outdegree = graph
            .adjacency()
            .iter()
            .map(|a| a.len() as u64 + 1)
            .collect();
        Ok(AugmentedGraph {
            graph,
            start: start as usize - 1,
            outdegree,
        })
    }

    /// The tree as a game board, started at its root.
    pub fn from_tree(tree: &RootedTree) -> Self {
        Self::new(Graph::from(tree), tree.root()).expect("root is a vertex")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.outdegree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outdegree.is_empty()
    }

    pub fn start(&self) -> VertexId {
        self.start as VertexId + 1
    }

    pub fn outdegree(&self, v: VertexId) -> u64 {
        self.outdegree[v as usize - 1]
    }
}

/// Chips on the game vertices, chips collected by each absorber, and the
/// number of chips added at the start vertex so far.
#[derive(Clone, PartialEq, Eq)]
pub struct ChipConfiguration {
    chips: Vec<u64>,
    absorbed: Vec<BigUint>,
    chips_added: BigUint,
}

impl fmt::Debug for ChipConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChipConfiguration")
            .field("chips", &self.chips)
            .field(
                "absorbed",
                &self
                    .absorbed
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>(),
            )
            .field("chips_added", &self.chips_added.to_string())
            .finish()
    }
}

impl ChipConfiguration {
    /// An empty board: no chips anywhere.
    pub fn empty(n: usize) -> Self {
        ChipConfiguration {
            chips: vec![0; n],
            absorbed: vec![BigUint::zero(); n],
            chips_added: BigUint::zero(),
        }
    }

    pub fn chips(&self, v: VertexId) -> u64 {
        self.chips[v as usize - 1]
    }

    pub fn absorbed(&self, v: VertexId) -> &BigUint {
        &self.absorbed[v as usize - 1]
    }

    pub fn chip_counts(&self) -> &[u64] {
        &self.chips
    }

    pub fn absorbed_counts(&self) -> &[BigUint] {
        &self.absorbed
    }

    pub fn chips_added(&self) -> &BigUint {
        &self.chips_added
    }

    /// Overwrites the pile on `v`. Does not count as an addition.
    pub fn set_chips(&mut self, v: VertexId, count: u64) {
        self.chips[v as usize - 1] = count;
    }

    /// Drops one chip on the start vertex.
    pub fn add_chip(&mut self, g: &AugmentedGraph) -> Result<(), SimError> {
        let pile = &mut self.chips[g.start];
        *pile = pile
            .checked_add(1)
            .ok_or(SimError::PileOverflow(g.start()))?;
        self.chips_added += 1u32;
        Ok(())
    }

    /// True when every game vertex holds `outdegree - 1` chips.
    pub fn is_critical(&self, g: &AugmentedGraph) -> bool {
        self.chips
            .iter()
            .zip(&g.outdegree)
            .all(|(&c, &d)| c == d - 1)
    }

    /// True when no vertex can fire.
    pub fn is_stable(&self, g: &AugmentedGraph) -> bool {
        self.chips.iter().zip(&g.outdegree).all(|(&c, &d)| c < d)
    }

    /// `chips_added + sum(critical) == sum(chips) + sum(absorbed)`, which
    /// holds along any run that began from critical loading.
    pub fn conserves_chips(&self, g: &AugmentedGraph) -> bool {
        let on_board: BigUint = self.chips.iter().map(|&c| BigUint::from(c)).sum();
        let absorbed: BigUint = self.absorbed.iter().sum();
        let baseline: BigUint = g.outdegree.iter().map(|&d| BigUint::from(d - 1)).sum();
        &self.chips_added + baseline == on_board + absorbed
    }
}

/// `outdegree(v) - 1` chips on every game vertex, nothing absorbed.
pub fn critical_loading(g: &AugmentedGraph) -> ChipConfiguration {
    let mut c = ChipConfiguration::empty(g.len());
    for (pile, &d) in c.chips.iter_mut().zip(&g.outdegree) {
        *pile = d - 1;
    }
    c
}

/// Order in which unstable vertices are fired. The final configuration does
/// not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiringPolicy {
    /// Work queue, first in first out.
    Fifo,
    /// Work stack, most recently destabilized first.
    Lifo,
    /// A uniformly random unstable vertex each time, from a seeded ChaCha8.
    Random { seed: u64 },
}

/// Optional caps for a simulation run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimLimits {
    pub max_firings: Option<u64>,
    pub max_chips: Option<u64>,
}

impl SimLimits {
    pub fn unlimited() -> Self {
        SimLimits::default()
    }

    /// Rejects zero caps.
    pub fn new(max_firings: Option<u64>, max_chips: Option<u64>) -> Result<Self, SimError> {
        if max_firings == Some(0) || max_chips == Some(0) {
            return Err(SimError::ZeroCap);
        }
        Ok(SimLimits {
            max_firings,
            max_chips,
        })
    }
}

/// Where a run stood when it stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimProgress {
    pub config: ChipConfiguration,
    pub firings: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("FiringCapExceeded: stopped after {} firings", .0.firings)]
    FiringCapExceeded(Box<SimProgress>),
    #[error("ChipCapExceeded: stopped after {} chips added", .0.config.chips_added)]
    ChipCapExceeded(Box<SimProgress>),
    #[error("PileOverflow: the pile on vertex {0} exceeds 2^64 - 1 chips")]
    PileOverflow(VertexId),
    #[error("ZeroCap: simulation caps must be positive")]
    ZeroCap,
}

impl SimError {
    pub fn progress(&self) -> Option<&SimProgress> {
        match self {
            SimError::FiringCapExceeded(p) | SimError::ChipCapExceeded(p) => Some(p),
            _ => None,
        }
    }
}

/// Result of one stabilization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilization {
    pub config: ChipConfiguration,
    /// How often each vertex fired, indexed by `v - 1`.
    pub firings: Vec<u64>,
}

/// Unstable vertices waiting to fire, in policy order.
enum Frontier {
    Queue(VecDeque<usize>),
    Stack(Vec<usize>),
    Random(Vec<usize>, Box<ChaCha8Rng>),
}

impl Frontier {
    fn new(policy: FiringPolicy) -> Self {
        match policy {
            FiringPolicy::Fifo => Frontier::Queue(VecDeque::new()),
            FiringPolicy::Lifo => Frontier::Stack(Vec::new()),
            FiringPolicy::Random { seed } => {
                Frontier::Random(Vec::new(), Box::new(ChaCha8Rng::seed_from_u64(seed)))
            }
        }
    }

    fn push(&mut self, v: usize) {
        match self {
            Frontier::Queue(q) => q.push_back(v),
            Frontier::Stack(s) | Frontier::Random(s, _) => s.push(v),
        }
    }

    fn pop(&mut self) -> Option<usize> {
        match self {
            Frontier::Queue(q) => q.pop_front(),
            Frontier::Stack(s) => s.pop(),
            Frontier::Random(s, rng) => {
                if s.is_empty() {
                    None
                } else {
                    let i = rng.random_range(0..s.len());
                    Some(s.swap_remove(i))
                }
            }
        }
    }
}

/// Mutable simulation state. Absorptions are buffered in `u64` counters and
/// flushed into the arbitrary-precision totals before any buffer can wrap.
struct Engine<'g> {
    g: &'g AugmentedGraph,
    config: ChipConfiguration,
    pending: Vec<u64>,
    queued: Vec<bool>,
}

impl<'g> Engine<'g> {
    fn new(g: &'g AugmentedGraph, config: ChipConfiguration) -> Self {
        let n = g.len();
        assert_eq!(config.chips.len(), n, "configuration does not match graph");
        Engine {
            g,
            config,
            pending: vec![0; n],
            queued: vec![false; n],
        }
    }

    fn flush(&mut self) {
        for (abs, p) in self.config.absorbed.iter_mut().zip(self.pending.iter_mut()) {
            if *p != 0 {
                *abs += *p;
                *p = 0;
            }
        }
    }

    fn into_config(mut self) -> ChipConfiguration {
        self.flush();
        self.config
    }

    /// Fires until stable or until `budget` firings have happened. Returns
    /// the number of firings, and whether the board is stable.
    fn stabilize(
        &mut self,
        frontier: &mut Frontier,
        budget: Option<u64>,
        per_vertex: Option<&mut [u64]>,
    ) -> Result<(u64, bool), SimError> {
        let adjacency = self.g.graph.adjacency();
        let outdegree = &self.g.outdegree;
        let chips = &mut self.config.chips;
        let mut per_vertex = per_vertex;
        for v in 0..chips.len() {
            if chips[v] >= outdegree[v] && !self.queued[v] {
                self.queued[v] = true;
                frontier.push(v);
            }
        }
        let mut fired = 0u64;
        while let Some(v) = frontier.pop() {
            self.queued[v] = false;
            if chips[v] < outdegree[v] {
                continue;
            }
            if budget.is_some_and(|b| fired >= b) {
                self.queued[v] = true;
                frontier.push(v);
                return Ok((fired, false));
            }
            chips[v] -= outdegree[v];
            for &w in &adjacency[v] {
                chips[w] = chips[w]
                    .checked_add(1)
                    .ok_or(SimError::PileOverflow(w as VertexId + 1))?;
                if chips[w] >= outdegree[w] && !self.queued[w] {
                    self.queued[w] = true;
                    frontier.push(w);
                }
            }
            self.pending[v] += 1;
            if self.pending[v] == u64::MAX {
                self.config.absorbed[v] += self.pending[v];
                self.pending[v] = 0;
            }
            if let Some(counts) = per_vertex.as_deref_mut() {
                counts[v] += 1;
            }
            if chips[v] >= outdegree[v] {
                self.queued[v] = true;
                frontier.push(v);
            }
            fired += 1;
        }
        Ok((fired, true))
    }
}

/// Fires unstable vertices one firing at a time, in `policy` order, until
/// none can fire.
pub fn stabilize(
    g: &AugmentedGraph,
    config: ChipConfiguration,
    policy: FiringPolicy,
    max_firings: Option<u64>,
) -> Result<Stabilization, SimError> {
    let mut engine = Engine::new(g, config);
    let mut frontier = Frontier::new(policy);
    let mut firings = vec![0u64; g.len()];
    let (fired, stable) = engine.stabilize(&mut frontier, max_firings, Some(&mut firings))?;
    let config = engine.into_config();
    if !stable {
        return Err(SimError::FiringCapExceeded(Box::new(SimProgress {
            config,
            firings: fired.into(),
        })));
    }
    Ok(Stabilization { config, firings })
}

/// Outcome of a complete abacus run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restoration {
    /// Chips collected by each absorber.
    pub table: RestorationTable,
    /// Chips added at the start vertex; equals `table.total()`.
    pub total: BigUint,
    pub firings: BigUint,
}

/// Runs the abacus from critical loading until critical loading returns,
/// firing in FIFO order.
pub fn run_to_restoration(g: &AugmentedGraph, limits: SimLimits) -> Result<Restoration, SimError> {
    let mut engine = Engine::new(g, critical_loading(g));
    let mut frontier = Frontier::new(FiringPolicy::Fifo);
    let mut firings = BigUint::zero();
    let mut fired_total = 0u64;
    let mut added = 0u64;
    let baseline: u64 = g.outdegree.iter().map(|d| d - 1).sum();

    loop {
        if limits.max_chips.is_some_and(|cap| added >= cap) {
            let firings = firings.clone();
            return Err(SimError::ChipCapExceeded(Box::new(SimProgress {
                config: engine.into_config(),
                firings,
            })));
        }
        engine.config.add_chip(g)?;
        added += 1;
        let budget = limits.max_firings.map(|cap| cap - fired_total);
        let (fired, stable) = engine.stabilize(&mut frontier, budget, None)?;
        fired_total = fired_total.saturating_add(fired);
        firings += fired;
        if !stable {
            return Err(SimError::FiringCapExceeded(Box::new(SimProgress {
                config: engine.into_config(),
                firings,
            })));
        }
        if cfg!(debug_assertions) {
            // Every firing moves exactly one chip into an absorber.
            let on_board: u64 = engine.config.chips.iter().sum();
            debug_assert_eq!(
                &engine.config.chips_added + baseline,
                &firings + on_board,
                "chip conservation violated"
            );
        }
        if engine.config.is_critical(g) {
            break;
        }
    }

    let config = engine.into_config();
    let table = RestorationTable::new(config.absorbed);
    let total = config.chips_added;
    assert_eq!(
        &total,
        table.total(),
        "absorbed chips must match chips added"
    );
    Ok(Restoration {
        table,
        total,
        firings,
    })
}

/// Period of `tree` measured on the abacus: hang the tree below a fresh
/// root, run to restoration, and read the new root's absorber.
pub fn restoration_count_of_child_period(
    tree: &RootedTree,
    limits: SimLimits,
) -> Result<BigUint, SimError> {
    let wrapped = tree.wrapped();
    let run = run_to_restoration(&AugmentedGraph::from_tree(&wrapped), limits)?;
    Ok(run.table.get(wrapped.root()).expect("new root").clone())
}
