//! Rooted trees in parent-array form.
//!
//! Vertices are numbered `1..=n`. `parent(k)` is the parent of `k`, and the
//! root is the single vertex whose parent is `0`. All public ids are 1-based;
//! storage is a plain `Vec<u32>` indexed by `k - 1`.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// A 1-based vertex number.
pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("SelfLoop: edge {0}-{0} joins a vertex to itself")]
    SelfLoop(VertexId),
    #[error("DuplicateEdge: edge {0}-{1} appears more than once")]
    DuplicateEdge(VertexId, VertexId),
    #[error("CycleDetected: edge {0}-{1} closes a cycle")]
    CycleDetected(VertexId, VertexId),
    #[error("NonContiguousIds: vertex {0} is missing from 1..={1}")]
    NonContiguousIds(VertexId, usize),
    #[error("RootNotPresent: root {0} is not a vertex of the tree")]
    RootNotPresent(VertexId),
    #[error("Disconnected: vertex {0} cannot be reached from vertex 1")]
    Disconnected(VertexId),
    #[error("InvalidParentArray: {0}")]
    InvalidParentArray(String),
    #[error("VertexOutOfRange: vertex {0} is not in 1..={1}")]
    VertexOutOfRange(VertexId, usize),
    #[error("EmptyTree: a tree needs at least one vertex")]
    EmptyTree,
}

impl TreeError {
    /// The short error name used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            TreeError::SelfLoop(_) => "SelfLoop",
            TreeError::DuplicateEdge(..) => "DuplicateEdge",
            TreeError::CycleDetected(..) => "CycleDetected",
            TreeError::NonContiguousIds(..) => "NonContiguousIds",
            TreeError::RootNotPresent(_) => "RootNotPresent",
            TreeError::Disconnected(_) => "Disconnected",
            TreeError::InvalidParentArray(_) => "InvalidParentArray",
            TreeError::VertexOutOfRange(..) => "VertexOutOfRange",
            TreeError::EmptyTree => "EmptyTree",
        }
    }
}

/// Undirected edges plus a designated root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub edges: Vec<(VertexId, VertexId)>,
    pub root: VertexId,
}

impl EdgeList {
    pub fn new(edges: Vec<(VertexId, VertexId)>, root: VertexId) -> Self {
        EdgeList { edges, root }
    }
}

/// Disjoint-set forest, used to spot cycles edge by edge.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Checks shared by trees and general graphs: no self-loops, no repeated
/// pairs. Returns the vertex count `n` (the largest id, or 1 when empty).
pub(crate) fn check_simple_edges(edges: &[(VertexId, VertexId)]) -> Result<usize, TreeError> {
    let mut seen = HashSet::with_capacity(edges.len());
    let mut n = 1usize;
    for &(a, b) in edges {
        if a == b {
            return Err(TreeError::SelfLoop(a));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(TreeError::DuplicateEdge(a, b));
        }
        n = n.max(a as usize).max(b as usize);
    }
    Ok(n)
}

/// Every id in `1..=n` must be used by some edge (trivially true when n = 1).
pub(crate) fn check_contiguous(edges: &[(VertexId, VertexId)], n: usize) -> Result<(), TreeError> {
    if edges.iter().any(|&(a, b)| a == 0 || b == 0) {
        return Err(TreeError::NonContiguousIds(0, n));
    }
    if n == 1 {
        return Ok(());
    }
    let mut used = vec![false; n];
    for &(a, b) in edges {
        used[a as usize - 1] = true;
        used[b as usize - 1] = true;
    }
    match used.iter().position(|u| !u) {
        Some(i) => Err(TreeError::NonContiguousIds(i as VertexId + 1, n)),
        None => Ok(()),
    }
}

/// Immutable rooted tree stored as a parent array.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    parent: Vec<VertexId>,
    root: VertexId,
    // CSR children lists, ascending per vertex.
    child_start: Vec<usize>,
    child_list: Vec<VertexId>,
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootedTree")
            .field("root", &self.root)
            .field("parent", &self.parent)
            .finish()
    }
}

impl RootedTree {
    /// Builds a tree from a 1-based parent array (`parent[k-1]` is the parent
    /// of `k`, `0` marks the root).
    pub fn from_parents(parent: Vec<VertexId>) -> Result<Self, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::EmptyTree);
        }
        let mut roots = parent.iter().enumerate().filter(|(_, &p)| p == 0);
        let root = match (roots.next(), roots.next()) {
            (Some((i, _)), None) => i as VertexId + 1,
            (None, _) => return Err(TreeError::InvalidParentArray("no entry is 0".into())),
            (Some(_), Some(_)) => {
                return Err(TreeError::InvalidParentArray(
                    "more than one entry is 0".into(),
                ))
            }
        };
        if let Some(&p) = parent.iter().find(|&&p| p as usize > n) {
            return Err(TreeError::VertexOutOfRange(p, n));
        }
        // Every vertex must reach the root; mark vertices known to do so.
        let mut state = vec![0u8; n]; // 0 unknown, 1 on current walk, 2 reaches root
        state[root as usize - 1] = 2;
        let mut walk = Vec::new();
        for start in 0..n {
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                v = parent[v] as usize - 1;
            }
            if state[v] == 1 {
                return Err(TreeError::InvalidParentArray(format!(
                    "vertex {} lies on a parent cycle",
                    v + 1
                )));
            }
            for w in walk.drain(..) {
                state[w] = 2;
            }
        }
        Ok(Self::assemble(parent, root))
    }

    fn assemble(parent: Vec<VertexId>, root: VertexId) -> Self {
        let n = parent.len();
        let mut counts = vec![0usize; n + 1];
        for &p in &parent {
            if p != 0 {
                counts[p as usize] += 1;
            }
        }
        let mut child_start = vec![0usize; n + 1];
        for k in 1..=n {
            child_start[k] = child_start[k - 1] + counts[k];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0; n.saturating_sub(1)];
        // Ascending j gives ascending children.
        for (j, &p) in parent.iter().enumerate() {
            if p != 0 {
                let slot = &mut fill[p as usize - 1];
                child_list[*slot] = j as VertexId + 1;
                *slot += 1;
            }
        }
        RootedTree {
            parent,
            root,
            child_start,
            child_list,
        }
    }

    /// Converts undirected edges with a designated root into parent-array
    /// form.
    ///
    /// The vertex set is `1..=n` with `n` the largest id mentioned (1 for an
    /// empty edge list). Edges are scanned in order, each checked for being a
    /// self-loop, a repeat, or closing a cycle; then ids, root and
    /// connectivity are checked. The first violation found is reported.
    pub fn from_edge_list(list: &EdgeList) -> Result<Self, TreeError> {
        let edges = &list.edges;
        let n = edges
            .iter()
            .map(|&(a, b)| a.max(b) as usize)
            .max()
            .unwrap_or(1);
        let mut seen = HashSet::with_capacity(edges.len());
        let mut uf = UnionFind::new(n + 1);
        for &(a, b) in edges {
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(TreeError::DuplicateEdge(a, b));
            }
            if !uf.union(a as usize, b as usize) {
                return Err(TreeError::CycleDetected(a, b));
            }
        }
        check_contiguous(edges, n)?;
        if list.root == 0 || list.root as usize > n {
            return Err(TreeError::RootNotPresent(list.root));
        }

        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a as usize - 1].push(b);
            adj[b as usize - 1].push(a);
        }
        let mut parent = vec![0 as VertexId; n];
        let mut visited = vec![false; n];
        let mut stack = vec![list.root];
        visited[list.root as usize - 1] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v as usize - 1] {
                if !visited[w as usize - 1] {
                    visited[w as usize - 1] = true;
                    parent[w as usize - 1] = v;
                    stack.push(w);
                }
            }
        }
        if let Some(i) = visited.iter().position(|v| !v) {
            return Err(TreeError::Disconnected(i as VertexId + 1));
        }
        Ok(Self::assemble(parent, list.root))
    }

    /// The tree's edges as `(parent, child)` pairs in ascending child order.
    pub fn to_edge_list(&self) -> EdgeList {
        let edges = self
            .parent
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0)
            .map(|(j, &p)| (p, j as VertexId + 1))
            .collect();
        EdgeList::new(edges, self.root)
    }

    /// A lone vertex.
    pub fn single() -> Self {
        Self::assemble(vec![0], 1)
    }

    /// The path `1 - 2 - ... - n` rooted at 1.
    pub fn path(n: usize) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::EmptyTree);
        }
        Ok(Self::assemble((0..n as VertexId).collect(), 1))
    }

    /// Vertex 1 with leaves `2..=n` hanging off it.
    pub fn star(n: usize) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::EmptyTree);
        }
        let parent = (0..n).map(|k| if k == 0 { 0 } else { 1 }).collect();
        Ok(Self::assemble(parent, 1))
    }

    /// Hangs `self` beneath a new root. The new root gets id `n + 1`; the
    /// existing ids are unchanged.
    pub fn wrapped(&self) -> Self {
        let mut parent = self.parent.clone();
        let new_root = parent.len() as VertexId + 1;
        parent[self.root as usize - 1] = new_root;
        parent.push(0);
        Self::assemble(parent, new_root)
    }

    /// The subtree rooted at `k` as a tree of its own. Vertex `k` keeps
    /// rank 1 and the descendants follow in ascending id order; the returned
    /// vector maps each new id `i` to the original id at index `i - 1`.
    pub fn subtree(&self, k: VertexId) -> Result<(RootedTree, Vec<VertexId>), TreeError> {
        let mut members = self.descendants(k)?;
        members.sort_unstable();
        members.insert(0, k);
        let mut new_id = vec![0 as VertexId; self.len() + 1];
        for (i, &v) in members.iter().enumerate() {
            new_id[v as usize] = i as VertexId + 1;
        }
        let parent = members
            .iter()
            .map(|&v| {
                if v == k {
                    0
                } else {
                    new_id[self.parent[v as usize - 1] as usize]
                }
            })
            .collect();
        Ok((Self::assemble(parent, 1), members))
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn parents(&self) -> &[VertexId] {
        &self.parent
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        1..=self.parent.len() as VertexId
    }

    fn check(&self, k: VertexId) -> Result<usize, TreeError> {
        if k == 0 || k as usize > self.parent.len() {
            Err(TreeError::VertexOutOfRange(k, self.parent.len()))
        } else {
            Ok(k as usize)
        }
    }

    /// Parent of `k`, or `None` for the root.
    pub fn parent(&self, k: VertexId) -> Result<Option<VertexId>, TreeError> {
        let k = self.check(k)?;
        Ok(match self.parent[k - 1] {
            0 => None,
            p => Some(p),
        })
    }

    /// Children of `k` in ascending order.
    pub fn children(&self, k: VertexId) -> Result<&[VertexId], TreeError> {
        let k = self.check(k)?;
        Ok(self.children_unchecked(k))
    }

    pub(crate) fn children_unchecked(&self, k: usize) -> &[VertexId] {
        &self.child_list[self.child_start[k - 1]..self.child_start[k]]
    }

    pub fn is_leaf(&self, j: VertexId) -> Result<bool, TreeError> {
        Ok(self.children(j)?.is_empty())
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, TreeError> {
        let kids = self.children(v)?.len();
        Ok(kids + usize::from(v != self.root))
    }

    /// All vertices strictly below `j`, in breadth-first order.
    pub fn descendants(&self, j: VertexId) -> Result<Vec<VertexId>, TreeError> {
        let j = self.check(j)?;
        let mut out: Vec<VertexId> = self.children_unchecked(j).to_vec();
        let mut i = 0;
        while i < out.len() {
            let v = out[i] as usize;
            out.extend_from_slice(self.children_unchecked(v));
            i += 1;
        }
        Ok(out)
    }

    /// Vertices in post-order (every child before its parent), computed with
    /// an explicit stack.
    pub fn post_order(&self) -> Vec<VertexId> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                order.push(v);
            } else {
                stack.push((v, true));
                for &c in self.children_unchecked(v as usize).iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        order
    }

    /// Vertices with every parent before its children.
    pub fn pre_order(&self) -> Vec<VertexId> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in self.children_unchecked(v as usize).iter().rev() {
                stack.push(c);
            }
        }
        order
    }
}

/// Uniformly random labeled rooted tree on `n` vertices.
///
/// The shape comes from a uniformly random Prüfer sequence and the root is
/// drawn uniformly from `1..=n`. The generator is ChaCha8 seeded with
/// `seed`, so a given `(n, seed)` always yields the same tree.
pub fn random_tree(n: usize, seed: u64) -> Result<RootedTree, TreeError> {
    if n == 0 {
        return Err(TreeError::EmptyTree);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 1 {
        return Ok(RootedTree::single());
    }
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let root = rng.random_range(1..=n) as VertexId;
    let edges = decode_prufer(&prufer, n)
        .into_iter()
        .map(|(a, b)| (a as VertexId + 1, b as VertexId + 1))
        .collect();
    Ok(RootedTree::from_edge_list(&EdgeList::new(edges, root))
        .expect("Prüfer decoding always yields a tree"))
}

/// Random recursive tree: vertices join one at a time below a uniformly
/// chosen earlier vertex, then labels are shuffled. Not uniform over labeled
/// trees; a second source of shapes for tests.
pub fn random_attachment_tree(n: usize, seed: u64) -> Result<RootedTree, TreeError> {
    if n == 0 {
        return Err(TreeError::EmptyTree);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<VertexId> = (1..=n as VertexId).collect();
    labels.shuffle(&mut rng);
    let mut parent = vec![0 as VertexId; n];
    for i in 1..n {
        let j = rng.random_range(0..i);
        parent[labels[i] as usize - 1] = labels[j];
    }
    RootedTree::from_parents(parent)
}

// Linear-time Prüfer decoding over 0-based labels.
fn decode_prufer(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}
