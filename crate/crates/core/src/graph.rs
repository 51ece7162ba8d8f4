//! Connected undirected graphs, the general board for the game.
//!
//! The recursion in [`crate::direct`] only works on trees, but the abacus
//! and the Markov oracle accept any connected simple graph.

use crate::tree::{check_contiguous, check_simple_edges, RootedTree, TreeError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    // 0-based adjacency, neighbors ascending.
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Vertex set `1..=n` with `n` the largest id (1 for no edges).
    pub fn from_edges(edges: &[(VertexId, VertexId)]) -> Result<Self, TreeError> {
        let n = check_simple_edges(edges)?;
        check_contiguous(edges, n)?;
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a as usize - 1].push(b as usize - 1);
            adj[b as usize - 1].push(a as usize - 1);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Graph { adj };
        if let Some(v) = g.first_unreachable() {
            return Err(TreeError::Disconnected(v));
        }
        Ok(g)
    }

    fn first_unreachable(&self) -> Option<VertexId> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().position(|s| !s).map(|i| i as VertexId + 1)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v >= 1 && v as usize <= self.adj.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize - 1].len()
    }

    /// Neighbors of `v` as 1-based ids, ascending.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v as usize - 1].iter().map(|&w| w as VertexId + 1)
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// The same graph with labels permuted: vertex `v` becomes `perm[v-1]`.
    pub fn relabeled(&self, perm: &[VertexId]) -> Self {
        assert_eq!(perm.len(), self.len());
        let mut adj = vec![Vec::new(); self.len()];
        for (v, list) in self.adj.iter().enumerate() {
            adj[perm[v] as usize - 1] = list.iter().map(|&w| perm[w] as usize - 1).collect();
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }
}

impl From<&RootedTree> for Graph {
    fn from(tree: &RootedTree) -> Self {
        let mut adj = vec![Vec::new(); tree.len()];
        for (j, &p) in tree.parents().iter().enumerate() {
            if p != 0 {
                adj[j].push(p as usize - 1);
                adj[p as usize - 1].push(j);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_are_fine_for_graphs() {
        let g = Graph::from_edges(&[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.neighbors(1).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn rejects_broken_graphs() {
        assert_eq!(
            Graph::from_edges(&[(1, 2), (3, 4)]),
            Err(TreeError::Disconnected(3))
        );
        assert!(Graph::from_edges(&[(1, 1)]).is_err());
        assert!(Graph::from_edges(&[(1, 3)]).is_err());
        assert_eq!(Graph::from_edges(&[]).unwrap().len(), 1);
    }

    #[test]
    fn from_tree_matches_edges() {
        let t = RootedTree::from_parents(vec![4, 4, 4, 8, 6, 7, 8, 0]).unwrap();
        let g = Graph::from(&t);
        let h = Graph::from_edges(&t.to_edge_list().edges).unwrap();
        assert_eq!(g, h);
        assert_eq!(g.degree(4), 4);
    }

    #[test]
    fn relabel_swaps() {
        let g = Graph::from_edges(&[(1, 2), (2, 3)]).unwrap();
        let h = g.relabeled(&[3, 2, 1]);
        assert_eq!(h, Graph::from_edges(&[(3, 2), (2, 1)]).unwrap());
    }
}
