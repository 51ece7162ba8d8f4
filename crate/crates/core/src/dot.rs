//! Graphviz rendering of the augmented abacus graph.
//!
//! Game vertex `v` is node `v<v>`, labeled with its critical chip count; its
//! absorber is node `a<v>`. The root is green, other game vertices gray,
//! absorbers pink.

use std::fmt::Write as _;

use crate::abacus::{critical_loading, AugmentedGraph};
use crate::direct::RestorationTable;
use crate::tree::RootedTree;

/// DOT text for `tree`. With `restoration`, each absorber is labeled with
/// its restoration value; otherwise absorbers are unlabeled.
pub fn export_dot(tree: &RootedTree, restoration: Option<&RestorationTable>) -> String {
    let g = AugmentedGraph::from_tree(tree);
    let loading = critical_loading(&g);
    let mut out = String::from("digraph abacus {\n");
    out.push_str("  node [shape=circle, style=filled];\n");
    for v in tree.vertices() {
        let color = if v == tree.root() { "green" } else { "gray" };
        writeln!(
            out,
            "  v{v} [label=\"{}\", xlabel=\"{v}\", fillcolor={color}];",
            loading.chips(v)
        )
        .unwrap();
    }
    for v in tree.vertices() {
        let label = restoration
            .and_then(|t| t.get(v))
            .map(|r| r.to_string())
            .unwrap_or_default();
        writeln!(
            out,
            "  a{v} [label=\"{label}\", shape=box, fillcolor=pink];"
        )
        .unwrap();
    }
    for v in tree.vertices() {
        for w in g.graph().neighbors(v) {
            writeln!(out, "  v{v} -> v{w};").unwrap();
        }
        writeln!(out, "  v{v} -> a{v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direct::restoration_full;

    #[test]
    fn single_vertex() {
        let dot = export_dot(&RootedTree::single(), None);
        assert!(dot.contains("v1 [label=\"0\", xlabel=\"1\", fillcolor=green]"));
        assert!(dot.contains("a1 [label=\"\""));
        assert_eq!(dot.matches("->").count(), 1);
    }

    #[test]
    fn test1_with_values() {
        let t = RootedTree::from_parents(vec![4, 4, 4, 8, 6, 7, 8, 0]).unwrap();
        let table = restoration_full(&t);
        let dot = export_dot(&t, Some(&table));
        assert_eq!(dot.matches("fillcolor=pink").count(), 8);
        assert!(dot.contains("v8 [label=\"2\", xlabel=\"8\", fillcolor=green]"));
        assert!(dot.contains("v4 [label=\"4\", xlabel=\"4\", fillcolor=gray]"));
        assert!(dot.contains("a8 [label=\"91\""));
        // 7 tree edges in both directions plus 8 absorbing edges.
        assert_eq!(dot.matches("->").count(), 22);
    }
}
