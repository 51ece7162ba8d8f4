//! Engel's abacus by hand on a two-vertex board, then a full run on the
//! eight-vertex fixture tree.

use passbuck::abacus::{
    critical_loading, run_to_restoration, stabilize, AugmentedGraph, FiringPolicy, SimLimits,
};
use passbuck::tree::{EdgeList, RootedTree};

fn main() -> Result<(), passbuck::SimError> {
    let pair = RootedTree::from_edge_list(&EdgeList::new(vec![(1, 2)], 1)).unwrap();
    let g = AugmentedGraph::from_tree(&pair);
    let mut config = critical_loading(&g);
    println!("critical loading: chips {:?}", config.chip_counts());
    loop {
        config.add_chip(&g)?;
        let step = stabilize(&g, config, FiringPolicy::Fifo, None)?;
        config = step.config;
        println!(
            "added chip #{}: fired {:?}, chips {:?}, absorbed [{}, {}]",
            config.chips_added(),
            step.firings,
            config.chip_counts(),
            config.absorbed(1),
            config.absorbed(2)
        );
        if config.is_critical(&g) {
            break;
        }
    }

    let edges = vec![(8, 4), (8, 7), (4, 1), (4, 2), (4, 3), (7, 6), (6, 5)];
    let tree = RootedTree::from_edge_list(&EdgeList::new(edges, 8)).unwrap();
    let run = run_to_restoration(&AugmentedGraph::from_tree(&tree), SimLimits::unlimited())?;
    println!(
        "\neight-vertex tree: {} chips added, {} firings",
        run.total, run.firings
    );
    for (v, r) in run.table.iter() {
        println!("  absorber of {v}: {r}");
    }
    Ok(())
}
