//! Periods and local restoration numbers, subtree by subtree, for the
//! eight-vertex fixture tree.
//!
//! A leaf has R = 1 and P = 2. A vertex's R is the lcm of its children's
//! periods, and its period is (m + 2) R minus what its m children send back.

use passbuck::direct::{restoration_from_cache, PeriodCache};
use passbuck::tree::{EdgeList, RootedTree};

fn main() {
    let edges = vec![(8, 4), (8, 7), (4, 1), (4, 2), (4, 3), (7, 6), (6, 5)];
    let tree = RootedTree::from_edge_list(&EdgeList::new(edges, 8)).unwrap();

    let mut cache = PeriodCache::new(tree.len());
    println!("{:>6} {:>10} {:>8} {:>8}", "vertex", "children", "R", "P");
    for v in tree.post_order() {
        cache.fill(&tree, v);
        println!(
            "{:>6} {:>10} {:>8} {:>8}",
            v,
            format!("{:?}", tree.children(v).unwrap()),
            cache.local_restoration(v).unwrap(),
            cache.period(v).unwrap()
        );
    }

    let table = restoration_from_cache(&tree, &cache);
    println!("\nscaled to the whole tree:");
    for (v, r) in table.iter() {
        println!("  R({v}) = {r}");
    }
    println!("  total  = {}", table.total());
}
