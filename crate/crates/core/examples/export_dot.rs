//! Writes the augmented abacus graph of the eight-vertex fixture as DOT,
//! absorbers labeled with their restoration values.
//!
//! ```text
//! cargo run -p passbuck --example export_dot | dot -Tsvg > abacus.svg
//! ```

use passbuck::dot::export_dot;
use passbuck::restoration_full;
use passbuck::tree::RootedTree;

fn main() {
    let tree = RootedTree::from_parents(vec![4, 4, 4, 8, 6, 7, 8, 0]).unwrap();
    print!("{}", export_dot(&tree, Some(&restoration_full(&tree))));
}
