//! Restoration functions of the two bundled fixture trees, computed directly.
//!
//! ```text
//! cargo run -p passbuck --example golden_tables
//! ```

use std::path::PathBuf;

use passbuck::report::{format_probability, format_table, Format};
use passbuck::{load_tree, restoration_full, win_probabilities};

fn main() -> Result<(), passbuck::Error> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (file, root) in [("test1.edges", 8), ("test2.edges", 1)] {
        let tree = load_tree(&dir.join(file), root)?;
        let table = restoration_full(&tree);
        let dist = win_probabilities(&table);
        println!("== {file} (root {root}, parent array {:?})", tree.parents());
        print!("{}", format_table(&table));
        let p = dist.get(root).unwrap();
        println!(
            "root wins with probability {} ~ {}\n",
            format_probability(p, Format::Rational),
            format_probability(p, Format::Decimal(6))
        );
    }
    Ok(())
}
