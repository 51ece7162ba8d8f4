//! Seeded random trees in the edge-list text format, and what the direct
//! engine makes of them.

use passbuck::edgelist::write_tree;
use passbuck::restoration_full;
use passbuck::tree::{random_attachment_tree, random_tree};

fn main() -> Result<(), passbuck::TreeError> {
    for seed in 0..3 {
        let tree = random_tree(7, seed)?;
        println!("Prüfer tree, seed {seed}, parents {:?}", tree.parents());
        print!("{}", write_tree(&tree));
        println!("restoration total {}\n", restoration_full(&tree).total());
    }
    let deep = random_attachment_tree(2_000, 1)?;
    let table = restoration_full(&deep);
    println!(
        "attachment tree on 2000 vertices: root value has {} decimal digits",
        table.get(deep.root()).unwrap().to_string().len()
    );
    Ok(())
}
