//! How much work the abacus does compared with the direct recursion.
//!
//! ```text
//! cargo run --release -p passbuck --example sim_vs_direct -- 2000000
//! ```
//! The optional argument caps the chips the simulator may add; without it
//! the 26-vertex fixture runs to completion (about 65 million chips).

use std::path::PathBuf;

use passbuck::report::{bench_direct, bench_simulate};
use passbuck::{load_tree, SimLimits};

fn main() -> Result<(), passbuck::Error> {
    let max_chips = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("a chip count"));
    let limits = SimLimits::new(None, max_chips)?;
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (file, root) in [("test1.edges", 8), ("test2.edges", 1)] {
        let tree = load_tree(&dir.join(file), root)?;
        println!("{file}");
        println!("  {}", bench_direct(&tree).record());
        println!("  {}", bench_simulate(&tree, limits)?.record());
    }
    Ok(())
}
