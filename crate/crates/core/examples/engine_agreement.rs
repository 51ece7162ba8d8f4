//! Direct computation, the abacus and the Markov oracle on random trees.
//!
//! ```text
//! cargo run -p passbuck --example engine_agreement -- 50 10
//! ```
//! Arguments: number of trees (default 25) and maximum size (default 10).

use passbuck::report::{probabilities, Method};
use passbuck::tree::random_tree;
use passbuck::SimLimits;

fn main() -> Result<(), passbuck::Error> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("a number"));
    let count = args.next().unwrap_or(25);
    let max_n = args.next().unwrap_or(10).max(1);

    let mut agree = 0;
    for seed in 0..count as u64 {
        let n = 1 + (seed as usize * 7) % max_n;
        let tree = random_tree(n, seed)?;
        let [d, s, o] = [Method::Direct, Method::Simulate, Method::Oracle]
            .map(|m| probabilities(&tree, m, SimLimits::unlimited()));
        let (d, s, o) = (d?, s?, o?);
        let same = d == s && s == o;
        agree += usize::from(same);
        println!(
            "seed {seed:>3} n={n:>2} root={:>2}  root wins {}  {}",
            tree.root(),
            d.get(tree.root()).unwrap(),
            if same { "agree" } else { "MISMATCH" }
        );
    }
    println!("{agree}/{count} trees agree across all three engines");
    Ok(())
}
