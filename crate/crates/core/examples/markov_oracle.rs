//! Exact absorption probabilities on a tree and on graphs with cycles, with
//! the buck starting anywhere.

use passbuck::markov::{absorption_probabilities, chain_from_edges, MarkovError};
use passbuck::report::{format_probability, Format};

fn show(name: &str, edges: &[(u32, u32)], start: u32) -> Result<(), MarkovError> {
    let chain = chain_from_edges(edges, start)?;
    let p = absorption_probabilities(&chain)?;
    let cells: Vec<String> = p
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, x)| format!("{}: {}", i + 1, format_probability(x, Format::Rational)))
        .collect();
    println!("{name} (start {start}): {}", cells.join(", "));
    Ok(())
}

fn main() -> Result<(), MarkovError> {
    let tree = [(8, 4), (8, 7), (4, 1), (4, 2), (4, 3), (7, 6), (6, 5)];
    show("fixture tree", &tree, 8)?;
    show("fixture tree", &tree, 5)?;
    show("triangle", &[(1, 2), (2, 3), (3, 1)], 1)?;
    show("square", &[(1, 2), (2, 3), (3, 4), (4, 1)], 1)?;
    show(
        "complete graph K4",
        &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        2,
    )?;
    Ok(())
}
