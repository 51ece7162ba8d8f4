//! Command line front end.
//!
//! Exit codes: 0 success, 1 I/O error, 2 usage error, 3 invalid input
//! (parse or tree validation), 4 simulation cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use passbuck::report::{self, Format, Method};
use passbuck::{dot, edgelist, load_tree, random_tree, restoration_full, Error, SimLimits};

#[derive(Parser)]
#[command(
    name = "passbuck",
    version,
    about = "Pass the Buck win probabilities on rooted trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TreeInput {
    /// Edge-list file: one `u v` pair per line, `#` comments.
    file: PathBuf,
    /// Root vertex (the start of the game).
    #[arg(long)]
    root: u32,
}

#[derive(Args)]
struct Limits {
    /// Stop the simulator after this many firings.
    #[arg(long)]
    max_firings: Option<u64>,
    /// Stop the simulator after this many chips have been added.
    #[arg(long)]
    max_chips: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the restoration function and its total.
    Restoration {
        #[command(flatten)]
        input: TreeInput,
    },
    /// Print each vertex's win probability.
    Probabilities {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, default_value = "direct")]
        method: Method,
        /// `rational` or `decimal:K`.
        #[arg(long, default_value = "rational")]
        format: Format,
        #[command(flatten)]
        limits: Limits,
    },
    /// Time the direct engine against the abacus simulator.
    Bench {
        #[command(flatten)]
        input: TreeInput,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print the augmented abacus graph in DOT.
    ExportDot {
        #[command(flatten)]
        input: TreeInput,
        /// Label absorbers with restoration values.
        #[arg(long)]
        with_abacus_result: bool,
    },
    /// Print a random tree in edge-list form.
    GenRandom {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn limits(l: &Limits) -> Result<SimLimits, Error> {
    Ok(SimLimits::new(l.max_firings, l.max_chips)?)
}

fn run(cli: Cli) -> Result<String, Error> {
    Ok(match cli.command {
        Command::Restoration { input } => {
            let tree = load_tree(&input.file, input.root)?;
            report::format_table(&restoration_full(&tree))
        }
        Command::Probabilities {
            input,
            method,
            format,
            limits: l,
        } => {
            let tree = load_tree(&input.file, input.root)?;
            let dist = report::probabilities(&tree, method, limits(&l)?)?;
            report::format_distribution(&dist, format)
        }
        Command::Bench { input, limits: l } => {
            let tree = load_tree(&input.file, input.root)?;
            let limits = limits(&l)?;
            let direct = report::bench_direct(&tree);
            let sim = report::bench_simulate(&tree, limits)?;
            format!("{}\n{}\n", direct.record(), sim.record())
        }
        Command::ExportDot {
            input,
            with_abacus_result,
        } => {
            let tree = load_tree(&input.file, input.root)?;
            let table = with_abacus_result.then(|| restoration_full(&tree));
            dot::export_dot(&tree, table.as_ref())
        }
        Command::GenRandom { n, seed } => edgelist::write_tree(&random_tree(n, seed)?),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) => 1,
                Error::Sim(passbuck::SimError::ZeroCap) => 2,
                Error::Sim(_) => 4,
                Error::Parse(_) | Error::Tree(_) | Error::Markov(_) => 3,
            })
        }
    }
}
