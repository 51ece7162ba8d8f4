//! Text output shared by the command line tool and the examples.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::abacus::{run_to_restoration, AugmentedGraph, SimError, SimLimits};
use crate::direct::{
    restoration_full, win_probabilities, ExactRational, RestorationTable, WinDistribution,
};
use crate::markov::{absorption_probabilities, GameChain};
use crate::tree::RootedTree;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Simulate,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Simulate => "simulate",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Method::Direct),
            "simulate" => Ok(Method::Simulate),
            "oracle" => Ok(Method::Oracle),
            _ => Err(format!(
                "unknown method `{s}` (expected direct, simulate or oracle)"
            )),
        }
    }
}

/// Win probabilities of `tree` (buck starting at the root) by any engine.
pub fn probabilities(
    tree: &RootedTree,
    method: Method,
    limits: SimLimits,
) -> Result<WinDistribution, Error> {
    Ok(match method {
        Method::Direct => win_probabilities(&restoration_full(tree)),
        Method::Simulate => {
            let run = run_to_restoration(&AugmentedGraph::from_tree(tree), limits)?;
            win_probabilities(&run.table)
        }
        Method::Oracle => {
            absorption_probabilities(&GameChain::from_tree(tree))?.into_distribution()
        }
    })
}

/// How probabilities are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// `p/q` in lowest terms.
    Rational,
    /// Fixed point with this many fractional digits, rounded half to even.
    Decimal(usize),
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "rational" {
            return Ok(Format::Rational);
        }
        s.strip_prefix("decimal:")
            .and_then(|k| k.parse().ok())
            .map(Format::Decimal)
            .ok_or_else(|| format!("unknown format `{s}` (expected rational or decimal:K)"))
    }
}

/// Lines `vertex value` in ascending vertex order, then `total T`.
pub fn format_table(table: &RestorationTable) -> String {
    let mut out = String::new();
    for (v, r) in table.iter() {
        writeln!(out, "{v} {r}").unwrap();
    }
    writeln!(out, "total {}", table.total()).unwrap();
    out
}

pub fn format_probability(p: &ExactRational, format: Format) -> String {
    match format {
        Format::Rational => format!("{}/{}", p.numer(), p.denom()),
        Format::Decimal(k) => decimal(p, k),
    }
}

pub fn format_distribution(dist: &WinDistribution, format: Format) -> String {
    let mut out = String::new();
    for (v, p) in dist.iter() {
        writeln!(out, "{v} {}", format_probability(p, format)).unwrap();
    }
    out
}

fn decimal(p: &ExactRational, digits: usize) -> String {
    let sign = if p.is_negative() { "-" } else { "" };
    let numer = p.numer().abs();
    let denom = p.denom();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let (mut q, r) = (numer * &scale).div_rem(denom);
    let twice: BigInt = r * 2u32;
    if twice > *denom || (twice == *denom && q.is_odd()) {
        q += 1u32;
    }
    if digits == 0 {
        return format!("{sign}{q}");
    }
    let (whole, frac) = q.div_rem(&scale);
    format!("{sign}{whole}.{frac:0>digits$}")
}

/// One engine's run, for the benchmark surface.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub method: Method,
    pub n: usize,
    /// The restoration table when the engine finished.
    pub table: Option<RestorationTable>,
    /// Chips added at the root. For the direct engine this is the table
    /// total, which is what a completed abacus run would add.
    pub chips_added: BigUint,
    /// Firing events (simulator only).
    pub firings: Option<BigUint>,
    pub wall: Duration,
    pub completed: bool,
}

impl RunReport {
    /// `method=.. n=.. chips_added=.. firings=.. wall_ms=.. completed=..`;
    /// `firings=na` for the direct engine.
    pub fn record(&self) -> String {
        let firings = self
            .firings
            .as_ref()
            .map_or_else(|| "na".to_string(), |f| f.to_string());
        format!(
            "method={} n={} chips_added={} firings={} wall_ms={:.3} completed={}",
            self.method,
            self.n,
            self.chips_added,
            firings,
            self.wall.as_secs_f64() * 1e3,
            self.completed
        )
    }
}

pub fn bench_direct(tree: &RootedTree) -> RunReport {
    let start = Instant::now();
    let table = restoration_full(tree);
    let wall = start.elapsed();
    RunReport {
        method: Method::Direct,
        n: tree.len(),
        chips_added: table.total().clone(),
        table: Some(table),
        firings: None,
        wall,
        completed: true,
    }
}

/// Runs the abacus under `limits`. Hitting a cap yields a partial report
/// rather than an error.
pub fn bench_simulate(tree: &RootedTree, limits: SimLimits) -> Result<RunReport, SimError> {
    let g = AugmentedGraph::from_tree(tree);
    let start = Instant::now();
    let result = run_to_restoration(&g, limits);
    let wall = start.elapsed();
    let mut report = RunReport {
        method: Method::Simulate,
        n: tree.len(),
        table: None,
        chips_added: BigUint::zero(),
        firings: None,
        wall,
        completed: false,
    };
    match result {
        Ok(run) => {
            report.chips_added = run.total;
            report.firings = Some(run.firings);
            report.table = Some(run.table);
            report.completed = true;
        }
        Err(e) => {
            let p = e.progress().ok_or(e.clone())?;
            report.chips_added = p.config.chips_added().clone();
            report.firings = Some(p.firings.clone());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_flags() {
        assert_eq!("rational".parse(), Ok(Format::Rational));
        assert_eq!("decimal:6".parse(), Ok(Format::Decimal(6)));
        assert!("decimal:".parse::<Format>().is_err());
        assert!("float".parse::<Format>().is_err());
        assert_eq!("oracle".parse(), Ok(Method::Oracle));
        assert!("magic".parse::<Method>().is_err());
    }

    #[test]
    fn decimal_rounds_half_to_even() {
        assert_eq!(decimal(&q(1, 8), 2), "0.12");
        assert_eq!(decimal(&q(3, 8), 2), "0.38");
        assert_eq!(decimal(&q(1, 2), 0), "0");
        assert_eq!(decimal(&q(3, 2), 0), "2");
        assert_eq!(decimal(&q(1, 3), 4), "0.3333");
        assert_eq!(decimal(&q(2, 3), 4), "0.6667");
        assert_eq!(decimal(&q(91, 212), 6), "0.429245");
        assert_eq!(decimal(&q(1, 1), 3), "1.000");
        assert_eq!(decimal(&q(1, 100), 1), "0.0");
        assert_eq!(decimal(&q(-1, 3), 2), "-0.33");
    }

    #[test]
    fn table_lines() {
        let t = restoration_full(&RootedTree::path(2).unwrap());
        assert_eq!(format_table(&t), "1 2\n2 1\ntotal 3\n");
    }

    #[test]
    fn rational_lines() {
        let d = probabilities(
            &RootedTree::single(),
            Method::Direct,
            SimLimits::unlimited(),
        )
        .unwrap();
        assert_eq!(format_distribution(&d, Format::Rational), "1 1/1\n");
    }

    #[test]
    fn bench_records() {
        let t = RootedTree::from_parents(vec![4, 4, 4, 8, 6, 7, 8, 0]).unwrap();
        let d = bench_direct(&t);
        assert!(d
            .record()
            .starts_with("method=direct n=8 chips_added=212 firings=na wall_ms="));
        assert!(d.record().ends_with("completed=true"));
        let s = bench_simulate(&t, SimLimits::unlimited()).unwrap();
        assert_eq!(s.chips_added, BigUint::from(212u32));
        assert_eq!(s.table, d.table);
        let capped = bench_simulate(&t, SimLimits::new(None, Some(10)).unwrap()).unwrap();
        assert!(!capped.completed);
        assert!(capped.record().contains("chips_added=10 "));
        assert!(capped.record().ends_with("completed=false"));
    }
}
