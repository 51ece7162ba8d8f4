//! Plain-text edge lists.
//!
//! One edge per line as two whitespace-separated positive integers. Blank
//! lines and anything after `#` are ignored. The root is not part of the
//! format; writers emit it as a `# root R` comment for readers' benefit.

use std::fmt::Write as _;

use thiserror::Error;

use crate::tree::{RootedTree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ParseError: line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_edges(text: &str) -> Result<Vec<(VertexId, VertexId)>, ParseError> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let err = |message: String| ParseError {
            line: i + 1,
            message,
        };
        if fields.len() != 2 {
            return Err(err(format!(
                "expected 2 vertex ids, found {}",
                fields.len()
            )));
        }
        let id = |s: &str| -> Result<VertexId, ParseError> {
            match s.parse::<VertexId>() {
                Ok(0) | Err(_) => Err(err(format!("`{s}` is not a positive integer"))),
                Ok(v) => Ok(v),
            }
        };
        edges.push((id(fields[0])?, id(fields[1])?));
    }
    Ok(edges)
}

/// Reads the `# root R` comment written by [`write_tree`], if present.
pub fn root_comment(text: &str) -> Option<VertexId> {
    text.lines().find_map(|l| {
        let rest = l.trim().strip_prefix('#')?.trim().strip_prefix("root")?;
        rest.trim().parse().ok()
    })
}

/// `# root R` followed by one `parent child` line per edge.
pub fn write_tree(tree: &RootedTree) -> String {
    let mut out = format!("# root {}\n", tree.root());
    for (p, c) in tree.to_edge_list().edges {
        writeln!(out, "{p} {c}").unwrap();
    }
    out
}
