use std::collections::HashMap;
use std::io::BufRead;

use super::{BipartiteGraph, Labels};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeListFormat {
    /// One edge per line: `<left label> <right label>`. Lines starting with
    /// `%` or `#` are comments, blank lines are ignored.
    #[default]
    Whitespace2Col,
}

#[derive(Default)]
struct Interner {
    ids: HashMap<String, u32>,
    names: Vec<String>,
}

impl Interner {
    fn intern(&mut self, label: &str) -> u32 {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.names.len() as u32;
        self.ids.insert(label.to_owned(), id);
        self.names.push(label.to_owned());
        id
    }
}

/// Reads an edge list. Labels are re-indexed densely per side in first-seen
/// order and kept on the graph for reporting.
pub fn load_edge_list<R: BufRead>(source: R, format: EdgeListFormat) -> Result<BipartiteGraph> {
    match format {
        EdgeListFormat::Whitespace2Col => load_two_column(source),
    }
}

fn load_two_column<R: BufRead>(source: R) -> Result<BipartiteGraph> {
    let mut left = Interner::default();
    let mut right = Interner::default();
    let mut edges = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse { line: lineno + 1, found: tokens.len() });
        }
        edges.push((left.intern(tokens[0]), right.intern(tokens[1])));
    }
    let g = BipartiteGraph::from_edges(left.names.len(), right.names.len(), edges)?;
    g.with_labels(Labels { left: left.names, right: right.names })
}
