//! Edge-list and community-label file formats.
//!
//! Both are UTF-8 text with one whitespace-separated token pair per line;
//! blank lines and lines starting with `#` are skipped. Vertex tokens are
//! arbitrary strings mapped to dense ids in order of first appearance.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{largest_component, CommunityLabeling, Graph};

/// Dense id assignment for external vertex tokens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMap {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
}

impl IdMap {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token(&self, id: usize) -> &str {
        &self.tokens[id]
    }

    fn intern(&mut self, token: &str) -> usize {
        if let Some(&id) = self.index.get(token) {
            return id;
        }
        let id = self.tokens.len();
        self.tokens.push(token.to_owned());
        self.index.insert(token.to_owned(), id);
        id
    }

    /// Keeps only `ids` (new id `k` is old id `ids[k]`).
    pub fn restrict(&self, ids: &[usize]) -> IdMap {
        let mut out = IdMap::default();
        for &id in ids {
            out.intern(&self.tokens[id]);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct EdgeListIngest {
    pub graph: Graph,
    pub ids: IdMap,
    pub self_loops_dropped: usize,
    /// Edge lines beyond the first for the same unordered pair.
    pub duplicates_dropped: usize,
}

impl EdgeListIngest {
    /// Restricts to the largest connected component, renumbering densely.
    /// Also returns the kept old ids, for restricting labelings.
    pub fn largest_component(&self) -> (EdgeListIngest, Vec<usize>) {
        let keep = largest_component(&self.graph);
        let (graph, _) = self.graph.induced_subgraph(&keep);
        let lcc = EdgeListIngest {
            graph,
            ids: self.ids.restrict(&keep),
            self_loops_dropped: self.self_loops_dropped,
            duplicates_dropped: self.duplicates_dropped,
        };
        (lcc, keep)
    }
}

fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(idx, line)| match line {
        Err(e) => Some(Err(Error::from(e))),
        Ok(line) => {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                None
            } else {
                Some(Ok((idx + 1, trimmed.to_owned())))
            }
        }
    })
}

fn token_pair(line_no: usize, line: &str) -> Result<(&str, &str)> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(Error::Parse { line: line_no, msg: format!("expected two tokens, got {line:?}") }),
    }
}

/// Parses an undirected edge list. Self-loops are dropped and counted.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<EdgeListIngest> {
    let mut ids = IdMap::default();
    let mut edges = Vec::new();
    let mut self_loops = 0;
    for line in data_lines(reader) {
        let (line_no, text) = line?;
        let (a, b) = token_pair(line_no, &text)?;
        let (u, v) = (ids.intern(a), ids.intern(b));
        if u == v {
            self_loops += 1;
        } else {
            edges.push((u.min(v), u.max(v)));
        }
    }
    let lines = edges.len();
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::from_unique_edges(ids.len(), &edges);
    Ok(EdgeListIngest {
        graph,
        ids,
        self_loops_dropped: self_loops,
        duplicates_dropped: lines - edges.len(),
    })
}

pub fn ingest_edge_list(path: impl AsRef<Path>) -> Result<EdgeListIngest> {
    parse_edge_list(BufReader::new(File::open(path)?))
}

/// Parses `vertex community` lines against an existing id map. Community
/// tokens are densified in numeric order when they are all integers, in
/// lexicographic order otherwise. Vertices absent from the file stay
/// unlabeled.
pub fn parse_labels<R: BufRead>(reader: R, ids: &IdMap) -> Result<CommunityLabeling> {
    let mut raw: Vec<(usize, usize, String)> = Vec::new();
    for line in data_lines(reader) {
        let (line_no, text) = line?;
        let (vertex, community) = token_pair(line_no, &text)?;
        let v = ids.get(vertex).ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("unknown vertex token {vertex:?}"),
        })?;
        raw.push((line_no, v, community.to_owned()));
    }

    let mut distinct: Vec<&str> = raw.iter().map(|(_, _, c)| c.as_str()).collect();
    let numeric: Option<Vec<i64>> = distinct.iter().map(|c| c.parse().ok()).collect();
    match numeric {
        Some(_) => distinct.sort_by_key(|c| c.parse::<i64>().expect("checked numeric")),
        None => distinct.sort_unstable(),
    }
    distinct.dedup();
    let dense: HashMap<&str, usize> = distinct.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let mut labels = vec![None; ids.len()];
    for (line_no, v, community) in &raw {
        let c = dense[community.as_str()];
        match labels[*v] {
            Some(prev) if prev != c => {
                return Err(Error::Parse {
                    line: *line_no,
                    msg: format!("vertex {:?} labeled twice", ids.token(*v)),
                })
            }
            _ => labels[*v] = Some(c),
        }
    }
    CommunityLabeling::new(distinct.len(), labels)
}

pub fn ingest_labels(path: impl AsRef<Path>, ids: &IdMap) -> Result<CommunityLabeling> {
    parse_labels(BufReader::new(File::open(path)?), ids)
}

/// Writes `vertex community` lines for every labeled vertex.
pub fn write_labels<W: Write>(mut out: W, labeling: &CommunityLabeling, ids: &IdMap) -> Result<()> {
    for (v, label) in labeling.labels().iter().enumerate() {
        if let Some(c) = label {
            writeln!(out, "{} {}", ids.token(v), c)?;
        }
    }
    Ok(())
}
