//! Knowledge-graph triples to virtual tables.
//!
//! A triple set is split into connected components over node strings; each
//! component becomes a single-row table. Every triple contributes a cell
//! holding its tail with the relation as the sole column header. Nodes that
//! never occur as a tail get a headerless cell, placed before the triple
//! cells in order of first appearance.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ir::{make_virtual_table, Cell, VirtualTable};
use crate::text::normalize_ws;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub head: String,
    pub relation: String,
    pub tail: String,
}

impl Triple {
    /// Builds a triple from raw strings, normalizing whitespace. Returns
    /// `None` if any component is empty afterwards.
    pub fn new(head: &str, relation: &str, tail: &str) -> Option<Self> {
        let t = Triple {
            head: normalize_ws(head),
            relation: normalize_ws(relation),
            tail: normalize_ws(tail),
        };
        (!t.head.is_empty() && !t.relation.is_empty() && !t.tail.is_empty()).then_some(t)
    }
}

/// Non-empty, ordered list of triples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleSet {
    triples: Vec<Triple>,
}

impl TripleSet {
    pub fn new(triples: Vec<Triple>) -> Result<Self> {
        if triples.is_empty() {
            return Err(Error::EmptyTripleSet);
        }
        Ok(TripleSet { triples })
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Distinct node strings in order of first appearance (head before tail
    /// within a triple).
    pub fn nodes(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for t in &self.triples {
            for n in [t.head.as_str(), t.tail.as_str()] {
                if seen.insert(n) {
                    out.push(n);
                }
            }
        }
        out
    }
}

/// Parses flat `[head, relation, tail]` records.
pub fn parse_triples<R, S>(records: impl IntoIterator<Item = R>) -> Result<TripleSet>
where
    R: AsRef<[S]>,
    S: AsRef<str>,
{
    let mut triples = Vec::new();
    for (index, rec) in records.into_iter().enumerate() {
        let rec = rec.as_ref();
        if rec.len() != 3 {
            return Err(Error::MalformedTriple {
                index,
                reason: format!("expected 3 elements, found {}", rec.len()),
            });
        }
        let triple =
            Triple::new(rec[0].as_ref(), rec[1].as_ref(), rec[2].as_ref()).ok_or_else(|| {
                Error::MalformedTriple {
                    index,
                    reason: "empty component".into(),
                }
            })?;
        triples.push(triple);
    }
    TripleSet::new(triples)
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Splits the set into connected components of the undirected node graph.
///
/// Triples keep their input order inside each component, and components are
/// ordered by the index of their earliest triple.
pub fn connected_components(ts: &TripleSet) -> Vec<TripleSet> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut edges = Vec::with_capacity(ts.len());
    for t in ts.triples() {
        let next = ids.len();
        let h = *ids.entry(t.head.as_str()).or_insert(next);
        let next = ids.len();
        let tl = *ids.entry(t.tail.as_str()).or_insert(next);
        edges.push((h, tl));
    }

    let mut uf = UnionFind::new(ids.len());
    for &(h, t) in &edges {
        uf.union(h, t);
    }

    let mut slot_of_root: HashMap<usize, usize> = HashMap::new();
    let mut groups: Vec<Vec<Triple>> = Vec::new();
    for (triple, &(h, _)) in ts.triples().iter().zip(&edges) {
        let root = uf.find(h);
        let slot = *slot_of_root.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(triple.clone());
    }
    groups
        .into_iter()
        .map(|triples| TripleSet { triples })
        .collect()
}

/// Converts one connected component into a single-row virtual table.
///
/// The caller is responsible for passing a single component; a disconnected
/// set is still converted, as if it were one component.
pub fn triples_to_virtual_table(component: &TripleSet) -> VirtualTable {
    let tails: HashSet<&str> = component
        .triples()
        .iter()
        .map(|t| t.tail.as_str())
        .collect();
    let mut row: Vec<Cell> = component
        .nodes()
        .into_iter()
        .filter(|n| !tails.contains(n))
        .map(Cell::new)
        .collect();
    row.extend(
        component
            .triples()
            .iter()
            .map(|t| Cell::new(&t.tail).with_col_header(&t.relation)),
    );
    make_virtual_table(None, None, vec![row], &[])
        .expect("a triple set always yields a non-empty row")
}

/// One virtual table per connected component, in component order.
pub fn kg_to_tables(ts: &TripleSet) -> Vec<VirtualTable> {
    connected_components(ts)
        .iter()
        .map(triples_to_virtual_table)
        .collect()
}
