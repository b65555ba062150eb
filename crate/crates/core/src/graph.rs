//! Simple labelled graphs on vertices `0..n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::DegreeSequence;

/// A simple graph on the vertex set `0..n`, stored as a dense adjacency
/// matrix. Equality and hashing compare the edge sets exactly.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct LabeledGraph {
    n: usize,
    adj: Vec<bool>,
    edges: usize,
}

/// Wire format: `{ "n": int, "edges": [[i, j], ...] }`, `i < j`, sorted.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for LabeledGraph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = repr.edges.iter().map(|e| (e[0], e[1])).collect();
        LabeledGraph::from_edges(repr.n, &pairs)
    }
}

impl From<LabeledGraph> for GraphRepr {
    fn from(g: LabeledGraph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl LabeledGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        LabeledGraph {
            n,
            adj: vec![false; n * n],
            edges: 0,
        }
    }

    /// Builds a graph from an edge list. Pairs may be given in either
    /// orientation; loops, out-of-range endpoints and duplicates are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = LabeledGraph::empty(n);
        for &(a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidEdge(a, b));
            }
            if g.has_edge(a, b) {
                let (i, j) = ordered(a, b);
                return Err(Error::DuplicateEdge(i, j));
            }
            g.set(a, b, true);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }

    #[inline]
    fn set(&mut self, a: usize, b: usize, value: bool) {
        let old = self.adj[a * self.n + b];
        if old != value {
            self.adj[a * self.n + b] = value;
            self.adj[b * self.n + a] = value;
            if value {
                self.edges += 1;
            } else {
                self.edges -= 1;
            }
        }
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        if a >= self.n || b >= self.n || a == b {
            return Err(Error::InvalidEdge(a, b));
        }
        Ok(())
    }

    /// Adds `{a, b}`; fails if it is already present.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        if self.has_edge(a, b) {
            return Err(Error::AlreadyAnEdge(a, b));
        }
        self.set(a, b, true);
        Ok(())
    }

    /// Removes `{a, b}`; fails if it is absent.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        if !self.has_edge(a, b) {
            return Err(Error::NotAnEdge(a, b));
        }
        self.set(a, b, false);
        Ok(())
    }

    /// Flips the pair `{a, b}` between edge and non-edge.
    pub fn toggle(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        let v = self.has_edge(a, b);
        self.set(a, b, !v);
        Ok(())
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter()
            .enumerate()
            .filter_map(|(u, &e)| if e { Some(u) } else { None })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&e| e)
            .count()
    }

    /// Positional degree vector.
    pub fn degree_vec(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Positional degree sequence. Panics only for the degenerate `n = 0`
    /// graph, which has no degree sequence.
    pub fn degrees(&self) -> DegreeSequence {
        DegreeSequence::new(self.degree_vec()).expect("graph has at least one vertex")
    }

    /// Edge list with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Compact canonical key: the sorted edge list as `i-j` tokens.
    pub fn canonical_key(&self) -> String {
        let parts: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(i, j)| format!("{i}-{j}"))
            .collect();
        parts.join(",")
    }

    /// Whether `v` is adjacent to every vertex of `set` (other than itself).
    pub fn adjacent_to_all(&self, v: usize, set: &[usize]) -> bool {
        set.iter().all(|&u| u == v || self.has_edge(v, u))
    }

    /// Whether the induced subgraph on `set` has no edge.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &a)| set[k + 1..].iter().all(|&b| !self.has_edge(a, b)))
    }

    /// Whether the induced subgraph on `set` is complete.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &a)| set[k + 1..].iter().all(|&b| self.has_edge(a, b)))
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(n={}, {:?})", self.n, self.edges())
    }
}

#[inline]
pub(crate) fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
