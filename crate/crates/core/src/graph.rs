// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Simple undirected graphs, text formats, and seeded generators.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Index of an edge in [`Graph::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    Duplicate(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

/// An undirected simple graph on vertices `0..vertex_count`.
///
/// Edges are stored with the smaller endpoint first. The adjacency index lists,
/// for every vertex, its `(neighbor, edge)` pairs in increasing edge-id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, EdgeId)>>,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    /// Builds a graph from a list of vertex pairs, rejecting loops, repeated
    /// pairs, and endpoints outside `0..vertex_count`. Edge ids follow the
    /// input order.
    pub fn from_edges<I>(vertex_count: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(vertex_count);
        let mut seen = HashSet::new();
        for (a, b) in pairs {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: v, vertex_count });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(GraphError::Duplicate(u, v));
            }
            g.push_edge(u, v);
        }
        Ok(g)
    }

    fn push_edge(&mut self, u: usize, v: usize) {
        let id = EdgeId(self.edges.len());
        self.edges.push((u, v));
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e.0]
    }

    /// The endpoint of `e` that is not `v`.
    #[inline]
    pub fn opposite(&self, e: EdgeId, v: usize) -> usize {
        let (a, b) = self.edges[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// `(neighbor, edge)` pairs incident to `v`.
    #[inline]
    pub fn incident(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<EdgeId> {
        if a >= self.vertex_count || b >= self.vertex_count {
            return None;
        }
        let (short, other) = if self.degree(a) <= self.degree(b) { (a, b) } else { (b, a) };
        self.adjacency[short]
            .iter()
            .find(|&&(w, _)| w == other)
            .map(|&(_, e)| e)
    }

    /// Keeps the vertex set and the edges selected by `keep`. Returns the new
    /// graph together with the map from its edge ids to ids in `self`.
    pub fn edge_subgraph<F>(&self, mut keep: F) -> (Graph, Vec<EdgeId>)
    where
        F: FnMut(EdgeId) -> bool,
    {
        let mut g = Graph::empty(self.vertex_count);
        let mut origin = Vec::new();
        for e in self.edge_ids() {
            if keep(e) {
                let (u, v) = self.edges[e.0];
                g.push_edge(u, v);
                origin.push(e);
            }
        }
        (g, origin)
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut label = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            label[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for &(u, v) in &self.edges {
            if label[u] != usize::MAX && label[v] != usize::MAX {
                let (a, b) = (label[u].min(label[v]), label[u].max(label[v]));
                g.push_edge(a, b);
            }
        }
        g
    }

    /// Number of edges with both endpoints in the vertex set marked by `member`.
    pub fn induced_edge_count(&self, member: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| member[u] && member[v]).count()
    }

    /// Sorted list of canonical pairs; two graphs with equal keys are equal up
    /// to edge order.
    pub fn edge_set_key(&self) -> Vec<(usize, usize)> {
        let mut key = self.edges.clone();
        key.sort_unstable();
        key
    }
}

/// Text formats understood by [`parse_graph`] and [`emit_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// `u v` per line, 0-based, `#` comments.
    EdgeList,
    /// `p edge n m` header followed by `e u v` lines, 1-based.
    Dimacs,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(format!("unknown graph format `{other}` (expected edgelist or dimacs)")),
        }
    }
}

fn malformed(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Malformed { line, message: message.into() }
}

fn parse_vertex(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.parse::<usize>()
        .map_err(|_| malformed(line, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut pairs = Vec::new();
    let mut vertex_count = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(malformed(line, "expected two vertex ids"));
        };
        let (u, v) = (parse_vertex(a, line)?, parse_vertex(b, line)?);
        vertex_count = vertex_count.max(u + 1).max(v + 1);
        pairs.push((u, v));
    }
    Graph::from_edges(vertex_count, pairs)
}

fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks.as_slice() {
            ["p", "edge", n, m] => {
                if header.is_some() {
                    return Err(malformed(line, "second problem line"));
                }
                header = Some((parse_vertex(n, line)?, parse_vertex(m, line)?));
            }
            ["e", a, b] => {
                let Some((n, _)) = header else {
                    return Err(malformed(line, "edge before problem line"));
                };
                let (a, b) = (parse_vertex(a, line)?, parse_vertex(b, line)?);
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(malformed(line, format!("vertex outside 1..={n}")));
                }
                pairs.push((a - 1, b - 1));
            }
            _ => return Err(malformed(line, format!("unrecognised line `{trimmed}`"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(malformed(1, "missing `p edge n m` line"));
    };
    if pairs.len() != m {
        return Err(malformed(
            text.lines().count().max(1),
            format!("header declares {m} edges, found {}", pairs.len()),
        ));
    }
    Graph::from_edges(n, pairs)
}

/// Writes `g` in the requested format. Edges appear in edge-id order.
///
/// The edge-list format cannot express isolated vertices above the largest
/// endpoint; use DIMACS when the vertex count matters.
pub fn emit_graph(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::EdgeList => {
            for &(u, v) in g.edges() {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
        Format::Dimacs => {
            out.push_str(&format!("p edge {} {}\n", g.vertex_count(), g.edge_count()));
            for &(u, v) in g.edges() {
                out.push_str(&format!("e {} {}\n", u + 1, v + 1));
            }
        }
    }
    out
}

/// Graph families available to [`generate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Complete { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    /// Center `0` joined to leaves `1..n`.
    Star { n: usize },
    /// Erdős–Rényi `G(n, p)`.
    Gnp { n: usize, p: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Complete { .. } => "complete",
            Family::Cycle { .. } => "cycle",
            Family::Path { .. } => "path",
            Family::Star { .. } => "star",
            Family::Gnp { .. } => "gnp",
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Complete { n }
            | Family::Cycle { n }
            | Family::Path { n }
            | Family::Star { n }
            | Family::Gnp { n, .. } => n,
        }
    }
}

/// Deterministic graph generation. `gnp` draws one `f64` per unordered pair
/// `(u, v)`, `u < v`, in lexicographic order from a ChaCha8 stream seeded with
/// `seed`; the other families ignore the seed.
pub fn generate(family: Family, seed: u64) -> Result<Graph, GraphError> {
    let pairs: Vec<(usize, usize)> = match family {
        Family::Complete { n } => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        Family::Cycle { n } => {
            if n != 0 && n < 3 {
                return Err(GraphError::InvalidParams(format!("cycle needs n >= 3, got {n}")));
            }
            let mut pairs: Vec<_> = (0..n.saturating_sub(1)).map(|u| (u, u + 1)).collect();
            if n >= 3 {
                pairs.push((0, n - 1));
            }
            pairs
        }
        Family::Path { n } => (0..n.saturating_sub(1)).map(|u| (u, u + 1)).collect(),
        Family::Star { n } => (1..n).map(|v| (0, v)).collect(),
        Family::Gnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GraphError::InvalidParams(format!("p must lie in [0, 1], got {p}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen::<f64>() < p {
                        pairs.push((u, v));
                    }
                }
            }
            pairs
        }
    };
    Graph::from_edges(family.vertex_count(), pairs)
}
