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

//! Orientations with bounded out-degree.
//!
//! A graph has an orientation with maximum out-degree at most `d` exactly when
//! its maximum average degree is at most `2d`. [`orient_with_bound`] makes
//! this constructive: it starts from a fixed orientation and reverses directed
//! paths from overloaded vertices to underloaded ones. When no such path
//! exists, the set reachable from the overloaded vertex is a dense-set
//! certificate.

use std::collections::VecDeque;

use thiserror::Error;

use crate::density::{ceil_nonneg, mad_exact};
use crate::graph::{EdgeId, Graph};

/// A vertex set `S` with `e(G[S]) > d·|S|`, which rules out every orientation
/// with out-degree at most `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSet {
    pub vertices: Vec<usize>,
    pub induced_edges: usize,
    pub bound: usize,
}

impl DenseSet {
    /// Recounts the induced edges and checks `e(G[S]) > d·|S|`.
    pub fn certifies(&self, g: &Graph) -> bool {
        let mut member = vec![false; g.vertex_count()];
        for &v in &self.vertices {
            member[v] = true;
        }
        let e = g.induced_edge_count(&member);
        e == self.induced_edges && e > self.bound * self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("out-degree bound must be positive")]
    ZeroBound,
    #[error(
        "no orientation with out-degree <= {}: {} vertices span {} edges",
        .0.bound, .0.vertices.len(), .0.induced_edges
    )]
    Infeasible(DenseSet),
    #[error("vertex {vertex} is not an endpoint of edge {edge}")]
    NotAnEndpoint { edge: EdgeId, vertex: usize },
    #[error("expected {expected} edge directions, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// A direction for every edge of a borrowed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation<'g> {
    graph: &'g Graph,
    // true: smaller endpoint is the tail
    forward: Vec<bool>,
    out_degree: Vec<usize>,
}

impl<'g> Orientation<'g> {
    /// Every edge points from its smaller endpoint to its larger one.
    pub fn canonical(graph: &'g Graph) -> Self {
        let mut out_degree = vec![0; graph.vertex_count()];
        for &(u, _) in graph.edges() {
            out_degree[u] += 1;
        }
        Orientation { graph, forward: vec![true; graph.edge_count()], out_degree }
    }

    /// Orientation given by the tail of each edge, indexed by edge id.
    pub fn from_tails(graph: &'g Graph, tails: &[usize]) -> Result<Self, OrientationError> {
        if tails.len() != graph.edge_count() {
            return Err(OrientationError::LengthMismatch {
                expected: graph.edge_count(),
                got: tails.len(),
            });
        }
        let mut o = Orientation::canonical(graph);
        for (i, &t) in tails.iter().enumerate() {
            let e = EdgeId(i);
            let (u, v) = graph.endpoints(e);
            if t == v {
                o.reverse(e);
            } else if t != u {
                return Err(OrientationError::NotAnEndpoint { edge: e, vertex: t });
            }
        }
        Ok(o)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    #[inline]
    pub fn tail(&self, e: EdgeId) -> usize {
        let (u, v) = self.graph.endpoints(e);
        if self.forward[e.0] {
            u
        } else {
            v
        }
    }

    #[inline]
    pub fn head(&self, e: EdgeId) -> usize {
        let (u, v) = self.graph.endpoints(e);
        if self.forward[e.0] {
            v
        } else {
            u
        }
    }

    pub fn reverse(&mut self, e: EdgeId) {
        let t = self.tail(e);
        let h = self.head(e);
        self.forward[e.0] = !self.forward[e.0];
        self.out_degree[t] -= 1;
        self.out_degree[h] += 1;
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_degree[v]
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.graph.degree(v) - self.out_degree[v]
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_degree.iter().copied().max().unwrap_or(0)
    }

    /// `(head, edge)` for every edge leaving `v`.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, EdgeId)> + '_ {
        self.graph.incident(v).iter().copied().filter(move |&(_, e)| self.tail(e) == v)
    }

    /// `(tail, edge)` for every edge entering `v`.
    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = (usize, EdgeId)> + '_ {
        self.graph.incident(v).iter().copied().filter(move |&(_, e)| self.head(e) == v)
    }

    /// `(tail, head)` per edge id.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph.edge_ids().map(|e| (self.tail(e), self.head(e)))
    }

    pub fn tails(&self) -> Vec<usize> {
        self.graph.edge_ids().map(|e| self.tail(e)).collect()
    }

    /// Whether the cached out-degrees agree with a recount.
    pub fn is_consistent(&self) -> bool {
        let mut count = vec![0; self.graph.vertex_count()];
        for e in self.graph.edge_ids() {
            count[self.tail(e)] += 1;
        }
        count == self.out_degree
    }
}

/// Breadth-first search along out-edges from `start` for a vertex of
/// out-degree below `d`. Returns the edge path, or the reachable set when none
/// exists.
fn find_relief_path(o: &Orientation<'_>, start: usize, d: usize) -> Result<Vec<EdgeId>, Vec<usize>> {
    let n = o.graph.vertex_count();
    let mut parent: Vec<Option<EdgeId>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for (w, e) in o.out_edges(v) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some(e);
            order.push(w);
            if o.out_degree(w) < d {
                let mut path = Vec::new();
                let mut cur = w;
                while let Some(e) = parent[cur] {
                    path.push(e);
                    cur = o.tail(e);
                }
                return Ok(path);
            }
            queue.push_back(w);
        }
    }
    order.sort_unstable();
    Err(order)
}

/// Orientation of `g` with out-degree at most `d`, or a dense vertex set
/// proving that none exists.
pub fn orient_with_bound(g: &Graph, d: usize) -> Result<Orientation<'_>, OrientationError> {
    if d == 0 {
        return Err(OrientationError::ZeroBound);
    }
    let mut o = Orientation::canonical(g);
    for x in 0..g.vertex_count() {
        while o.out_degree(x) > d {
            match find_relief_path(&o, x, d) {
                Ok(path) => {
                    for e in path {
                        o.reverse(e);
                    }
                }
                Err(reachable) => {
                    let mut member = vec![false; g.vertex_count()];
                    for &v in &reachable {
                        member[v] = true;
                    }
                    let set = DenseSet {
                        induced_edges: g.induced_edge_count(&member),
                        vertices: reachable,
                        bound: d,
                    };
                    debug_assert!(set.certifies(g));
                    return Err(OrientationError::Infeasible(set));
                }
            }
        }
    }
    debug_assert!(o.is_consistent());
    Ok(o)
}

/// Smallest achievable maximum out-degree, `ceil(mad(g) / 2)`, together with
/// an orientation attaining it.
pub fn min_outdegree_orientation(g: &Graph) -> (usize, Orientation<'_>) {
    if g.edge_count() == 0 {
        return (0, Orientation::canonical(g));
    }
    let mad = mad_exact(g).expect("graph with edges has vertices").density;
    let d = ceil_nonneg(&(mad / 2)) as usize;
    let o = orient_with_bound(g, d).expect("ceil(mad/2) is always feasible");
    (d, o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn four_cycle_becomes_directed() {
        let c4 = generate(Family::Cycle { n: 4 }, 0).unwrap();
        let o = orient_with_bound(&c4, 1).unwrap();
        assert!((0..4).all(|v| o.out_degree(v) == 1 && o.in_degree(v) == 1));
    }

    #[test]
    fn k4_needs_two() {
        let k4 = generate(Family::Complete { n: 4 }, 0).unwrap();
        match orient_with_bound(&k4, 1) {
            Err(OrientationError::Infeasible(set)) => {
                assert_eq!(set.vertices, vec![0, 1, 2, 3]);
                assert_eq!(set.induced_edges, 6);
                assert!(set.certifies(&k4));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        let o = orient_with_bound(&k4, 2).unwrap();
        assert!(o.max_out_degree() <= 2);
        assert!(o.is_consistent());
    }

    #[test]
    fn minimal_bounds() {
        let p4 = generate(Family::Path { n: 4 }, 0).unwrap();
        assert_eq!(min_outdegree_orientation(&p4).0, 1);
        let k4 = generate(Family::Complete { n: 4 }, 0).unwrap();
        let (d, o) = min_outdegree_orientation(&k4);
        assert_eq!(d, 2);
        assert_eq!(o.max_out_degree(), 2);
        let empty = Graph::empty(3);
        assert_eq!(min_outdegree_orientation(&empty).0, 0);
    }

    #[test]
    fn zero_bound_rejected() {
        let k2 = generate(Family::Complete { n: 2 }, 0).unwrap();
        assert_eq!(orient_with_bound(&k2, 0), Err(OrientationError::ZeroBound));
    }

    #[test]
    fn explicit_tails() {
        let p3 = generate(Family::Path { n: 3 }, 0).unwrap();
        let o = Orientation::from_tails(&p3, &[1, 1]).unwrap();
        assert_eq!(o.out_degree(1), 2);
        assert_eq!(o.arcs().collect::<Vec<_>>(), vec![(1, 0), (1, 2)]);
        assert_eq!(o.in_edges(0).count(), 1);
        assert!(Orientation::from_tails(&p3, &[2, 1]).is_err());
        assert!(Orientation::from_tails(&p3, &[1]).is_err());
    }
}
