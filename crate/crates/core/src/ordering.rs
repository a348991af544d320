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

//! Vertex orders in which every vertex has few earlier in-neighbors.
//!
//! If every out-degree is at most `d`, repeatedly deleting a vertex of
//! minimum in-degree and placing it at the back of the order leaves each
//! vertex with at most `d` in-neighbors in front of it: the remaining
//! subgraph has as many in-arcs as out-arcs, so its minimum in-degree never
//! exceeds its maximum out-degree.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::orientation::Orientation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("orientation has out-degree {found} at vertex {vertex}, above the bound {bound}")]
    OutDegreeAboveBound { vertex: usize, found: usize, bound: usize },
    #[error("sequence of length {len} is not a permutation of 0..{n}")]
    NotAPermutation { len: usize, n: usize },
}

/// A permutation of the vertices with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl VertexOrder {
    pub fn new(sequence: Vec<usize>) -> Result<Self, OrderingError> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in sequence.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(OrderingError::NotAPermutation { len: n, n });
            }
            position[v] = i;
        }
        Ok(VertexOrder { sequence, position })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrder { sequence: (0..n).collect(), position: (0..n).collect() }
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

/// Result of [`check_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderCheck {
    pub holds: bool,
    /// Largest number of in-neighbors placed before their head.
    pub worst: usize,
}

/// Builds the order by minimum in-degree peeling, filling positions from the
/// back. Ties go to the lowest vertex id.
pub fn elimination_order(o: &Orientation<'_>, d: usize) -> Result<VertexOrder, OrderingError> {
    let g = o.graph();
    let n = g.vertex_count();
    if let Some(v) = (0..n).find(|&v| o.out_degree(v) > d) {
        return Err(OrderingError::OutDegreeAboveBound { vertex: v, found: o.out_degree(v), bound: d });
    }
    let mut in_degree: Vec<usize> = (0..n).map(|v| o.in_degree(v)).collect();
    let top = in_degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); top + 1];
    for v in 0..n {
        buckets[in_degree[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut sequence = vec![0; n];
    let mut low = 0;
    for slot in (0..n).rev() {
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().expect("nonempty bucket");
        assert!(
            in_degree[v] <= d,
            "peeling picked vertex {v} with remaining in-degree {} > {d}",
            in_degree[v]
        );
        removed[v] = true;
        sequence[slot] = v;
        for (w, _) in o.out_edges(v) {
            if removed[w] {
                continue;
            }
            buckets[in_degree[w]].remove(&w);
            in_degree[w] -= 1;
            buckets[in_degree[w]].insert(w);
            low = low.min(in_degree[w]);
        }
    }
    VertexOrder::new(sequence)
}

/// Counts, for every vertex, the in-neighbors that precede it in `order`.
pub fn check_order(o: &Orientation<'_>, order: &VertexOrder, d: usize) -> OrderCheck {
    let g = o.graph();
    assert_eq!(order.len(), g.vertex_count(), "order does not cover the graph");
    let mut earlier = vec![0; g.vertex_count()];
    for e in g.edge_ids() {
        let (t, h) = (o.tail(e), o.head(e));
        if order.position(t) < order.position(h) {
            earlier[h] += 1;
        }
    }
    let worst = earlier.into_iter().max().unwrap_or(0);
    OrderCheck { holds: worst <= d, worst }
}
