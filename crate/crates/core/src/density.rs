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

//! Exact maximum average degree.
//!
//! `mad(G)` is the largest value of `2 e(S) / |S|` over nonempty vertex sets
//! `S`, where `e(S)` counts edges of the induced subgraph. The exact routine
//! binary-searches the finite set of possible values `e / v` (with `v <= n`)
//! and decides each threshold with a max-closure min-cut.

use num_rational::Ratio;
use thiserror::Error;

use crate::flow::{FlowNetwork, INF};
use crate::graph::Graph;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = Ratio<i64>;

/// Largest vertex count accepted by [`mad_brute`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("maximum average degree is undefined on a graph with no vertices")]
    NoVertices,
    #[error("brute-force density search limited to {limit} vertices, got {got}")]
    TooLarge { got: usize, limit: usize },
}

/// A vertex set together with the average degree of the subgraph it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitness {
    /// Sorted, nonempty.
    pub vertices: Vec<usize>,
    /// `2 e(G[vertices]) / |vertices|`.
    pub density: Rational,
}

/// Average degree `2 e(G[S]) / |S|` of the subgraph induced by `vertices`.
pub fn average_degree(g: &Graph, vertices: &[usize]) -> Rational {
    assert!(!vertices.is_empty(), "average degree of an empty vertex set");
    let mut member = vec![false; g.vertex_count()];
    for &v in vertices {
        member[v] = true;
    }
    Rational::new(2 * g.induced_edge_count(&member) as i64, vertices.len() as i64)
}

/// Formats as `p/q`, including a denominator of one.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `ceil(r)` for a non-negative rational.
pub fn ceil_nonneg(r: &Rational) -> i64 {
    let (p, q) = (*r.numer(), *r.denom());
    debug_assert!(p >= 0 && q > 0);
    (p + q - 1) / q
}

/// Solves `max_S q·e(S) − p·|S|` as a closure problem. Returns the optimum and
/// the largest optimal vertex set.
fn max_closure(g: &Graph, threshold: &Rational) -> (i64, Vec<bool>) {
    let (p, q) = (*threshold.numer(), *threshold.denom());
    let m = g.edge_count();
    let n = g.vertex_count();
    let (source, sink) = (0, 1);
    let edge_node = |i: usize| 2 + i;
    let vertex_node = |v: usize| 2 + m + v;
    let mut net = FlowNetwork::new(2 + m + n);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        net.add_arc(source, edge_node(i), q);
        net.add_arc(edge_node(i), vertex_node(u), INF);
        net.add_arc(edge_node(i), vertex_node(v), INF);
    }
    for v in 0..n {
        net.add_arc(vertex_node(v), sink, p);
    }
    let cut = net.max_flow(source, sink);
    let reach = net.reaches_sink(sink);
    let chosen = (0..n).map(|v| !reach[vertex_node(v)]).collect();
    (q * m as i64 - cut, chosen)
}

/// Every value `e / v` that an induced subgraph of `g` could have.
fn candidate_ratios(g: &Graph) -> Vec<Rational> {
    let m = g.edge_count();
    let mut out = Vec::new();
    for v in 1..=g.vertex_count() {
        let max_e = m.min(v * (v - 1) / 2);
        for e in 0..=max_e {
            out.push(Rational::new(e as i64, v as i64));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Exact maximum average degree with a witness vertex set.
///
/// On ties the witness is the largest optimal set, i.e. the union of all
/// densest induced subgraphs. Edgeless graphs return every vertex with
/// density zero.
pub fn mad_exact(g: &Graph) -> Result<DensityWitness, DensityError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(DensityError::NoVertices);
    }
    if g.edge_count() == 0 {
        return Ok(DensityWitness { vertices: (0..n).collect(), density: Rational::from_integer(0) });
    }
    let candidates = candidate_ratios(g);
    // First candidate at which no set beats the ratio strictly; that ratio is
    // the optimum e/v.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if max_closure(g, &candidates[mid]).0 > 0 {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let best = candidates[lo];
    let (value, chosen) = max_closure(g, &best);
    debug_assert_eq!(value, 0);
    let vertices: Vec<usize> = (0..n).filter(|&v| chosen[v]).collect();
    let density = best * 2;
    assert!(!vertices.is_empty(), "densest-subgraph witness is empty at ratio {best}");
    assert_eq!(average_degree(g, &vertices), density, "witness does not attain the optimum");
    Ok(DensityWitness { vertices, density })
}

/// Exhaustive maximum average degree over all `2^n − 1` vertex sets.
pub fn mad_brute(g: &Graph) -> Result<Rational, DensityError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(DensityError::TooLarge { got: n, limit: BRUTE_FORCE_MAX_VERTICES });
    }
    if n == 0 {
        return Err(DensityError::NoVertices);
    }
    let mut nbr = vec![0u32; n];
    for &(u, v) in g.edges() {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    let mut best = Rational::from_integer(0);
    for set in 1u32..(1u32 << n) {
        let mut twice_edges = 0u32;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            twice_edges += (nbr[v] & set).count_ones();
            rest &= rest - 1;
        }
        let d = Rational::new(twice_edges as i64, set.count_ones() as i64);
        if d > best {
            best = d;
        }
    }
    Ok(best)
}
