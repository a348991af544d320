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

//! Test-only oracles and graph strategies.

#![allow(dead_code)]

use modk::graph::Graph;
use proptest::prelude::*;

/// Random simple graph on `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let chosen = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p);
            Graph::from_edges(n, chosen).unwrap()
        })
    })
}

/// Random simple graph with at most `max_m` edges on at most `max_n` vertices.
pub fn arb_sparse_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |raw| {
            let mut seen = std::collections::HashSet::new();
            let pairs: Vec<(usize, usize)> = raw
                .into_iter()
                .filter(|&(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .filter(|p| seen.insert(*p))
                .collect();
            Graph::from_edges(n, pairs).unwrap()
        })
    })
}

/// `(twice the edges, vertices)` of the densest induced subgraph, by
/// enumerating every vertex subset.
pub fn densest_by_enumeration(g: &Graph) -> (i64, i64) {
    let n = g.vertex_count();
    let mut best = (0i64, 1i64);
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones() as i64;
        let edges = g
            .edges()
            .iter()
            .filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
            .count() as i64;
        // compare 2e/size > best.0/best.1
        if 2 * edges * best.1 > best.0 * size {
            best = (2 * edges, size);
        }
    }
    best
}

/// Whether some orientation has out-degree at most `d`, by trying all `2^m`.
pub fn orientable_by_enumeration(g: &Graph, d: usize) -> bool {
    let m = g.edge_count();
    (0u32..(1u32 << m)).any(|mask| {
        let mut out = vec![0usize; g.vertex_count()];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            out[if mask >> i & 1 == 0 { u } else { v }] += 1;
        }
        out.into_iter().all(|x| x <= d)
    })
}

/// Whether some nonempty edge subset has every degree divisible by `k`.
pub fn has_divisible_subset(g: &Graph, k: usize, max_edges: usize) -> bool {
    let m = g.edge_count();
    (1u32..(1u32 << m)).any(|mask| {
        if mask.count_ones() as usize > max_edges {
            return false;
        }
        let mut deg = vec![0usize; g.vertex_count()];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        deg.into_iter().all(|x| x % k == 0)
    })
}

/// Least number of colors in a mod-k coloring, by enumerating every map from
/// edges to `0..t` for increasing `t`.
pub fn chromatic_index_by_enumeration(g: &Graph, k: usize) -> usize {
    let m = g.edge_count();
    if m == 0 {
        return 0;
    }
    for t in 1..=m {
        let total = t.pow(m as u32);
        for code in 0..total {
            let mut colors = Vec::with_capacity(m);
            let mut x = code;
            for _ in 0..m {
                colors.push(x % t);
                x /= t;
            }
            let mut deg = std::collections::HashMap::new();
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                *deg.entry((colors[i], u)).or_insert(0usize) += 1;
                *deg.entry((colors[i], v)).or_insert(0usize) += 1;
            }
            if deg.values().all(|&d| d % k == 1) {
                return t;
            }
        }
    }
    unreachable!("distinct colors always work")
}
