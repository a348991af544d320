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

//! Subgraphs with prescribed degree residues.
//!
//! [`extract_h`] grows an edge set `H` in which every vertex has degree
//! congruent to 1 modulo `k`, closing it under three augmentations until none
//! applies. [`find_k_divisible_subgraph`] searches for a nonempty edge set in
//! which every degree is a multiple of `k`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{EdgeId, Graph};

/// Default edge budget for the divisible-subgraph augmentation.
pub const DEFAULT_SEARCH_BUDGET: usize = 12;

/// Default number of search nodes before a divisible-subgraph search gives up.
pub const DEFAULT_NODE_LIMIT: u64 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisibleError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),
}

/// A nonempty edge set with every incident degree divisible by `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibleSubgraph {
    pub k: usize,
    /// Sorted, nonempty.
    pub edges: Vec<EdgeId>,
}

impl DivisibleSubgraph {
    pub fn is_valid(&self, g: &Graph) -> bool {
        !self.edges.is_empty() && degrees_all(g, &self.edges, |d| d % self.k == 0)
    }
}

fn degrees_all(g: &Graph, edges: &[EdgeId], ok: impl Fn(usize) -> bool) -> bool {
    let mut deg = vec![0usize; g.vertex_count()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.into_iter().all(|d| d == 0 || ok(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisibleSearch {
    Found(DivisibleSubgraph),
    /// The search was exhaustive within the edge budget.
    NoneExists,
    /// The node limit ran out first.
    Inconclusive,
}

/// How far the divisible-subgraph augmentation of [`extract_h`] got.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Maximality {
    /// No k-divisible subgraph with at most `budget` edges is left inside
    /// `G'[V(H)]`.
    Bounded { budget: usize },
    /// A search hit its node limit; divisible pockets of at most `budget`
    /// edges may remain.
    Inconclusive { budget: usize },
}

/// Number of times each augmentation fired.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RuleCounts {
    pub isolated_edge: usize,
    pub k_star: usize,
    pub divisible: usize,
}

/// An edge set in which every covered vertex has degree `1 (mod k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModOneSubgraph {
    pub k: usize,
    /// Sorted.
    pub edges: Vec<EdgeId>,
    /// Sorted; exactly the endpoints of `edges`.
    pub vertices: Vec<usize>,
    pub maximality: Maximality,
    pub rules: RuleCounts,
    in_h: Vec<bool>,
    covered: Vec<bool>,
}

impl ModOneSubgraph {
    #[inline]
    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.in_h[e.0]
    }

    #[inline]
    pub fn covers(&self, v: usize) -> bool {
        self.covered[v]
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut endpoints: Vec<usize> =
            self.edges.iter().flat_map(|&e| <[usize; 2]>::from(g.endpoints(e))).collect();
        endpoints.sort_unstable();
        endpoints.dedup();
        endpoints == self.vertices && degrees_all(g, &self.edges, |d| d % self.k == 1)
    }
}

struct HBuilder<'a> {
    g: &'a Graph,
    k: usize,
    in_h: Vec<bool>,
    degree: Vec<usize>,
    size: usize,
}

impl HBuilder<'_> {
    fn add(&mut self, e: EdgeId) {
        debug_assert!(!self.in_h[e.0]);
        let (u, v) = self.g.endpoints(e);
        self.in_h[e.0] = true;
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.size += 1;
    }

    fn covered(&self, v: usize) -> bool {
        self.degree[v] > 0
    }

    /// Edges with both endpoints outside `V(H)`.
    fn rule_isolated_edges(&mut self) -> usize {
        let mut fired = 0;
        for e in self.g.edge_ids() {
            let (u, v) = self.g.endpoints(e);
            if !self.covered(u) && !self.covered(v) {
                self.add(e);
                fired += 1;
            }
        }
        fired
    }

    /// A covered vertex with `k` or more neighbors outside `V(H)` takes `k` of
    /// them.
    fn rule_k_stars(&mut self) -> usize {
        let mut fired = 0;
        for u in 0..self.g.vertex_count() {
            while self.covered(u) {
                let outside: Vec<EdgeId> = self
                    .g
                    .incident(u)
                    .iter()
                    .filter(|&&(w, _)| !self.covered(w))
                    .map(|&(_, e)| e)
                    .take(self.k)
                    .collect();
                if outside.len() < self.k {
                    break;
                }
                for e in outside {
                    self.add(e);
                }
                fired += 1;
            }
        }
        fired
    }
}

/// Greedy mod-one subgraph.
///
/// On return, with `G' = G − E(H)`: no edge of `G'` lies outside `V(H)`, every
/// vertex of `H` has at most `k − 1` neighbors outside `V(H)`, and
/// [`ModOneSubgraph::maximality`] records whether `G'[V(H)]` was certified free
/// of k-divisible subgraphs with at most `search_budget` edges.
pub fn extract_h(g: &Graph, k: usize, search_budget: usize) -> Result<ModOneSubgraph, DivisibleError> {
    extract_h_with_limit(g, k, search_budget, DEFAULT_NODE_LIMIT)
}

pub fn extract_h_with_limit(
    g: &Graph,
    k: usize,
    search_budget: usize,
    node_limit: u64,
) -> Result<ModOneSubgraph, DivisibleError> {
    if k < 2 {
        return Err(DivisibleError::ModulusTooSmall(k));
    }
    let mut b = HBuilder {
        g,
        k,
        in_h: vec![false; g.edge_count()],
        degree: vec![0; g.vertex_count()],
        size: 0,
    };
    let mut rules = RuleCounts::default();
    let mut maximality = Maximality::Bounded { budget: search_budget };
    loop {
        let before = b.size;
        rules.isolated_edge += b.rule_isolated_edges();
        rules.k_star += b.rule_k_stars();
        if b.size > before {
            continue;
        }
        if search_budget == 0 {
            break;
        }
        let (inner, origin) =
            g.edge_subgraph(|e| !b.in_h[e.0] && { let (u, v) = g.endpoints(e); b.covered(u) && b.covered(v) });
        match find_k_divisible_subgraph_with_limit(&inner, k, search_budget, node_limit)? {
            DivisibleSearch::Found(sub) => {
                for e in sub.edges {
                    b.add(origin[e.0]);
                }
                rules.divisible += 1;
            }
            DivisibleSearch::NoneExists => break,
            DivisibleSearch::Inconclusive => {
                maximality = Maximality::Inconclusive { budget: search_budget };
                break;
            }
        }
        assert!(b.size > before, "augmentation added no edges");
    }
    let edges: Vec<EdgeId> = g.edge_ids().filter(|e| b.in_h[e.0]).collect();
    let covered: Vec<bool> = b.degree.iter().map(|&d| d > 0).collect();
    let vertices = (0..g.vertex_count()).filter(|&v| covered[v]).collect();
    let h = ModOneSubgraph { k, edges, vertices, maximality, rules, in_h: b.in_h, covered };
    debug_assert!(h.is_valid(g));
    Ok(h)
}

/// Searches for a nonempty k-divisible subgraph with at most `max_edges`
/// edges, using [`DEFAULT_NODE_LIMIT`].
pub fn find_k_divisible_subgraph(
    g: &Graph,
    k: usize,
    max_edges: usize,
) -> Result<DivisibleSearch, DivisibleError> {
    find_k_divisible_subgraph_with_limit(g, k, max_edges, DEFAULT_NODE_LIMIT)
}

/// As [`find_k_divisible_subgraph`] with an explicit node limit.
///
/// For `k = 2` the divisible subgraphs are the nonempty even subgraphs, and
/// one with at most `b` edges exists iff the girth is at most `b`; a shortest
/// cycle is returned. For larger `k` the search branches on the edges of a
/// vertex whose degree is not yet a multiple of `k`, restricted to the
/// `k`-core, pruning on residual degree.
pub fn find_k_divisible_subgraph_with_limit(
    g: &Graph,
    k: usize,
    max_edges: usize,
    node_limit: u64,
) -> Result<DivisibleSearch, DivisibleError> {
    if k < 2 {
        return Err(DivisibleError::ModulusTooSmall(k));
    }
    let max_edges = max_edges.min(g.edge_count());
    // every vertex needs degree >= k, hence at least k + 1 vertices
    if max_edges < k * (k + 1) / 2 {
        return Ok(DivisibleSearch::NoneExists);
    }
    let found = if k == 2 {
        shortest_cycle(g).filter(|c| c.len() <= max_edges)
    } else {
        match BranchSearch::new(g, k, max_edges, node_limit).run() {
            Ok(found) => found,
            Err(Exhausted) => return Ok(DivisibleSearch::Inconclusive),
        }
    };
    Ok(match found {
        Some(mut edges) => {
            edges.sort_unstable();
            let sub = DivisibleSubgraph { k, edges };
            assert!(sub.is_valid(g), "search returned a non-divisible edge set");
            DivisibleSearch::Found(sub)
        }
        None => DivisibleSearch::NoneExists,
    })
}

/// Edges of a shortest cycle, if the graph has one.
fn shortest_cycle(g: &Graph) -> Option<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut best: Option<(usize, usize, usize, EdgeId)> = None; // (len, root, u, closing edge)
    let mut dist = vec![usize::MAX; n];
    let mut parent: Vec<Option<EdgeId>> = vec![None; n];
    for root in 0..n {
        if g.degree(root) < 2 {
            continue;
        }
        dist.fill(usize::MAX);
        parent.fill(None);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some((len, ..)) = best {
                if 2 * dist[u] + 1 >= len {
                    break;
                }
            }
            for &(w, e) in g.incident(u) {
                if Some(e) == parent[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = Some(e);
                    queue.push_back(w);
                } else {
                    let len = dist[u] + dist[w] + 1;
                    if best.is_none_or(|(b, ..)| len < b) {
                        best = Some((len, root, u, e));
                    }
                    if len == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if matches!(best, Some((3, ..))) {
            break;
        }
    }
    let (_, root, u, closing) = best?;
    // Rebuild the BFS tree for the winning root and join the two tree paths.
    dist.fill(usize::MAX);
    parent.fill(None);
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(w, e) in g.incident(x) {
            if dist[w] == usize::MAX {
                dist[w] = dist[x] + 1;
                parent[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    let w = g.opposite(closing, u);
    let mut edges = vec![closing];
    for start in [u, w] {
        let mut cur = start;
        while let Some(e) = parent[cur] {
            edges.push(e);
            cur = g.opposite(e, cur);
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Some(edges)
}

#[derive(Debug)]
struct Exhausted;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Undecided,
    In,
    Out,
}

struct BranchSearch<'a> {
    g: &'a Graph,
    k: usize,
    max_edges: usize,
    node_limit: u64,
    nodes: u64,
    status: Vec<Status>,
    degree: Vec<usize>,
    open: Vec<usize>,
    chosen: Vec<EdgeId>,
    touched: Vec<usize>,
}

impl<'a> BranchSearch<'a> {
    fn new(g: &'a Graph, k: usize, max_edges: usize, node_limit: u64) -> Self {
        let n = g.vertex_count();
        // restrict to the k-core: lower-degree vertices cannot reach degree k
        let mut alive = vec![true; n];
        let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < k).collect();
        for &v in &stack {
            alive[v] = false;
        }
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] < k {
                        alive[w] = false;
                        stack.push(w);
                    }
                }
            }
        }
        let status: Vec<Status> = g
            .edges()
            .iter()
            .map(|&(u, v)| if alive[u] && alive[v] { Status::Undecided } else { Status::Out })
            .collect();
        let mut open = vec![0; n];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if status[i] == Status::Undecided {
                open[u] += 1;
                open[v] += 1;
            }
        }
        BranchSearch {
            g,
            k,
            max_edges,
            node_limit,
            nodes: 0,
            status,
            degree: vec![0; n],
            open,
            chosen: Vec::new(),
            touched: Vec::new(),
        }
    }

    fn deficit(&self, v: usize) -> usize {
        (self.k - self.degree[v] % self.k) % self.k
    }

    fn set(&mut self, e: EdgeId, s: Status) {
        debug_assert_eq!(self.status[e.0], Status::Undecided);
        let (u, v) = self.g.endpoints(e);
        self.status[e.0] = s;
        self.open[u] -= 1;
        self.open[v] -= 1;
        if s == Status::In {
            for x in [u, v] {
                if self.degree[x] == 0 {
                    self.touched.push(x);
                }
                self.degree[x] += 1;
            }
            self.chosen.push(e);
        }
    }

    fn unset(&mut self, e: EdgeId) {
        let (u, v) = self.g.endpoints(e);
        if self.status[e.0] == Status::In {
            self.chosen.pop();
            for x in [v, u] {
                self.degree[x] -= 1;
                if self.degree[x] == 0 {
                    let popped = self.touched.pop();
                    debug_assert_eq!(popped, Some(x));
                }
            }
        }
        self.status[e.0] = Status::Undecided;
        self.open[u] += 1;
        self.open[v] += 1;
    }

    fn run(mut self) -> Result<Option<Vec<EdgeId>>, Exhausted> {
        let anchors: Vec<EdgeId> =
            self.g.edge_ids().filter(|e| self.status[e.0] == Status::Undecided).collect();
        for anchor in anchors {
            self.set(anchor, Status::In);
            if self.descend()? {
                return Ok(Some(self.chosen));
            }
            self.unset(anchor);
            // later anchors only look at subgraphs avoiding this edge
            self.set(anchor, Status::Out);
        }
        Ok(None)
    }

    fn descend(&mut self) -> Result<bool, Exhausted> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Exhausted);
        }
        let mut total = 0;
        let mut pick: Option<(usize, usize)> = None; // (open edges, vertex)
        for &v in &self.touched {
            let need = self.deficit(v);
            if need == 0 {
                continue;
            }
            if self.open[v] < need {
                return Ok(false);
            }
            total += need;
            if pick.is_none_or(|(o, _)| self.open[v] < o) {
                pick = Some((self.open[v], v));
            }
        }
        let Some((_, v)) = pick else {
            return Ok(true);
        };
        // each further edge lowers the total deficit by at most two
        if self.chosen.len() + total.div_ceil(2) > self.max_edges {
            return Ok(false);
        }
        let candidates: Vec<EdgeId> = self
            .g
            .incident(v)
            .iter()
            .map(|&(_, e)| e)
            .filter(|e| self.status[e.0] == Status::Undecided)
            .collect();
        for &e in &candidates {
            self.set(e, Status::In);
            if self.descend()? {
                return Ok(true);
            }
            self.unset(e);
            self.set(e, Status::Out);
        }
        for &f in candidates.iter().rev() {
            self.unset(f);
        }
        Ok(false)
    }
}
