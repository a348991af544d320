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

//! Checks and exhaustive oracles for mod-k edge colorings.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coloring::{ColorId, EdgeColoring};
use crate::divisible::{find_k_divisible_subgraph, DivisibleSearch};
use crate::graph::{EdgeId, Graph};

/// Largest edge count accepted by [`exact_chromatic_index_mod_k`].
pub const ORACLE_MAX_EDGES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    #[error("coloring covers {got} edges, graph has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("edge {0} has no color")]
    Partial(EdgeId),
    #[error("exhaustive search limited to {limit} edges, got {got}")]
    TooLarge { got: usize, limit: usize },
    #[error("color budget must be positive")]
    ZeroColors,
    #[error("graph with {vertices} vertices, {edges} edges and no nonempty {k}-divisible subgraph breaks e < 2(12k-6)v")]
    DensityClaimViolated { vertices: usize, edges: usize, k: usize },
}

/// A vertex whose degree in one color class is not `1 (mod k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub color: ColorId,
    pub vertex: usize,
    /// Class degree modulo `k`.
    pub residue: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    /// Sorted by color, then vertex.
    pub violations: Vec<Violation>,
}

/// Checks that every color class has all degrees `1 (mod k)`.
pub fn verify_coloring(g: &Graph, k: usize, c: &EdgeColoring) -> Result<Verdict, VerifyError> {
    if k < 2 {
        return Err(VerifyError::ModulusTooSmall(k));
    }
    if c.assignment.len() != g.edge_count() {
        return Err(VerifyError::LengthMismatch { expected: g.edge_count(), got: c.assignment.len() });
    }
    let mut class_degree: BTreeMap<(ColorId, usize), usize> = BTreeMap::new();
    for e in g.edge_ids() {
        let color = c.color(e).ok_or(VerifyError::Partial(e))?;
        let (u, v) = g.endpoints(e);
        *class_degree.entry((color, u)).or_default() += 1;
        *class_degree.entry((color, v)).or_default() += 1;
    }
    let violations: Vec<Violation> = class_degree
        .into_iter()
        .filter(|&(_, deg)| deg % k != 1)
        .map(|((color, vertex), deg)| Violation { color, vertex, residue: deg % k })
        .collect();
    Ok(Verdict { valid: violations.is_empty(), violations })
}

/// Whether every `C1` class of an engine coloring is a matching. Colorings
/// without palette information pass trivially.
pub fn c1_classes_are_matchings(g: &Graph, c: &EdgeColoring) -> bool {
    let Some(palette) = &c.palette else {
        return true;
    };
    let mut seen = std::collections::HashSet::new();
    for e in g.edge_ids() {
        if let Some(color) = c.color(e).filter(|&col| palette.is_c1(col)) {
            let (u, v) = g.endpoints(e);
            if !seen.insert((color, u)) || !seen.insert((color, v)) {
                return false;
            }
        }
    }
    true
}

struct Oracle<'a> {
    g: &'a Graph,
    k: usize,
    colors: usize,
    // class_degree[v * colors + c]
    class_degree: Vec<usize>,
    open: Vec<usize>,
    assignment: Vec<ColorId>,
}

impl Oracle<'_> {
    /// Edges still needed at `v` to bring every touched class to `1 (mod k)`.
    fn shortfall(&self, v: usize) -> usize {
        let k = self.k;
        self.class_degree[v * self.colors..(v + 1) * self.colors]
            .iter()
            .filter(|&&deg| deg > 0)
            .map(|&deg| (1 + k - deg % k) % k)
            .sum()
    }

    fn place(&mut self, i: usize, used: usize) -> bool {
        if i == self.g.edge_count() {
            return true;
        }
        let (u, v) = self.g.endpoints(EdgeId(i));
        // a new color may only be the next unused one
        for c in 0..self.colors.min(used + 1) {
            self.class_degree[u * self.colors + c] += 1;
            self.class_degree[v * self.colors + c] += 1;
            self.open[u] -= 1;
            self.open[v] -= 1;
            let feasible = self.shortfall(u) <= self.open[u] && self.shortfall(v) <= self.open[v];
            if feasible && self.place(i + 1, used.max(c + 1)) {
                self.assignment[i] = c as ColorId;
                return true;
            }
            self.class_degree[u * self.colors + c] -= 1;
            self.class_degree[v * self.colors + c] -= 1;
            self.open[u] += 1;
            self.open[v] += 1;
        }
        false
    }
}

/// Whether `g` has a mod-k coloring with at most `colors` colors; returns one
/// if so.
fn colorable_with(g: &Graph, k: usize, colors: usize) -> Option<Vec<ColorId>> {
    let n = g.vertex_count();
    let mut oracle = Oracle {
        g,
        k,
        colors,
        class_degree: vec![0; n * colors],
        open: (0..n).map(|v| g.degree(v)).collect(),
        assignment: vec![0; g.edge_count()],
    };
    oracle.place(0, 0).then_some(oracle.assignment)
}

/// Least number of colors, at most `max_colors`, in a mod-k coloring of `g`,
/// with a coloring attaining it. `None` when `max_colors` colors are not
/// enough.
///
/// A budget above `e(g)` is clamped: giving every edge its own color always
/// works.
pub fn exact_chromatic_index_mod_k(
    g: &Graph,
    k: usize,
    max_colors: usize,
) -> Result<Option<EdgeColoring>, VerifyError> {
    if k < 2 {
        return Err(VerifyError::ModulusTooSmall(k));
    }
    if g.edge_count() > ORACLE_MAX_EDGES {
        return Err(VerifyError::TooLarge { got: g.edge_count(), limit: ORACLE_MAX_EDGES });
    }
    if max_colors == 0 {
        return Err(VerifyError::ZeroColors);
    }
    if g.edge_count() == 0 {
        return Ok(Some(EdgeColoring::from_colors(k, Vec::new())));
    }
    for t in 1..=max_colors.min(g.edge_count()) {
        if let Some(colors) = colorable_with(g, k, t) {
            return Ok(Some(EdgeColoring::from_colors(k, colors)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityClaim {
    /// No nonempty k-divisible subgraph exists and `e < 2(12k − 6)v` holds.
    Confirmed,
    /// A nonempty k-divisible subgraph exists, so there is nothing to check.
    Vacuous,
    /// The divisible-subgraph search ran out of budget.
    Inconclusive,
}

/// Checks that a graph without nonempty k-divisible subgraphs has fewer than
/// `2(12k − 6)·v` edges.
pub fn check_density_claim(g: &Graph, k: usize) -> Result<DensityClaim, VerifyError> {
    if k < 2 {
        return Err(VerifyError::ModulusTooSmall(k));
    }
    if g.vertex_count() == 0 {
        return Ok(DensityClaim::Vacuous);
    }
    match find_k_divisible_subgraph(g, k, g.edge_count()).expect("k >= 2") {
        DivisibleSearch::Found(_) => Ok(DensityClaim::Vacuous),
        DivisibleSearch::Inconclusive => Ok(DensityClaim::Inconclusive),
        DivisibleSearch::NoneExists => {
            if g.edge_count() < 2 * (12 * k - 6) * g.vertex_count() {
                Ok(DensityClaim::Confirmed)
            } else {
                Err(VerifyError::DensityClaimViolated {
                    vertices: g.vertex_count(),
                    edges: g.edge_count(),
                    k,
                })
            }
        }
    }
}
