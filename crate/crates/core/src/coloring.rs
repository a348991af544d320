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

//! Two-palette greedy mod-k edge coloring.
//!
//! Given an orientation with out-degree at most `d` and a vertex order in
//! which every vertex has at most `d` earlier in-neighbors, the engine visits
//! vertices in order and colors each vertex's still-uncolored edges:
//!
//! * out-edges get pairwise distinct colors from `C1` (`3d − 1` colors), so
//!   every `C1` class is a matching;
//! * in-edges get colors from `C2` (`4d + 2k − 2` colors). The colors on the
//!   vertex's already colored out-edges are set aside, the lowest `d + k` of
//!   the rest form pool `A` and the remainder pool `B`. Edges take `A` colors
//!   in groups whose sizes are `1 (mod k)` for as long as that is possible;
//!   the leftovers (fewer than `d + k`) get distinct `B` colors.
//!
//! An in-edge `u → v` colored while processing `v` must avoid every color
//! already on an out-edge of `u`, so each `C2` class has degree one at its
//! tails and degree `1 (mod k)` at its head. In total at most `7d + 2k − 3`
//! colors are used.
//!
//! [`color_graph`] runs the full pipeline: peel off a mod-one subgraph `H`,
//! orient and order the rest, run the engine, and give `E(H)` one extra color.

use std::fmt::Write as _;
use std::ops::Range;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::divisible::{extract_h, DivisibleError, Maximality, DEFAULT_SEARCH_BUDGET};
use crate::graph::{EdgeId, Graph};
use crate::ordering::{check_order, elimination_order, OrderingError, VertexOrder};
use crate::orientation::{min_outdegree_orientation, orient_with_bound, Orientation, OrientationError};
use crate::verification::{verify_coloring, VerifyError};

pub type ColorId = u32;

/// Color index layout used by the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    pub d: usize,
    pub k: usize,
    pub c1: Range<ColorId>,
    pub c2: Range<ColorId>,
    /// The extra color given to the mod-one subgraph, if any.
    pub h_color: Option<ColorId>,
}

impl Palette {
    /// `C1 = 0 .. 3d−1`, `C2 = 3d−1 .. 7d+2k−3`. Empty when `d = 0`.
    pub fn for_bound(d: usize, k: usize) -> Self {
        if d == 0 {
            return Palette { d, k, c1: 0..0, c2: 0..0, h_color: None };
        }
        let c1_end = (3 * d - 1) as ColorId;
        let c2_end = (7 * d + 2 * k - 3) as ColorId;
        Palette { d, k, c1: 0..c1_end, c2: c1_end..c2_end, h_color: None }
    }

    /// Number of engine colors, `|C1| + |C2|`.
    pub fn engine_size(&self) -> usize {
        (self.c2.end - self.c1.start) as usize
    }

    pub fn is_c1(&self, c: ColorId) -> bool {
        self.c1.contains(&c)
    }
}

/// An assignment of colors to edges, possibly partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub k: usize,
    pub assignment: Vec<Option<ColorId>>,
    pub palette: Option<Palette>,
}

impl EdgeColoring {
    pub fn uncolored(k: usize, edge_count: usize) -> Self {
        EdgeColoring { k, assignment: vec![None; edge_count], palette: None }
    }

    pub fn from_colors(k: usize, colors: Vec<ColorId>) -> Self {
        EdgeColoring { k, assignment: colors.into_iter().map(Some).collect(), palette: None }
    }

    #[inline]
    pub fn color(&self, e: EdgeId) -> Option<ColorId> {
        self.assignment[e.0]
    }

    pub fn is_complete(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    /// Sorted distinct colors in use.
    pub fn distinct_colors(&self) -> Vec<ColorId> {
        let mut colors: Vec<ColorId> = self.assignment.iter().flatten().copied().collect();
        colors.sort_unstable();
        colors.dedup();
        colors
    }

    pub fn colors_used(&self) -> usize {
        self.distinct_colors().len()
    }
}

/// Counters gathered while the engine runs. The `max_*` fields record the
/// tightest margin seen against each counting bound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub vertices_processed: usize,
    pub out_edges_colored: usize,
    pub pooled_edges_colored: usize,
    pub leftover_edges_colored: usize,
    /// Most `C1` colors blocked for one out-edge; must stay below `3d − 1`.
    pub max_c1_blocked: usize,
    /// Largest leftover set; must stay below `d + k`.
    pub max_leftover: usize,
    /// Most `B` colors blocked for one leftover edge; must stay below `|B|`.
    pub max_b_blocked: usize,
    /// Smallest `B` pool seen.
    pub min_b_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    #[error("out-degree bound must be positive")]
    ZeroBound,
    #[error("orientation belongs to a different graph")]
    GraphMismatch,
    #[error("orientation has out-degree {found}, above the bound {bound}")]
    OutDegreeAboveBound { found: usize, bound: usize },
    #[error("vertex order covers {got} vertices, graph has {expected}")]
    OrderLength { expected: usize, got: usize },
    #[error("vertex order lets {worst} in-neighbors precede a vertex, bound is {bound}")]
    OrderViolatesBound { worst: usize, bound: usize },
    #[error(transparent)]
    Orientation(#[from] OrientationError),
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error(transparent)]
    Divisible(#[from] DivisibleError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("engine invariant failed at vertex {vertex}: {what}\n{dump}")]
    Invariant { vertex: usize, what: String, dump: String },
    #[error("pipeline produced an invalid coloring ({violations} class-degree violations)")]
    InvalidResult { violations: usize },
}

/// Per-vertex color membership over a fixed palette.
struct ColorSets {
    width: usize,
    bits: Vec<bool>,
}

impl ColorSets {
    fn new(vertices: usize, width: usize) -> Self {
        ColorSets { width, bits: vec![false; vertices * width] }
    }

    #[inline]
    fn has(&self, v: usize, c: ColorId) -> bool {
        self.bits[v * self.width + c as usize]
    }

    #[inline]
    fn insert(&mut self, v: usize, c: ColorId) {
        self.bits[v * self.width + c as usize] = true;
    }

    fn members(&self, v: usize, range: Range<ColorId>) -> Vec<ColorId> {
        range.filter(|&c| self.has(v, c)).collect()
    }
}

struct Engine<'a, 'g> {
    o: &'a Orientation<'g>,
    k: usize,
    d: usize,
    palette: Palette,
    color: Vec<Option<ColorId>>,
    processed: Vec<bool>,
    // colors on each vertex's colored out-edges: the "forbidden" colors
    out_colors: ColorSets,
    // C1 colors on each vertex's colored in-edges
    c1_in: ColorSets,
    stats: EngineStats,
}

impl<'a, 'g> Engine<'a, 'g> {
    fn new(o: &'a Orientation<'g>, k: usize, d: usize) -> Self {
        let g = o.graph();
        let palette = Palette::for_bound(d, k);
        let n = g.vertex_count();
        Engine {
            o,
            k,
            d,
            color: vec![None; g.edge_count()],
            processed: vec![false; n],
            out_colors: ColorSets::new(n, palette.engine_size()),
            c1_in: ColorSets::new(n, palette.c1.end as usize),
            palette,
            stats: EngineStats::default(),
        }
    }

    fn invariant(&self, v: usize, what: String) -> ColoringError {
        let g = self.o.graph();
        let mut dump = String::new();
        let _ = writeln!(dump, "k={} d={} |C1|={} |C2|={}", self.k, self.d, self.palette.c1.len(), self.palette.c2.len());
        let _ = writeln!(dump, "processed so far: {}", self.stats.vertices_processed);
        for &(w, e) in g.incident(v) {
            let dir = if self.o.tail(e) == v { "->" } else { "<-" };
            let _ = writeln!(
                dump,
                "  {v} {dir} {w} color={:?} processed={} forbidden_at_{w}={:?}",
                self.color[e.0],
                self.processed[w],
                self.out_colors.members(w, self.palette.c1.start..self.palette.c2.end)
            );
        }
        ColoringError::Invariant { vertex: v, what, dump }
    }

    fn assign(&mut self, e: EdgeId, c: ColorId) {
        debug_assert!(self.color[e.0].is_none());
        let (tail, head) = (self.o.tail(e), self.o.head(e));
        self.color[e.0] = Some(c);
        self.out_colors.insert(tail, c);
        if self.palette.is_c1(c) {
            self.c1_in.insert(head, c);
        }
    }

    fn process(&mut self, v: usize) -> Result<(), ColoringError> {
        self.color_out_edges(v)?;
        self.color_in_edges(v)?;
        self.processed[v] = true;
        self.stats.vertices_processed += 1;
        Ok(())
    }

    /// Uncolored out-edges of `v` take distinct `C1` colors absent at both
    /// endpoints.
    fn color_out_edges(&mut self, v: usize) -> Result<(), ColoringError> {
        let targets: Vec<(usize, EdgeId)> =
            self.o.out_edges(v).filter(|&(_, e)| self.color[e.0].is_none()).collect();
        for (w, e) in targets {
            if self.processed[w] {
                return Err(self.invariant(v, format!("out-edge to processed vertex {w} is uncolored")));
            }
            let c1 = self.palette.c1.clone();
            // C1 colors at v are its colored in-edges plus out-edges colored in this step
            let blocked = c1
                .clone()
                .filter(|&c| self.c1_in.has(v, c) || self.out_colors.has(v, c) || self.c1_in.has(w, c))
                .count();
            self.stats.max_c1_blocked = self.stats.max_c1_blocked.max(blocked);
            let pick = c1
                .clone()
                .find(|&c| !self.c1_in.has(v, c) && !self.out_colors.has(v, c) && !self.c1_in.has(w, c));
            let Some(c) = pick else {
                return Err(self.invariant(
                    v,
                    format!("no C1 color left for out-edge {v}->{w} ({blocked} of {} blocked)", c1.len()),
                ));
            };
            self.assign(e, c);
            self.stats.out_edges_colored += 1;
        }
        Ok(())
    }

    /// Uncolored in-edges of `v`: pooled `A` colors in groups of size
    /// `1 (mod k)`, then distinct `B` colors.
    fn color_in_edges(&mut self, v: usize) -> Result<(), ColoringError> {
        let mut pending: Vec<(usize, EdgeId)> =
            self.o.in_edges(v).filter(|&(_, e)| self.color[e.0].is_none()).collect();
        if pending.is_empty() {
            return Ok(());
        }
        if let Some(&(u, _)) = pending.iter().find(|&&(u, _)| self.processed[u]) {
            return Err(self.invariant(v, format!("in-edge from processed vertex {u} is uncolored")));
        }
        let (d, k) = (self.d, self.k);
        let left: Vec<ColorId> =
            self.palette.c2.clone().filter(|&c| !self.out_colors.has(v, c)).collect();
        if left.len() < 3 * d + 2 * k - 2 {
            return Err(self.invariant(v, format!("only {} C2 colors left after removing out-edge colors", left.len())));
        }
        let (pool_a, pool_b) = left.split_at(d + k);
        let mut group_size = vec![0usize; pool_a.len()];

        // Start new groups: one edge on an unused pool color free at its tail.
        let mut rest = Vec::with_capacity(pending.len());
        for (u, e) in pending.drain(..) {
            let slot = (0..pool_a.len()).find(|&i| group_size[i] == 0 && !self.out_colors.has(u, pool_a[i]));
            match slot {
                Some(i) => {
                    self.assign(e, pool_a[i]);
                    group_size[i] = 1;
                }
                None => rest.push((u, e)),
            }
        }
        pending = rest;
        // Grow existing groups by exactly k edges at a time.
        'grow: loop {
            for i in 0..pool_a.len() {
                if group_size[i] == 0 {
                    continue;
                }
                let c = pool_a[i];
                let free: Vec<usize> = (0..pending.len())
                    .filter(|&j| !self.out_colors.has(pending[j].0, c))
                    .take(k)
                    .collect();
                if free.len() == k {
                    for &j in free.iter().rev() {
                        let (_, e) = pending.remove(j);
                        self.assign(e, c);
                    }
                    group_size[i] += k;
                    continue 'grow;
                }
            }
            break;
        }
        let pooled: usize = group_size.iter().sum();
        self.stats.pooled_edges_colored += pooled;
        debug_assert!(group_size.iter().all(|&s| s == 0 || s % k == 1 % k));

        self.stats.max_leftover = self.stats.max_leftover.max(pending.len());
        if pending.len() >= d + k {
            return Err(self.invariant(v, format!("{} leftover in-edges, bound is d+k-1 = {}", pending.len(), d + k - 1)));
        }
        self.stats.min_b_size = Some(self.stats.min_b_size.map_or(pool_b.len(), |m| m.min(pool_b.len())));

        let mut taken = vec![false; pool_b.len()];
        for (u, e) in pending {
            let blocked = (0..pool_b.len()).filter(|&i| taken[i] || self.out_colors.has(u, pool_b[i])).count();
            self.stats.max_b_blocked = self.stats.max_b_blocked.max(blocked);
            let Some(i) = (0..pool_b.len()).find(|&i| !taken[i] && !self.out_colors.has(u, pool_b[i])) else {
                return Err(self.invariant(
                    v,
                    format!("no B color for in-edge {u}->{v} ({blocked} of {} blocked)", pool_b.len()),
                ));
            };
            taken[i] = true;
            self.assign(e, pool_b[i]);
            self.stats.leftover_edges_colored += 1;
        }
        Ok(())
    }
}

/// Colors `g` with at most `7d + 2k − 3` colors, following `order`.
pub fn color_with_orientation(
    g: &Graph,
    k: usize,
    o: &Orientation<'_>,
    d: usize,
    order: &VertexOrder,
) -> Result<EdgeColoring, ColoringError> {
    color_with_orientation_traced(g, k, o, d, order).map(|(c, _)| c)
}

/// [`color_with_orientation`] that also returns the engine counters.
pub fn color_with_orientation_traced(
    g: &Graph,
    k: usize,
    o: &Orientation<'_>,
    d: usize,
    order: &VertexOrder,
) -> Result<(EdgeColoring, EngineStats), ColoringError> {
    if k < 2 {
        return Err(ColoringError::ModulusTooSmall(k));
    }
    if d == 0 {
        return Err(ColoringError::ZeroBound);
    }
    if !std::ptr::eq(o.graph(), g) && o.graph() != g {
        return Err(ColoringError::GraphMismatch);
    }
    if o.max_out_degree() > d {
        return Err(ColoringError::OutDegreeAboveBound { found: o.max_out_degree(), bound: d });
    }
    if order.len() != g.vertex_count() {
        return Err(ColoringError::OrderLength { expected: g.vertex_count(), got: order.len() });
    }
    let check = check_order(o, order, d);
    if !check.holds {
        return Err(ColoringError::OrderViolatesBound { worst: check.worst, bound: d });
    }

    let mut engine = Engine::new(o, k, d);
    for &v in order.sequence() {
        // vertices whose edges are all colored already need no step
        if g.incident(v).iter().all(|&(_, e)| engine.color[e.0].is_some()) {
            engine.processed[v] = true;
            continue;
        }
        engine.process(v)?;
    }
    if let Some(i) = engine.color.iter().position(Option::is_none) {
        let (u, _) = g.endpoints(EdgeId(i));
        return Err(engine.invariant(u, format!("edge {} left uncolored", EdgeId(i))));
    }
    let coloring = EdgeColoring { k, assignment: engine.color, palette: Some(engine.palette) };
    Ok((coloring, engine.stats))
}

/// How the remainder `G' = G − E(H)` is oriented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Smallest feasible out-degree bound, `ceil(mad(G') / 2)`.
    #[default]
    MinimalD,
    /// Out-degree `24k − 12` inside `V(H)`, cross edges pointing out of
    /// `V(H)`, and the engine run with `d = 25k − 13`.
    Theorem,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::MinimalD => "minimal_d",
            Mode::Theorem => "theorem",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal_d" => Ok(Mode::MinimalD),
            "theorem" | "theorem_mode" => Ok(Mode::Theorem),
            other => Err(format!("unknown mode `{other}` (expected minimal_d or theorem)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub extract_h: Duration,
    pub orient: Duration,
    pub order: Duration,
    pub color: Duration,
    pub verify: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.extract_h + self.orient + self.order + self.color + self.verify
    }
}

/// Summary of one [`color_graph`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub k: usize,
    pub mode: Mode,
    pub d_used: usize,
    pub c1_size: usize,
    pub c2_size: usize,
    pub colors_used: usize,
    /// Colors on `G' = G − E(H)` alone.
    pub remainder_colors_used: usize,
    pub h_edge_count: usize,
    pub h_vertex_count: usize,
    pub h_maximality: Maximality,
    /// `7d + 2k − 3` (zero when `G'` is empty), plus one if `H` is nonempty.
    pub lemma_bound: usize,
    /// `177k − 93`.
    pub theorem_bound: usize,
    /// Whether `d_used <= 25k − 13`.
    pub theorem_applicable: bool,
    pub engine: EngineStats,
    pub timings: StageTimings,
}

pub fn lemma_bound(d: usize, k: usize) -> usize {
    if d == 0 {
        0
    } else {
        7 * d + 2 * k - 3
    }
}

pub fn theorem_bound(k: usize) -> usize {
    177 * k - 93
}

/// Orients `G'` as in [`Mode::Theorem`].
fn theorem_orientation<'g>(
    remainder: &'g Graph,
    h: &crate::divisible::ModOneSubgraph,
    k: usize,
) -> Result<Orientation<'g>, ColoringError> {
    let inside = |e: EdgeId| {
        let (u, v) = remainder.endpoints(e);
        h.covers(u) && h.covers(v)
    };
    let (inner, inner_origin) = remainder.edge_subgraph(inside);
    let inner_o = orient_with_bound(&inner, 24 * k - 12)?;
    let mut tails: Vec<usize> = remainder
        .edge_ids()
        .map(|e| {
            let (u, v) = remainder.endpoints(e);
            assert!(h.covers(u) || h.covers(v), "edge {u} {v} of G' lies outside V(H)");
            if h.covers(u) {
                u
            } else {
                v
            }
        })
        .collect();
    for (i, &e) in inner_origin.iter().enumerate() {
        tails[e.0] = inner_o.tail(EdgeId(i));
    }
    Ok(Orientation::from_tails(remainder, &tails)?)
}

/// Full pipeline: mod-one subgraph, orientation, order, engine, extra color.
/// The result is verified before it is returned.
pub fn color_graph(g: &Graph, k: usize, mode: Mode) -> Result<(EdgeColoring, PipelineReport), ColoringError> {
    if k < 2 {
        return Err(ColoringError::ModulusTooSmall(k));
    }
    let mut timings = StageTimings::default();
    let clock = Instant::now();
    let h = extract_h(g, k, DEFAULT_SEARCH_BUDGET)?;
    timings.extract_h = clock.elapsed();

    let (remainder, origin) = g.edge_subgraph(|e| !h.contains_edge(e));
    let clock = Instant::now();
    let (d, o) = if remainder.edge_count() == 0 {
        (0, Orientation::canonical(&remainder))
    } else {
        match mode {
            Mode::MinimalD => {
                let (d, o) = min_outdegree_orientation(&remainder);
                (d.max(1), o)
            }
            Mode::Theorem => (25 * k - 13, theorem_orientation(&remainder, &h, k)?),
        }
    };
    timings.orient = clock.elapsed();
    if o.max_out_degree() > d {
        return Err(ColoringError::OutDegreeAboveBound { found: o.max_out_degree(), bound: d });
    }

    let mut palette = Palette::for_bound(d, k);
    let mut assignment = vec![None; g.edge_count()];
    let mut engine = EngineStats::default();
    if d > 0 {
        let clock = Instant::now();
        let order = elimination_order(&o, d)?;
        timings.order = clock.elapsed();
        let clock = Instant::now();
        let (part, stats) = color_with_orientation_traced(&remainder, k, &o, d, &order)?;
        timings.color = clock.elapsed();
        engine = stats;
        for (i, c) in part.assignment.into_iter().enumerate() {
            assignment[origin[i].0] = c;
        }
    }
    let remainder_colors_used = EdgeColoring { k, assignment: assignment.clone(), palette: None }.colors_used();
    if !h.is_empty() {
        let fresh = palette.engine_size() as ColorId;
        palette.h_color = Some(fresh);
        for &e in &h.edges {
            assignment[e.0] = Some(fresh);
        }
    }
    let coloring = EdgeColoring { k, assignment, palette: Some(palette.clone()) };

    let clock = Instant::now();
    let verdict = verify_coloring(g, k, &coloring)?;
    timings.verify = clock.elapsed();
    if !verdict.valid {
        return Err(ColoringError::InvalidResult { violations: verdict.violations.len() });
    }

    let colors_used = coloring.colors_used();
    let bound = lemma_bound(d, k) + usize::from(!h.is_empty());
    if colors_used > bound {
        return Err(ColoringError::Invariant {
            vertex: 0,
            what: format!("{colors_used} colors used, palette bound is {bound}"),
            dump: String::new(),
        });
    }
    let report = PipelineReport {
        k,
        mode,
        d_used: d,
        c1_size: palette.c1.len(),
        c2_size: palette.c2.len(),
        colors_used,
        remainder_colors_used,
        h_edge_count: h.edges.len(),
        h_vertex_count: h.vertices.len(),
        h_maximality: h.maximality,
        lemma_bound: bound,
        theorem_bound: theorem_bound(k),
        theorem_applicable: d <= 25 * k - 13,
        engine,
        timings,
    };
    Ok((coloring, report))
}
