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

//! Coloring file schema.
//!
//! ```text
//! k=<K> colors=<t> d=<d>
//! <u> <v> <c>        one line per edge, in edge-id order
//! # key=value        optional report block
//! ```

use std::collections::HashSet;

use modk::coloring::{EdgeColoring, PipelineReport};
use modk::divisible::Maximality;
use modk::graph::Graph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringFileError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: edge {u} {v} is not in the graph")]
    UnknownEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: edge {u} {v} colored twice")]
    RepeatedEdge { line: usize, u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringHeader {
    pub k: usize,
    pub colors: usize,
    pub d: usize,
}

pub fn write_coloring(g: &Graph, coloring: &EdgeColoring, report: Option<&PipelineReport>) -> String {
    let d = report.map_or(0, |r| r.d_used);
    let mut out = format!("k={} colors={} d={}\n", coloring.k, coloring.colors_used(), d);
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let c = coloring.color(e).expect("coloring is complete");
        out.push_str(&format!("{u} {v} {c}\n"));
    }
    if let Some(r) = report {
        for (key, value) in report_fields(r) {
            out.push_str(&format!("# {key}={value}\n"));
        }
    }
    out
}

pub fn report_fields(r: &PipelineReport) -> Vec<(&'static str, String)> {
    let (maximality, budget) = match r.h_maximality {
        Maximality::Bounded { budget } => ("bounded", budget),
        Maximality::Inconclusive { budget } => ("inconclusive", budget),
    };
    vec![
        ("mode", r.mode.name().to_string()),
        ("d_used", r.d_used.to_string()),
        ("c1_size", r.c1_size.to_string()),
        ("c2_size", r.c2_size.to_string()),
        ("colors_used", r.colors_used.to_string()),
        ("remainder_colors_used", r.remainder_colors_used.to_string()),
        ("h_edges", r.h_edge_count.to_string()),
        ("h_vertices", r.h_vertex_count.to_string()),
        ("h_maximality", format!("{maximality}:{budget}")),
        ("lemma_bound", r.lemma_bound.to_string()),
        ("theorem_bound", r.theorem_bound.to_string()),
        ("theorem_applicable", r.theorem_applicable.to_string()),
        ("max_leftover", r.engine.max_leftover.to_string()),
    ]
}

fn malformed(line: usize, message: impl Into<String>) -> ColoringFileError {
    ColoringFileError::Malformed { line, message: message.into() }
}

fn parse_header(text: &str, line: usize) -> Result<ColoringHeader, ColoringFileError> {
    let mut k = None;
    let mut colors = None;
    let mut d = None;
    for tok in text.split_whitespace() {
        let (key, value) = tok.split_once('=').ok_or_else(|| malformed(line, format!("bad header field `{tok}`")))?;
        let value: usize = value.parse().map_err(|_| malformed(line, format!("bad header value `{tok}`")))?;
        match key {
            "k" => k = Some(value),
            "colors" => colors = Some(value),
            "d" => d = Some(value),
            _ => return Err(malformed(line, format!("unknown header field `{key}`"))),
        }
    }
    match (k, colors, d) {
        (Some(k), Some(colors), Some(d)) => Ok(ColoringHeader { k, colors, d }),
        _ => Err(malformed(line, "header must be `k=<K> colors=<t> d=<d>`")),
    }
}

/// Reads a coloring of `g`. Edges missing from the file stay uncolored.
pub fn parse_coloring(text: &str, g: &Graph) -> Result<(ColoringHeader, EdgeColoring), ColoringFileError> {
    let mut header = None;
    let mut assignment = vec![None; g.edge_count()];
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if header.is_none() {
            header = Some(parse_header(trimmed, line)?);
            continue;
        }
        let nums: Vec<usize> = trimmed
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| malformed(line, format!("expected integers, found `{t}`"))))
            .collect::<Result<_, _>>()?;
        let [u, v, c] = nums[..] else {
            return Err(malformed(line, "expected `u v c`"));
        };
        let e = g.find_edge(u, v).ok_or(ColoringFileError::UnknownEdge { line, u, v })?;
        if !seen.insert(e) {
            return Err(ColoringFileError::RepeatedEdge { line, u, v });
        }
        let c = u32::try_from(c).map_err(|_| malformed(line, "color id too large"))?;
        assignment[e.0] = Some(c);
    }
    let header = header.ok_or_else(|| malformed(1, "missing header line"))?;
    let coloring = EdgeColoring { k: header.k, assignment, palette: None };
    Ok((header, coloring))
}
