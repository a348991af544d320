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

//! Benchmark harness: random instances in, one validated CSV row per
//! `(k, trial)` out.

use std::time::Instant;

use modk::coloring::{color_graph, ColoringError, Mode};
use modk::graph::{emit_graph, generate, Family, Format, Graph, GraphError};
use modk::verification::verify_coloring;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub family: Family,
    pub ks: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Fill the `elapsed_ms` column. Off by default so that output is
    /// byte-reproducible.
    pub record_timing: bool,
    /// Worker threads; rows come out in `(k, trial)` order regardless.
    pub threads: usize,
}

impl BenchConfig {
    pub fn new(family: Family, ks: Vec<usize>, trials: usize, seed: u64) -> Self {
        BenchConfig { family, ks, trials, seed, mode: Mode::MinimalD, record_timing: false, threads: 1 }
    }
}

/// One CSV record. Column order is fixed by field order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub param: String,
    pub k: usize,
    pub trial: usize,
    pub d_used: usize,
    pub h_edges: usize,
    pub colors_used: usize,
    pub lemma_bound: usize,
    pub theorem_bound: usize,
    pub theorem_applicable: bool,
    pub valid: bool,
    pub elapsed_ms: String,
}

pub const CSV_HEADER: &str = "family,n,param,k,trial,d_used,h_edges,colors_used,lemma_bound,theorem_bound,theorem_applicable,valid,elapsed_ms";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("no k values given")]
    NoModuli,
    #[error("k must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("k={k} trial={trial}: {source}\ninstance (edgelist):\n{instance}")]
    Pipeline { k: usize, trial: usize, source: ColoringError, instance: String },
    #[error("k={k} trial={trial}: coloring failed validation\ninstance (edgelist):\n{instance}")]
    Invalid { k: usize, trial: usize, instance: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn family_param(f: &Family) -> String {
    match f {
        Family::Gnp { p, .. } => p.to_string(),
        _ => String::new(),
    }
}

/// Per-trial generator seeds: consecutive draws from a ChaCha8 stream seeded
/// with the configured seed.
fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.next_u64()).collect()
}

fn run_one(cfg: &BenchConfig, g: &Graph, k: usize, trial: usize) -> Result<BenchRow, BenchError> {
    let start = Instant::now();
    let instance = || emit_graph(g, Format::EdgeList);
    let (coloring, report) = color_graph(g, k, cfg.mode)
        .map_err(|source| BenchError::Pipeline { k, trial, source, instance: instance() })?;
    let elapsed = start.elapsed();
    let valid = verify_coloring(g, k, &coloring).map(|v| v.valid).unwrap_or(false);
    if !valid {
        return Err(BenchError::Invalid { k, trial, instance: instance() });
    }
    Ok(BenchRow {
        family: cfg.family.name().to_string(),
        n: g.vertex_count(),
        param: family_param(&cfg.family),
        k,
        trial,
        d_used: report.d_used,
        h_edges: report.h_edge_count,
        colors_used: report.colors_used,
        lemma_bound: report.lemma_bound,
        theorem_bound: report.theorem_bound,
        theorem_applicable: report.theorem_applicable,
        valid,
        elapsed_ms: if cfg.record_timing { format!("{:.3}", elapsed.as_secs_f64() * 1e3) } else { String::new() },
    })
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    if cfg.trials == 0 {
        return Err(BenchError::NoTrials);
    }
    if cfg.ks.is_empty() {
        return Err(BenchError::NoModuli);
    }
    if let Some(&k) = cfg.ks.iter().find(|&&k| k < 2) {
        return Err(BenchError::ModulusTooSmall(k));
    }
    let graphs: Vec<Graph> = trial_seeds(cfg.seed, cfg.trials)
        .into_iter()
        .map(|s| generate(cfg.family, s))
        .collect::<Result<_, _>>()?;
    let jobs: Vec<(usize, usize)> =
        cfg.ks.iter().flat_map(|&k| (0..cfg.trials).map(move |t| (k, t))).collect();
    let threads = cfg.threads.max(1).min(jobs.len());
    let mut results: Vec<Option<Result<BenchRow, BenchError>>> = (0..jobs.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunk = jobs.len().div_ceil(threads);
        for (job_chunk, out_chunk) in jobs.chunks(chunk).zip(results.chunks_mut(chunk)) {
            let graphs = &graphs;
            scope.spawn(move || {
                for (&(k, t), slot) in job_chunk.iter().zip(out_chunk) {
                    *slot = Some(run_one(cfg, &graphs[t], k, t));
                }
            });
        }
    });
    results.into_iter().map(|r| r.expect("every job ran")).collect()
}

pub fn rows_to_csv(rows: &[BenchRow]) -> Result<String, BenchError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
