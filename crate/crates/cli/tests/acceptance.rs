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

//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p modk-cli --test acceptance -- --nocapture` to see them.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use modk::coloring::{color_graph, lemma_bound, theorem_bound, EngineStats, Mode};
use modk::density::{ceil_nonneg, mad_brute, mad_exact, Rational};
use modk::graph::{generate, Family, Graph};
use modk::ordering::{check_order, elimination_order};
use modk::orientation::{min_outdegree_orientation, orient_with_bound, Orientation, OrientationError};
use modk::verification::{
    c1_classes_are_matchings, check_density_claim, exact_chromatic_index_mod_k, verify_coloring, DensityClaim,
};
use modk_cli::bench::{rows_to_csv, run_bench, BenchConfig};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 500;
const CORPUS_KS: [usize; 5] = [2, 3, 4, 5, 7];
const CORPUS_PS: [f64; 3] = [0.1, 0.3, 0.6];
const CORPUS_MAX_N: usize = 60;
const CORPUS_TIME_LIMIT: Duration = Duration::from_secs(60);

fn verdict(id: u32, title: &str, ok: bool, detail: String) {
    println!("criterion {id:>2} [{}] {title}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} failed: {detail}");
}

struct Run {
    n: usize,
    k: usize,
    d: usize,
    h_nonempty: bool,
    colors: usize,
    remainder_colors: usize,
    reported_lemma_bound: usize,
    theorem_applicable: bool,
    valid: bool,
    c1_matching: bool,
    stats: EngineStats,
    error: Option<String>,
}

struct Corpus {
    runs: Vec<Run>,
    elapsed: Duration,
}

fn corpus_graphs() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f_646b);
    (0..CORPUS_SIZE)
        .map(|i| {
            let n = rng.gen_range(2..=CORPUS_MAX_N);
            let p = CORPUS_PS[i % CORPUS_PS.len()];
            generate(Family::Gnp { n, p }, rng.next_u64()).unwrap()
        })
        .collect()
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let graphs = corpus_graphs();
        let start = Instant::now();
        let mut runs = Vec::new();
        for g in &graphs {
            for k in CORPUS_KS {
                let run = match color_graph(g, k, Mode::MinimalD) {
                    Ok((c, r)) => Run {
                        n: g.vertex_count(),
                        k,
                        d: r.d_used,
                        h_nonempty: r.h_edge_count > 0,
                        colors: c.colors_used(),
                        remainder_colors: r.remainder_colors_used,
                        reported_lemma_bound: r.lemma_bound,
                        theorem_applicable: r.theorem_applicable,
                        valid: verify_coloring(g, k, &c).map(|v| v.valid).unwrap_or(false),
                        c1_matching: c1_classes_are_matchings(g, &c),
                        stats: r.engine,
                        error: None,
                    },
                    Err(e) => Run {
                        n: g.vertex_count(),
                        k,
                        d: 0,
                        h_nonempty: false,
                        colors: 0,
                        remainder_colors: 0,
                        reported_lemma_bound: 0,
                        theorem_applicable: false,
                        valid: false,
                        c1_matching: false,
                        stats: EngineStats::default(),
                        error: Some(e.to_string()),
                    },
                };
                runs.push(run);
            }
        }
        Corpus { runs, elapsed: start.elapsed() }
    })
}

#[test]
fn criterion_01_validity_suite() {
    let c = corpus();
    let failures = c.runs.iter().filter(|r| !r.valid).count();
    let ok = failures == 0 && c.runs.len() == CORPUS_SIZE * CORPUS_KS.len() && c.elapsed < CORPUS_TIME_LIMIT;
    verdict(
        1,
        "validity suite",
        ok,
        format!(
            "{} colorings of {} graphs (n <= {}), {} invalid, {:.1}s (limit {}s)",
            c.runs.len(),
            CORPUS_SIZE,
            c.runs.iter().map(|r| r.n).max().unwrap_or(0),
            failures,
            c.elapsed.as_secs_f64(),
            CORPUS_TIME_LIMIT.as_secs()
        ),
    );
}

#[test]
fn criterion_02_engine_color_bound() {
    let c = corpus();
    let bad: Vec<&Run> = c
        .runs
        .iter()
        .filter(|r| {
            let engine = lemma_bound(r.d, r.k);
            let total = engine + usize::from(r.h_nonempty);
            r.error.is_some() || r.remainder_colors > engine || r.colors > total || r.reported_lemma_bound != total
        })
        .collect();
    let tightest = c
        .runs
        .iter()
        .filter(|r| r.reported_lemma_bound > 0)
        .map(|r| Rational::new(r.colors as i64, r.reported_lemma_bound as i64))
        .max()
        .unwrap_or_default();
    verdict(
        2,
        "colors on G' <= 7d+2k-3, total <= that + [H nonempty]",
        bad.is_empty(),
        format!("{} violations; largest colors/bound ratio {tightest}", bad.len()),
    );
}

#[test]
fn criterion_03_theorem_bound() {
    let c = corpus();
    let applicable: Vec<&Run> = c.runs.iter().filter(|r| r.d <= 25 * r.k - 13).collect();
    let bad = applicable.iter().filter(|r| r.colors > theorem_bound(r.k)).count();
    let ok = bad == 0 && applicable.len() == c.runs.len() && c.runs.iter().all(|r| r.theorem_applicable);
    verdict(
        3,
        "total colors <= 177k-93 whenever d <= 25k-13",
        ok,
        format!(
            "{} of {} runs applicable, {} over the bound, max colors used {}",
            applicable.len(),
            c.runs.len(),
            bad,
            c.runs.iter().map(|r| r.colors).max().unwrap_or(0)
        ),
    );
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.05..0.9);
    generate(Family::Gnp { n, p }, rng.next_u64()).unwrap()
}

fn orientable_by_enumeration(g: &Graph, d: usize) -> bool {
    (0u32..(1u32 << g.edge_count())).any(|mask| {
        let mut out = vec![0usize; g.vertex_count()];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            out[if mask >> i & 1 == 0 { u } else { v }] += 1;
        }
        out.into_iter().all(|x| x <= d)
    })
}

#[test]
fn criterion_04_mad_and_orientation_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut mismatches = Vec::new();
    for i in 0..200 {
        let g = random_graph(&mut rng, 12);
        let exact = mad_exact(&g).unwrap().density;
        let brute = mad_brute(&g).unwrap();
        if exact != brute {
            mismatches.push(format!("graph {i}: exact {exact} vs brute {brute}"));
        }
        let (d, o) = min_outdegree_orientation(&g);
        let expected = ceil_nonneg(&(brute / Rational::from_integer(2))) as usize;
        if d != expected || o.max_out_degree() > d || !o.is_consistent() {
            mismatches.push(format!("graph {i}: d* {d} vs ceil(mad/2) {expected}"));
        }
        if d >= 2 && orient_with_bound(&g, d - 1).is_ok() {
            mismatches.push(format!("graph {i}: d*-1 = {} also feasible", d - 1));
        }
    }
    let mut small = 0;
    while small < 200 {
        let g = random_graph(&mut rng, 7);
        if g.edge_count() > 8 {
            continue;
        }
        small += 1;
        for d in 1..=3 {
            let brute = orientable_by_enumeration(&g, d);
            let verdict = match orient_with_bound(&g, d) {
                Ok(o) => o.max_out_degree() <= d,
                Err(OrientationError::Infeasible(set)) => !set.certifies(&g),
                Err(_) => true,
            };
            if verdict != brute {
                mismatches.push(format!("{:?} d={d}: brute {brute}", g.edges()));
            }
        }
    }
    verdict(
        4,
        "mad exact = brute force, d* = ceil(mad/2), feasibility = enumeration",
        mismatches.is_empty(),
        format!("200 graphs n <= 12, {small} graphs m <= 8 x d in 1..=3, {} mismatches {:?}", mismatches.len(), mismatches.first()),
    );
}

#[test]
fn criterion_05_ordering_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    let mut worst_slack = usize::MAX;
    for _ in 0..200 {
        let g = random_graph(&mut rng, 40);
        let tails: Vec<usize> = g.edges().iter().map(|&(u, v)| if rng.gen::<bool>() { u } else { v }).collect();
        let o = Orientation::from_tails(&g, &tails).unwrap();
        let d = o.max_out_degree();
        let order = elimination_order(&o, d).unwrap();
        let check = check_order(&o, &order, d);
        if !check.holds {
            failures += 1;
        }
        worst_slack = worst_slack.min(d.saturating_sub(check.worst));
    }
    verdict(
        5,
        "elimination order passes check_order",
        failures == 0,
        format!("200 random orientations, {failures} failures, min slack {worst_slack}"),
    );
}

#[test]
fn criterion_06_engine_assertions_hold() {
    let c = corpus();
    let errors: Vec<&String> = c.runs.iter().filter_map(|r| r.error.as_ref()).collect();
    let margin_breaks = c
        .runs
        .iter()
        .filter(|r| r.d > 0)
        .filter(|r| {
            let s = &r.stats;
            s.max_c1_blocked >= 3 * r.d - 1
                || s.max_leftover >= r.d + r.k
                || s.min_b_size.is_some_and(|b| s.max_b_blocked >= b || b < 2 * r.d + r.k - 2)
        })
        .count();
    let steps: usize = c.runs.iter().map(|r| r.stats.vertices_processed).sum();
    let max_leftover = c.runs.iter().map(|r| r.stats.max_leftover).max().unwrap_or(0);
    verdict(
        6,
        "step-1 color exists, |R̄| < d+k, B capacity",
        errors.is_empty() && margin_breaks == 0,
        format!(
            "{steps} vertex steps, {} engine errors, {margin_breaks} margin breaks, largest leftover set {max_leftover}",
            errors.len()
        ),
    );
}

fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[test]
fn criterion_07_oracle_agreement() {
    let exact = |g: &Graph| exact_chromatic_index_mod_k(g, 2, g.edge_count()).unwrap().map(|c| c.colors_used());
    let named = [
        ("K3", generate(Family::Complete { n: 3 }, 0).unwrap(), 3),
        ("C4", generate(Family::Cycle { n: 4 }, 0).unwrap(), 2),
        ("K4", generate(Family::Complete { n: 4 }, 0).unwrap(), 1),
        ("K1,3", generate(Family::Star { n: 4 }, 0).unwrap(), 1),
    ];
    let mut problems = Vec::new();
    for (name, g, want) in &named {
        if exact(g) != Some(*want) {
            problems.push(format!("{name}: got {:?}, want {want}", exact(g)));
        }
        let used = color_graph(g, 2, Mode::MinimalD).unwrap().0.colors_used();
        if used < *want {
            problems.push(format!("{name}: pipeline used {used} < {want}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sampled = 0;
    let mut worst = 0;
    while sampled < 100 {
        let n = rng.gen_range(2..=6);
        let g = generate(Family::Gnp { n, p: rng.gen_range(0.3..0.8) }, rng.next_u64()).unwrap();
        if !is_connected(&g) || g.edge_count() > 12 {
            continue;
        }
        sampled += 1;
        match exact_chromatic_index_mod_k(&g, 2, 4).unwrap() {
            Some(c) => {
                let value = c.colors_used();
                worst = worst.max(value);
                let used = color_graph(&g, 2, Mode::MinimalD).unwrap().0.colors_used();
                if used < value {
                    problems.push(format!("{:?}: pipeline {used} < oracle {value}", g.edges()));
                }
            }
            None => problems.push(format!("{:?}: needs more than 4 colors", g.edges())),
        }
    }
    verdict(
        7,
        "oracle values and chi'_2 <= 4 on small connected graphs",
        problems.is_empty(),
        format!("K3=3 C4=2 K4=1 K1,3=1 checked; {sampled} connected graphs, max chi'_2 {worst}; problems {problems:?}"),
    );
}

#[test]
fn criterion_08_density_claim() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut confirmed, mut vacuous, mut other) = (0, 0, Vec::new());
    let mut instances = 0;
    while instances < 200 {
        let g = random_graph(&mut rng, 9);
        if g.edge_count() > 12 {
            continue;
        }
        instances += 1;
        for k in [2, 3] {
            match check_density_claim(&g, k) {
                Ok(DensityClaim::Confirmed) => confirmed += 1,
                Ok(DensityClaim::Vacuous) => vacuous += 1,
                outcome => other.push(format!("{:?} k={k}: {outcome:?}", g.edges())),
            }
        }
    }
    verdict(
        8,
        "no k-divisible subgraph implies e < 2(12k-6)v",
        other.is_empty(),
        format!("{instances} graphs x k in {{2,3}}: {confirmed} confirmed, {vacuous} vacuous, {} other", other.len()),
    );
}

#[test]
fn criterion_09_c1_matchings() {
    let c = corpus();
    let bad = c.runs.iter().filter(|r| !r.c1_matching).count();
    verdict(9, "C1 classes are matchings", bad == 0, format!("{} colorings, {bad} with a repeated C1 color at a vertex", c.runs.len()));
}

#[test]
fn criterion_10_bench_determinism() {
    let mut cfg = BenchConfig::new(Family::Gnp { n: 30, p: 0.2 }, vec![2, 3], 5, 1);
    let first = rows_to_csv(&run_bench(&cfg).unwrap()).unwrap();
    let second = rows_to_csv(&run_bench(&cfg).unwrap()).unwrap();
    cfg.threads = 4;
    let threaded = rows_to_csv(&run_bench(&cfg).unwrap()).unwrap();

    let dir = std::env::temp_dir().join(format!("modk-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("bench-{i}.csv"));
        let args = ["modk", "bench", "--family", "gnp", "--n", "30", "--p", "0.2", "--k", "2,3", "--trials", "5", "--seed", "1", "--output"];
        let mut argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        argv.push(path.display().to_string());
        let code = modk_cli::dispatch(argv, &mut Vec::new(), &mut Vec::new());
        assert_eq!(code, 0);
        outputs.push(std::fs::read(&path).unwrap());
    }
    std::fs::remove_dir_all(&dir).ok();
    let rows = first.lines().count() - 1;
    let ok = first == second && first == threaded && outputs[0] == outputs[1] && outputs[0] == first.as_bytes() && rows == 10;
    verdict(10, "repeated bench runs give identical CSV", ok, format!("{rows} rows, {} bytes, library and CLI runs identical", first.len()));
}
