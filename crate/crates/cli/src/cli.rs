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

//! Argument parsing and subcommand dispatch.
//!
//! Exit status: 0 on success, 1 on domain errors (invalid coloring,
//! infeasible bound, unreadable input), 2 on usage errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use modk::coloring::{color_graph, Mode};
use modk::density::{format_rational, mad_exact};
use modk::graph::{emit_graph, generate, parse_graph, Family, Format, Graph};
use modk::orientation::{orient_with_bound, OrientationError};
use modk::verification::{exact_chromatic_index_mod_k, verify_coloring};

use crate::bench::{rows_to_csv, run_bench, BenchConfig};
use crate::files::{parse_coloring, write_coloring};

#[derive(Debug, Parser)]
#[command(name = "modk", about = "Mod-k edge colorings with bounded out-degree orientations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Graph file, or `-` for stdin
    #[arg(long)]
    input: PathBuf,
    /// edgelist or dimacs
    #[arg(long, default_value = "edgelist")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Color a graph and write the coloring file
    Color {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "minimal_d")]
        mode: Mode,
        #[command(flatten)]
        graph: GraphInput,
        /// Output path; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring file against a graph
    Verify {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Exact maximum average degree and a densest vertex set
    Mad {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Orientation with out-degree at most D
    Orient {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        d: usize,
    },
    /// Exact mod-k chromatic index of a small graph
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long = "max-colors")]
        max_colors: usize,
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Generate a graph
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "edgelist")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Color random instances and write one CSV row per (k, trial)
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated moduli
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "minimal_d")]
        mode: Mode,
        /// Fill the elapsed_ms column (output is then no longer reproducible)
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// complete, cycle, path, star or gnp
    #[arg(long, default_value = "gnp")]
    family: String,
    #[arg(long)]
    n: usize,
    /// Edge probability for gnp
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

impl FamilyArgs {
    fn family(&self) -> Result<Family, String> {
        let n = self.n;
        Ok(match self.family.as_str() {
            "complete" => Family::Complete { n },
            "cycle" => Family::Cycle { n },
            "path" => Family::Path { n },
            "star" => Family::Star { n },
            "gnp" => Family::Gnp { n, p: self.p },
            other => return Err(format!("unknown family `{other}`")),
        })
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn load_graph(input: &GraphInput) -> Result<Graph, Failure> {
    Ok(parse_graph(&read_text(&input.input)?, input.format)?)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Domain(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Color { k, mode, graph, output } => {
            let g = load_graph(&graph)?;
            let (coloring, report) = color_graph(&g, k, mode)?;
            emit(out, output.as_deref(), &write_coloring(&g, &coloring, Some(&report)))
        }
        Command::Verify { k, graph, coloring } => {
            let g = load_graph(&graph)?;
            let (header, c) = parse_coloring(&read_text(&coloring)?, &g)?;
            if header.k != k {
                return Err(Failure::Domain(format!("coloring file is for k={}, asked to verify k={k}", header.k)));
            }
            let verdict = verify_coloring(&g, k, &c)?;
            if verdict.valid {
                writeln!(out, "valid")?;
                return Ok(());
            }
            let mut msg = format!("invalid: {} violations\n", verdict.violations.len());
            for v in &verdict.violations {
                msg.push_str(&format!("color {} vertex {} degree mod {k} = {}\n", v.color, v.vertex, v.residue));
            }
            Err(Failure::Domain(msg.trim_end().to_string()))
        }
        Command::Mad { graph } => {
            let g = load_graph(&graph)?;
            let w = mad_exact(&g)?;
            let vertices: Vec<String> = w.vertices.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", format_rational(&w.density))?;
            writeln!(out, "{}", vertices.join(" "))?;
            Ok(())
        }
        Command::Orient { graph, d } => {
            let g = load_graph(&graph)?;
            match orient_with_bound(&g, d) {
                Ok(o) => {
                    let mut text = String::new();
                    for (t, h) in o.arcs() {
                        text.push_str(&format!("{t} -> {h}\n"));
                    }
                    emit(out, None, &text)
                }
                Err(OrientationError::Infeasible(set)) => {
                    let vs: Vec<String> = set.vertices.iter().map(ToString::to_string).collect();
                    Err(Failure::Domain(format!(
                        "infeasible: vertices [{}] span {} edges > {} * {}",
                        vs.join(" "),
                        set.induced_edges,
                        d,
                        set.vertices.len()
                    )))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Oracle { k, max_colors, graph } => {
            let g = load_graph(&graph)?;
            match exact_chromatic_index_mod_k(&g, k, max_colors)? {
                Some(c) => writeln!(out, "{}", c.colors_used())?,
                None => writeln!(out, "none <= {max_colors}")?,
            }
            Ok(())
        }
        Command::Gen { family, seed, format, output } => {
            let g = generate(family.family().map_err(Failure::Usage)?, seed)?;
            emit(out, output.as_deref(), &emit_graph(&g, format))
        }
        Command::Bench { family, k, trials, seed, mode, timings, threads, output } => {
            let mut cfg = BenchConfig::new(family.family().map_err(Failure::Usage)?, k, trials, seed);
            cfg.mode = mode;
            cfg.record_timing = timings;
            cfg.threads = threads;
            let rows = run_bench(&cfg)?;
            emit(out, output.as_deref(), &rows_to_csv(&rows)?)
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// process exit status.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
