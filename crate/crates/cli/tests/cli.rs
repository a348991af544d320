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

use std::fs;
use std::path::PathBuf;

use modk_cli::dispatch;

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("modk-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let p = self.0.join(name);
        fs::write(&p, contents).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).display().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        fs::remove_dir_all(&self.0).ok();
    }
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("modk").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn mad_prints_fraction_and_witness() {
    let s = Scratch::new("mad");
    let k4 = s.file("k4.txt", K4);
    let (code, out, _) = run(&["mad", "--input", &k4]);
    assert_eq!(code, 0);
    assert_eq!(out, "3/1\n0 1 2 3\n");
    let p4 = s.file("p4.dimacs", "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    let (code, out, _) = run(&["mad", "--input", &p4, "--format", "dimacs"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("3/2\n"));
}

#[test]
fn color_then_verify_round_trip() {
    let s = Scratch::new("color");
    let g = s.path("g.txt");
    assert_eq!(run(&["gen", "--family", "gnp", "--n", "25", "--p", "0.3", "--seed", "4", "--output", &g]).0, 0);
    for k in ["2", "3", "5"] {
        for mode in ["minimal_d", "theorem"] {
            let col = s.path(&format!("c{k}{mode}.txt"));
            let (code, _, err) = run(&["color", "--k", k, "--mode", mode, "--input", &g, "--output", &col]);
            assert_eq!(code, 0, "{err}");
            let (code, out, err) = run(&["verify", "--k", k, "--input", &g, "--coloring", &col]);
            assert_eq!((code, out.as_str()), (0, "valid\n"), "{err}");
        }
    }
}

#[test]
fn k4_gets_one_color() {
    let s = Scratch::new("k4");
    let k4 = s.file("k4.txt", K4);
    let (code, out, _) = run(&["color", "--k", "2", "--input", &k4]);
    assert_eq!(code, 0);
    assert!(out.starts_with("k=2 colors=1 d=0\n"));
}

#[test]
fn tampered_coloring_is_rejected() {
    let s = Scratch::new("tamper");
    let k3 = s.file("k3.txt", "0 1\n0 2\n1 2\n");
    let col = s.file("c.txt", "k=2 colors=1 d=1\n0 1 0\n0 2 0\n1 2 0\n");
    let (code, _, err) = run(&["verify", "--k", "2", "--input", &k3, "--coloring", &col]);
    assert_eq!(code, 1);
    assert!(err.contains("3 violations"), "{err}");
    assert!(err.contains("color 0 vertex 2 degree mod 2 = 0"));

    let missing = s.file("m.txt", "k=2 colors=2 d=1\n0 1 0\n0 2 1\n");
    let (code, _, err) = run(&["verify", "--k", "2", "--input", &k3, "--coloring", &missing]);
    assert_eq!(code, 1);
    assert!(err.contains("no color"), "{err}");

    let wrong_k = s.file("w.txt", "k=3 colors=3 d=1\n0 1 0\n0 2 1\n1 2 2\n");
    assert_eq!(run(&["verify", "--k", "2", "--input", &k3, "--coloring", &wrong_k]).0, 1);
}

#[test]
fn orient_and_oracle() {
    let s = Scratch::new("orient");
    let k4 = s.file("k4.txt", K4);
    let (code, out, _) = run(&["orient", "--input", &k4, "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.contains(" -> ")));
    let (code, _, err) = run(&["orient", "--input", &k4, "--d", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("infeasible"));

    let k3 = s.file("k3.txt", "0 1\n0 2\n1 2\n");
    assert_eq!(run(&["oracle", "--k", "2", "--max-colors", "3", "--input", &k3]).1, "3\n");
    assert_eq!(run(&["oracle", "--k", "2", "--max-colors", "2", "--input", &k3]).1, "none <= 2\n");
}

#[test]
fn error_exit_codes() {
    let s = Scratch::new("errors");
    assert_eq!(run(&["color", "--k", "2"]).0, 2);
    assert_eq!(run(&["mad", "--input", "x", "--bogus"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["gen", "--family", "hypercube", "--n", "3"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    let looped = s.file("loop.txt", "0 0\n");
    let (code, _, err) = run(&["mad", "--input", &looped]);
    assert_eq!(code, 1);
    assert!(err.contains("loop at vertex 0"));
    assert_eq!(run(&["mad", "--input", &s.path("absent.txt")]).0, 1);
    let k3 = s.file("k3.txt", "0 1\n0 2\n1 2\n");
    assert_eq!(run(&["color", "--k", "1", "--input", &k3]).0, 1);
    assert_eq!(run(&["bench", "--n", "5", "--k", "2", "--trials", "0"]).0, 1);
}

#[test]
fn gen_is_seeded() {
    let a = run(&["gen", "--family", "gnp", "--n", "20", "--p", "0.3", "--seed", "9"]).1;
    let b = run(&["gen", "--family", "gnp", "--n", "20", "--p", "0.3", "--seed", "9"]).1;
    assert_eq!(a, b);
    let c5 = run(&["gen", "--family", "cycle", "--n", "5", "--format", "dimacs"]).1;
    assert!(c5.starts_with("p edge 5 5\n"));
}
