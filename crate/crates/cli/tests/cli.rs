use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubic3dec"))
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cubic3dec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn k4_batch_gives_one_certificate() {
    let corpus = tmp("k4.g6", "C~\n");
    let o = run(&["batch", corpus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "C~\n0-1 0-2 0-3\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown: 0"));
}

#[test]
fn non_cubic_record_is_skipped() {
    let corpus = tmp("mixed.g6", "C~\nC^\n");
    let o = run(&["batch", corpus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped C^: graph is not cubic"));
}

#[test]
fn generated_corpus_certifies_and_checks() {
    let g6 = stdout(&run(&["generate", "10"]));
    assert_eq!(g6.lines().count(), 19);
    let corpus = tmp("n10.g6", &g6);
    let certs_path = std::env::temp_dir().join(format!("cubic3dec-cli-{}-n10.cert", std::process::id()));
    for mode in ["solve", "reduce"] {
        let o = run(&["batch", corpus.to_str().unwrap(), "--mode", mode, "--jobs", "3", "--out", certs_path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{mode}");
        let c = run(&["check", corpus.to_str().unwrap(), certs_path.to_str().unwrap()]);
        assert_eq!(c.status.code(), Some(0));
        assert_eq!(stdout(&c).lines().filter(|l| l.ends_with(" pass")).count(), 19);
    }
}

#[test]
fn batch_output_is_deterministic() {
    let g6 = stdout(&run(&["generate", "12"]));
    let corpus = tmp("n12.g6", &g6);
    let a = run(&["batch", corpus.to_str().unwrap(), "--jobs", "1"]);
    let b = run(&["batch", corpus.to_str().unwrap(), "--jobs", "1"]);
    let c = run(&["batch", corpus.to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn mutated_certificates_fail() {
    let corpus = tmp("k4m.g6", "C~\n");
    // The star with one edge moved off the centre.
    let flipped = tmp("flipped.cert", "C~\n0-1 0-2 1-3\n");
    let o = run(&["check", corpus.to_str().unwrap(), flipped.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fail"));

    // A Hamiltonian path as the tree leaves a path of three edges.
    let p3 = tmp("p3.cert", "C~\n0-1 1-2 2-3\n");
    let o = run(&["check", corpus.to_str().unwrap(), p3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("path of length ≥ 2"), "{}", stdout(&o));

    let empty = tmp("empty.cert", "");
    let o = run(&["check", corpus.to_str().unwrap(), empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("missing certificate"));
}

#[test]
fn compat_reports() {
    let o = run(&["compat", "node-triangle"]);
    assert!(stdout(&o).contains("\nmanual: 0\n"));
    let o = run(&["compat", "square-twin-house"]);
    assert!(stdout(&o).contains("\nmanual: 2\n"));
    assert_eq!(run(&["compat", "no-such-pair"]).status.code(), Some(2));
}

#[test]
fn hist_reduce_reports_terminal_hist() {
    let g6 = stdout(&run(&["generate", "10"]));
    let corpus = tmp("h10.g6", &g6);
    let certs = stdout(&run(&["batch", corpus.to_str().unwrap()]));
    let certs = tmp("h10.cert", &certs);
    let o = run(&["hist-reduce", certs.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 19);
    assert!(out.lines().all(|l| l.contains("matching 0 hist yes replay ok")), "{out}");
}

#[test]
fn sat_gadget_agrees() {
    let sat = tmp("sat.cnf", "p cnf 2 2\n1 2 -1 0\n-2 -2 -2 0\n");
    let o = run(&["sat-gadget", sat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("realisation: realisable"));
    let unsat = tmp("unsat.cnf", "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
    let o = run(&["sat-gadget", unsat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("realisation: not realisable"));
    let bad = tmp("bad.cnf", "p cnf 1 1\n1 0\n");
    assert_eq!(run(&["sat-gadget", bad.to_str().unwrap()]).status.code(), Some(2));
}
