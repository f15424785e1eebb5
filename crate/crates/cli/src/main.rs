use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cubic3dec::decomp::hist::{hist_extend, hist_reduce};
use cubic3dec::decomp::{parse_certificate, solve, verify, write_certificate, Certificate, Label, SolveOutcome};
use cubic3dec::extend::forest::Realisation;
use cubic3dec::extend::{check_compatibility, sat_to_template, Cnf};
use cubic3dec::generate::connected_cubic_graphs;
use cubic3dec::graph::{from_graph6, is_connected, to_graph6, Graph};
use cubic3dec::pipeline::{solve_via_reduction, PipelineOutcome};
use cubic3dec::template::builtin;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "cubic3dec", version, about = "3-decompositions of cubic graphs")]
struct Cli {
    /// Worker threads for batch work.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Node budget for the exhaustive search; unlimited when absent.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one graph given as graph6 and print its certificate.
    Solve { graph6: String },
    /// Decompose one graph by reductions and print the trace.
    Reduce { graph6: String },
    /// Certify every record of a graph6 file.
    Batch {
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Solve)]
        mode: Mode,
    },
    /// Check a certificate file against a graph6 corpus.
    Check { corpus: PathBuf, certs: PathBuf },
    /// Compatibility report for a builtin transformation pair.
    Compat { pair: String },
    /// Build the template gadget for a DIMACS formula and test it.
    SatGadget { dimacs: PathBuf },
    /// Reduce each certified graph to one whose tree has no degree-2 vertex.
    HistReduce { certs: PathBuf },
    /// List all connected cubic graphs of one order as graph6.
    Generate { n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Solve,
    Reduce,
}

/// Non-error outcomes that still change the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok,
    Unknown,
    Failed,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Unknown => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 1 {
        // A second init only fails if a pool exists already.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match run(&cli) {
        Ok(s) => ExitCode::from(s.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn parse_graph(s: &str) -> Result<Graph> {
    let g = from_graph6(s.trim()).with_context(|| format!("bad graph6 `{}`", s.trim()))?;
    if !g.is_cubic() {
        bail!("graph is not cubic");
    }
    if !is_connected(&g) {
        bail!("graph is not connected");
    }
    Ok(g)
}

fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Solve { graph6 } => {
            let g = parse_graph(graph6)?;
            match solve(&g, cli.budget)? {
                SolveOutcome::Found(d, _) => {
                    verify(&g, &d).context("solver output does not verify")?;
                    emit(&cli.out, &write_certificate(&g, &d))?;
                    Ok(Status::Ok)
                }
                SolveOutcome::Unknown(stats) => {
                    eprintln!("unknown after {} nodes", stats.nodes);
                    Ok(Status::Unknown)
                }
            }
        }
        Command::Reduce { graph6 } => {
            let g = parse_graph(graph6)?;
            let out = solve_via_reduction(&g, cli.budget)?;
            emit(&cli.out, &out.trace().to_text())?;
            Ok(match out {
                PipelineOutcome::Found(..) => Status::Ok,
                PipelineOutcome::Unknown(_) => Status::Unknown,
            })
        }
        Command::Batch { corpus, mode } => batch(cli, &read(corpus)?, *mode),
        Command::Check { corpus, certs } => check(&read(corpus)?, &read(certs)?),
        Command::Compat { pair } => {
            let Some(p) = builtin::pair(pair) else {
                bail!("unknown pair `{pair}`; known pairs: {}", builtin::PAIR_NAMES.join(", "));
            };
            let r = check_compatibility(&p);
            emit(&cli.out, &r.to_text())?;
            Ok(if r.is_complete() { Status::Ok } else { Status::Failed })
        }
        Command::SatGadget { dimacs } => sat_gadget(cli, &read(dimacs)?),
        Command::HistReduce { certs } => hist(cli, &read(certs)?),
        Command::Generate { n } => {
            if *n % 2 == 1 || *n < 4 || *n > 16 {
                bail!("order must be even and between 4 and 16");
            }
            let text: String = connected_cubic_graphs(*n).iter().map(|g| to_graph6(g.graph()) + "\n").collect();
            emit(&cli.out, &text)?;
            Ok(Status::Ok)
        }
    }
}

enum Record {
    Certified(Graph, String),
    Unknown(Graph),
    Skipped(String),
    Failed(String),
}

fn process(line: &str, mode: Mode, budget: Option<u64>) -> Record {
    let g = match parse_graph(line) {
        Ok(g) => g,
        Err(e) => return Record::Skipped(format!("{}: {e:#}", line.trim())),
    };
    let d = match mode {
        Mode::Solve => match solve(&g, budget) {
            Ok(SolveOutcome::Found(d, _)) => d,
            Ok(SolveOutcome::Unknown(_)) => return Record::Unknown(g),
            Err(e) => return Record::Skipped(format!("{}: {e}", line.trim())),
        },
        Mode::Reduce => match solve_via_reduction(&g, budget) {
            Ok(PipelineOutcome::Found(d, _)) => d,
            Ok(PipelineOutcome::Unknown(_)) => return Record::Unknown(g),
            Err(e) => return Record::Failed(format!("{}: {e}", line.trim())),
        },
    };
    match verify(&g, &d) {
        Ok(()) => {
            let cert = write_certificate(&g, &d);
            Record::Certified(g, cert)
        }
        Err(v) => Record::Failed(format!("{}: {v}", line.trim())),
    }
}

fn batch(cli: &Cli, corpus: &str, mode: Mode) -> Result<Status> {
    let lines: Vec<&str> = corpus.lines().filter(|l| !l.trim().is_empty() && !l.starts_with(">>")).collect();
    let start = Instant::now();
    let records: Vec<Record> = lines.par_iter().map(|l| process(l, mode, cli.budget)).collect();
    let elapsed = start.elapsed();

    let mut certs = String::new();
    let mut per_order: BTreeMap<usize, usize> = BTreeMap::new();
    let mut unknown = Vec::new();
    let mut status = Status::Ok;
    for r in &records {
        match r {
            Record::Certified(g, c) => {
                certs.push_str(c);
                *per_order.entry(g.n()).or_default() += 1;
            }
            Record::Unknown(g) => {
                unknown.push(to_graph6(g));
                status = status.max(Status::Unknown);
            }
            Record::Skipped(msg) => eprintln!("skipped {msg}"),
            Record::Failed(msg) => {
                eprintln!("failed {msg}");
                status = Status::Failed;
            }
        }
    }
    emit(&cli.out, &certs)?;
    let mut summary = String::new();
    for (n, k) in &per_order {
        writeln!(summary, "order {n}: {k} certified").unwrap();
    }
    writeln!(summary, "mode {:?}: {} records in {:.3}s", mode, records.len(), elapsed.as_secs_f64()).unwrap();
    writeln!(summary, "unknown: {}", unknown.len()).unwrap();
    for u in &unknown {
        writeln!(summary, "  {u}").unwrap();
    }
    eprint!("{summary}");
    Ok(status)
}

fn check(corpus: &str, certs: &str) -> Result<Status> {
    let certs = parse_certificate(certs).context("parsing certificates")?;
    let by_key: HashMap<String, &Certificate> = certs.iter().map(|c| (to_graph6(&c.graph), c)).collect();
    let mut status = Status::Ok;
    for line in corpus.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with(">>")) {
        let key = match from_graph6(line) {
            Ok(g) => to_graph6(&g),
            Err(e) => {
                println!("{line} fail bad graph6: {e}");
                status = Status::Failed;
                continue;
            }
        };
        match by_key.get(&key) {
            None => {
                println!("{line} fail missing certificate");
                status = Status::Failed;
            }
            Some(c) => match c.check() {
                Ok(_) => println!("{line} pass"),
                Err(v) => {
                    println!("{line} fail {v}");
                    status = Status::Failed;
                }
            },
        }
    }
    Ok(status)
}

fn sat_gadget(cli: &Cli, dimacs: &str) -> Result<Status> {
    let f = Cnf::parse_dimacs(dimacs)?;
    let gadget = sat_to_template(&f)?;
    let realised = gadget.realise(cli.budget);
    let satisfiable = gadget.formula.brute_force().is_some();
    let mut s = String::new();
    writeln!(s, "padded formula:\n{}", gadget.formula).unwrap();
    writeln!(s, "template {}", gadget.template.to_text()).unwrap();
    writeln!(s, "assignment {}", gadget.assignment).unwrap();
    let (verdict, status) = match &realised {
        Realisation::Found(_) if satisfiable => ("realisable", Status::Ok),
        Realisation::None if !satisfiable => ("not realisable", Status::Ok),
        Realisation::Unknown => ("unknown", Status::Unknown),
        _ => ("DISAGREES with brute force", Status::Failed),
    };
    writeln!(s, "satisfiable: {satisfiable}").unwrap();
    writeln!(s, "realisation: {verdict}").unwrap();
    if let Realisation::Found(forest) = &realised {
        writeln!(s, "forest {forest}").unwrap();
    }
    emit(&cli.out, &s)?;
    Ok(status)
}

fn hist(cli: &Cli, certs: &str) -> Result<Status> {
    let certs = parse_certificate(certs).context("parsing certificates")?;
    let mut s = String::new();
    let mut status = Status::Ok;
    for c in &certs {
        let key = to_graph6(&c.graph);
        let d = match c.check() {
            Ok(d) => d,
            Err(v) => {
                writeln!(s, "{key} invalid certificate: {v}").unwrap();
                status = Status::Failed;
                continue;
            }
        };
        let (term, steps) = hist_reduce(&c.graph, &d);
        let td = term.decomposition()?;
        let matching = td.labels.iter().filter(|&&l| l == Label::M).count();
        let replay = hist_extend(&term, &steps).decomposition()? == d;
        let hist_ok = td.tree_degree_two_count(&term.graph) == 0;
        if !(replay && hist_ok) {
            status = Status::Failed;
        }
        writeln!(
            s,
            "{key} steps {} terminal {} order {} matching {} hist {} replay {}",
            steps.len(),
            to_graph6(&term.graph),
            term.graph.n(),
            matching,
            if hist_ok { "yes" } else { "no" },
            if replay { "ok" } else { "FAILED" }
        )
        .unwrap();
    }
    emit(&cli.out, &s)?;
    Ok(status)
}
