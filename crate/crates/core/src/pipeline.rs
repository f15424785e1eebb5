//! Reduce, solve the base graph, lift back.
//!
//! A step replaces a configuration `Y` of the host by the smaller `X` of an
//! extension pair, so lifting back is an `X -> Y` extension of the reduced
//! graph. Graphs that are not 3-connected are solved directly.

use crate::decomp::{solve, verify, Certificate, Label, SolveError, SolveOutcome, ThreeDecomposition, Violation};
use crate::extend::{lift_decomposition, LiftError, LiftRule};
use crate::graph::{is_connected, is_three_connected, to_graph6, Bits, Graph};
use crate::template::{apply_transformation, builtin, for_each_embedding, reduction_gate, Embedding, TransformationPair, Transformed};
use std::fmt::Write;
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("step {step}: {source}")]
    Lift {
        step: usize,
        #[source]
        source: LiftError,
    },
    #[error("step {step}: reduced graph failed an independent check: {reason}")]
    GateViolation { step: usize, reason: String },
    #[error("more than {0} reduction steps")]
    DepthExceeded(usize),
    #[error("step {step}: lifted labelling does not verify on the host: {violation}")]
    Unverified { step: usize, violation: Violation },
    #[error("trace does not replay: {0}")]
    Replay(String),
}

/// A gated reduction found in a host.
#[derive(Clone, Debug)]
pub struct Configuration {
    /// The pair used to lift back; its `y` is the configuration in the host.
    pub extension: TransformationPair,
    /// Embedding of `extension.y` in the host.
    pub embedding: Embedding,
    /// Set when a domino is reduced to a square because reducing it to an
    /// edge would break 3-connectivity.
    pub edge_gate_failed: bool,
    pub reduced: Transformed,
}

/// Extension pairs searched in priority order. The domino is handled on its
/// own between K_{2,3} and the twin house.
const BEFORE_DOMINO: [&str; 2] = ["node-triangle", "node-k23"];
const AFTER_DOMINO: [&str; 3] = ["square-twin-house", "square-claw-square", "node-petv"];

fn first_gated(g: &Graph, ext: &TransformationPair) -> Option<Configuration> {
    let red = ext.reversed();
    let mut found = None;
    for_each_embedding(g, &ext.y, |emb| match reduction_gate(g, &red, &emb) {
        Ok(reduced) => {
            found = Some(Configuration {
                extension: ext.clone(),
                embedding: emb,
                edge_gate_failed: false,
                reduced,
            });
            ControlFlow::Break(())
        }
        Err(_) => ControlFlow::Continue(()),
    });
    found
}

fn domino(g: &Graph) -> Option<Configuration> {
    let to_edge = builtin::pair("edge-domino").unwrap();
    let to_square = builtin::pair("square-domino").unwrap();
    let (red_edge, red_square) = (to_edge.reversed(), to_square.reversed());
    let mut found = None;
    for_each_embedding(g, &to_edge.y, |emb| {
        if let Ok(reduced) = reduction_gate(g, &red_edge, &emb) {
            found = Some(Configuration {
                extension: to_edge.clone(),
                embedding: emb,
                edge_gate_failed: false,
                reduced,
            });
            return ControlFlow::Break(());
        }
        if let Ok(reduced) = reduction_gate(g, &red_square, &emb) {
            found = Some(Configuration {
                extension: to_square.clone(),
                embedding: emb,
                edge_gate_failed: true,
                reduced,
            });
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found
}

/// The first configuration whose reduction keeps the graph simple and
/// 3-connected.
pub fn find_configuration(g: &Graph) -> Option<Configuration> {
    let by_name = |name: &str| first_gated(g, &builtin::pair(name).unwrap());
    BEFORE_DOMINO
        .iter()
        .find_map(|n| by_name(n))
        .or_else(|| domino(g))
        .or_else(|| AFTER_DOMINO.iter().find_map(|n| by_name(n)))
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub pair: String,
    pub embedding: Embedding,
    pub edge_gate_failed: bool,
    pub reduced: Graph,
    /// Labels of the reduced configuration before lifting.
    pub forest: String,
    /// Lift rule, preceded by any square switches.
    pub rule: String,
}

#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    /// Certificate of the last reduced graph; `None` when it is Unknown.
    pub base: Option<Certificate>,
}

impl Trace {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, st) in self.steps.iter().enumerate() {
            let image: Vec<String> = st.embedding.phi.iter().map(|v| v.to_string()).collect();
            writeln!(
                s,
                "step {k} {} image {} forest {} rule {} graph {}",
                st.pair,
                image.join(","),
                st.forest,
                st.rule,
                to_graph6(&st.reduced)
            )
            .unwrap();
        }
        match &self.base {
            Some(c) => s.push_str(&c.to_text()),
            None => s.push_str("unknown\n"),
        }
        s
    }

    /// Recomputes the decomposition of `g` from the recorded embeddings and
    /// the base certificate.
    pub fn replay(&self, g: &Graph) -> Result<ThreeDecomposition, PipelineError> {
        let mut hosts = vec![g.clone()];
        let mut reductions = Vec::new();
        for (k, st) in self.steps.iter().enumerate() {
            let ext = builtin::pair(&st.pair).ok_or_else(|| PipelineError::Replay(format!("unknown pair {}", st.pair)))?;
            let tr = apply_transformation(hosts.last().unwrap(), &ext.reversed(), &st.embedding)
                .map_err(|e| PipelineError::Replay(format!("step {k}: {e}")))?;
            if tr.graph != st.reduced {
                return Err(PipelineError::Replay(format!("step {k}: reduced graph differs")));
            }
            hosts.push(tr.graph.clone());
            reductions.push((ext, tr));
        }
        let base = self.base.as_ref().ok_or_else(|| PipelineError::Replay("no base certificate".into()))?;
        if &base.graph != hosts.last().unwrap() {
            return Err(PipelineError::Replay("base certificate is for another graph".into()));
        }
        let mut d = base.check().map_err(|v| PipelineError::Replay(v.to_string()))?;
        for (k, (ext, tr)) in reductions.iter().enumerate().rev() {
            let st = &self.steps[k];
            d = lift_step(k, &hosts[k], &st.embedding, st.edge_gate_failed, ext, tr, &d)?.0;
        }
        Ok(d)
    }
}

#[derive(Clone, Debug)]
pub enum PipelineOutcome {
    Found(ThreeDecomposition, Trace),
    /// The base solver ran out of budget.
    Unknown(Trace),
}

impl PipelineOutcome {
    pub fn decomposition(&self) -> Option<&ThreeDecomposition> {
        match self {
            PipelineOutcome::Found(d, _) => Some(d),
            PipelineOutcome::Unknown(_) => None,
        }
    }

    pub fn trace(&self) -> &Trace {
        match self {
            PipelineOutcome::Found(_, t) | PipelineOutcome::Unknown(t) => t,
        }
    }
}

/// Three-connectivity by deleting every pair of vertices.
fn three_connected_by_deletion(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 || !is_connected(g) {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            let (h, _) = g.without_vertices(1 << a | 1 << b);
            if !is_connected(&h) {
                return false;
            }
        }
    }
    true
}

/// Rechecks a reduced graph without trusting the gate: every vertex has
/// three distinct neighbours and no two vertices separate it.
fn recheck(step: usize, before: &Graph, after: &Graph) -> Result<(), PipelineError> {
    let fail = |reason: String| Err(PipelineError::GateViolation { step, reason });
    if after.n() >= before.n() {
        return fail(format!("order did not decrease ({} -> {})", before.n(), after.n()));
    }
    if let Some(v) = (0..after.n()).find(|&v| after.degree(v) != 3) {
        return fail(format!("vertex {v} has degree {}", after.degree(v)));
    }
    if 2 * after.m() != 3 * after.n() {
        return fail("edge count is not 3n/2".into());
    }
    if !three_connected_by_deletion(after) {
        return fail("not 3-connected".into());
    }
    Ok(())
}

/// Lifts `d` from `tr.graph` back to `host` and relabels it onto the host's
/// vertex ids.
fn lift_step(
    step: usize,
    host: &Graph,
    emb: &Embedding,
    edge_gate_failed: bool,
    ext: &TransformationPair,
    tr: &Transformed,
    d: &ThreeDecomposition,
) -> Result<(ThreeDecomposition, String, String), PipelineError> {
    let lifted = match lift_decomposition(&tr.graph, d, ext, &tr.embedding) {
        Ok(l) => l,
        Err(source) => {
            if matches!(source, LiftError::ManualCaseUnresolved { .. }) {
                assert!(edge_gate_failed, "domino case reached although the edge reduction was available");
            }
            return Err(PipelineError::Lift { step, source });
        }
    };
    if let LiftRule::Manual { rule: "domino-bad", .. } = lifted.rule {
        assert!(edge_gate_failed, "domino case reached although the edge reduction was available");
    }
    let lg = &lifted.transformed.graph;
    let perm: Vec<usize> = (0..host.n())
        .map(|v| match tr.host_map[v] {
            Some(w) => lifted.transformed.host_map[w].expect("reduced core lies outside the host image"),
            None => {
                let c = emb.phi.iter().position(|&p| p == v).expect("removed vertices are the core image");
                lifted.transformed.embedding.phi[c]
            }
        })
        .collect();
    let labels: Result<Vec<Label>, PipelineError> = host
        .edges()
        .into_iter()
        .map(|(a, b)| {
            lifted.decomposition.label_of(lg, perm[a], perm[b]).ok_or_else(|| PipelineError::Replay(format!("host edge {a}-{b} has no image")))
        })
        .collect();
    let out = ThreeDecomposition::new(labels?);
    verify(host, &out).map_err(|violation| PipelineError::Unverified { step, violation })?;
    let mut rule: Vec<String> = lifted.switches.iter().map(|s| s.to_string()).collect();
    rule.push(lifted.rule.to_string());
    Ok((out, lifted.forest, rule.join("+")))
}

/// Decomposes `g` by repeated reduction. Each reduced graph is rechecked
/// independently of the gate, and every lifted labelling is verified.
pub fn solve_via_reduction(g: &Graph, budget: Option<u64>) -> Result<PipelineOutcome, PipelineError> {
    if !g.is_cubic() {
        return Err(SolveError::NotCubic.into());
    }
    let mut hosts = vec![g.clone()];
    let mut configs: Vec<Configuration> = Vec::new();
    if is_three_connected(g) {
        while let Some(cfg) = find_configuration(hosts.last().unwrap()) {
            if configs.len() >= g.n() {
                return Err(PipelineError::DepthExceeded(g.n()));
            }
            recheck(configs.len(), hosts.last().unwrap(), &cfg.reduced.graph)?;
            hosts.push(cfg.reduced.graph.clone());
            configs.push(cfg);
        }
    }
    let base_graph = hosts.last().unwrap();
    let mut trace = Trace {
        steps: configs
            .iter()
            .map(|c| TraceStep {
                pair: c.extension.name.clone(),
                embedding: c.embedding.clone(),
                edge_gate_failed: c.edge_gate_failed,
                reduced: c.reduced.graph.clone(),
                forest: String::new(),
                rule: String::new(),
            })
            .collect(),
        base: None,
    };
    let mut d = match solve(base_graph, budget)? {
        SolveOutcome::Found(d, _) => d,
        SolveOutcome::Unknown(_) => return Ok(PipelineOutcome::Unknown(trace)),
    };
    trace.base = Some(Certificate::new(base_graph, &d));
    for (k, cfg) in configs.iter().enumerate().rev() {
        let (nd, forest, rule) = lift_step(k, &hosts[k], &cfg.embedding, cfg.edge_gate_failed, &cfg.extension, &cfg.reduced, &d)?;
        trace.steps[k].forest = forest;
        trace.steps[k].rule = rule;
        d = nd;
    }
    Ok(PipelineOutcome::Found(d, trace))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinCounterexampleReport {
    /// Girth at least 4.
    pub girth_ok: bool,
    /// Every cycle of length 4, 5 or 6 has no chord.
    pub short_cycles_induced: bool,
    /// Every edge is the centre edge of an induced path on six vertices.
    pub p6_centres: bool,
}

/// Cycles of length 4 to 6, each once, as vertex sequences starting at
/// their smallest vertex.
fn short_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let (start, last) = (path[0], *path.last().unwrap());
        for w in g.neighbors(last) {
            if w == start && (4..=6).contains(&path.len()) && path[1] < last {
                out.push(path.clone());
            }
            if w > start && !path.contains(&w) && path.len() < 6 {
                path.push(w);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        extend(g, &mut vec![s], &mut out);
    }
    out
}

fn is_induced_path(g: &Graph, p: &[usize]) -> bool {
    let mask = p.iter().fold(0u64, |m, &v| m | 1 << v);
    if mask.count_ones() as usize != p.len() {
        return false;
    }
    p.iter().enumerate().all(|(i, &v)| {
        let mut allowed = 0u64;
        if i > 0 {
            allowed |= 1 << p[i - 1];
        }
        if i + 1 < p.len() {
            allowed |= 1 << p[i + 1];
        }
        g.row(v) & mask == allowed
    })
}

fn is_p6_centre(g: &Graph, u: usize, v: usize) -> bool {
    for b in Bits(g.row(u) & !(1 << v)) {
        for a in Bits(g.row(b) & !(1 << u)) {
            for c in Bits(g.row(v) & !(1 << u)) {
                for d in Bits(g.row(c) & !(1 << v)) {
                    if is_induced_path(g, &[a, b, u, v, c, d]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn check_min_counterexample_properties(g: &Graph) -> MinCounterexampleReport {
    let girth_ok = g.girth().map_or(true, |k| k >= 4);
    let short_cycles_induced = short_cycles(g).iter().all(|c| {
        let mask = c.iter().fold(0u64, |m, &v| m | 1 << v);
        c.iter().all(|&v| (g.row(v) & mask).count_ones() == 2)
    });
    let p6_centres = g.edges().into_iter().all(|(u, v)| is_p6_centre(g, u, v));
    MinCounterexampleReport {
        girth_ok,
        short_cycles_induced,
        p6_centres,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::Catalogue;
    use crate::graph::{is_isomorphic, named};
    use crate::template::{apply_transformation, find_embeddings};

    fn solved(g: &Graph) -> (ThreeDecomposition, Trace) {
        match solve_via_reduction(g, None).unwrap() {
            PipelineOutcome::Found(d, t) => {
                assert_eq!(verify(g, &d), Ok(()));
                (d, t)
            }
            PipelineOutcome::Unknown(_) => panic!("unbounded search returned Unknown"),
        }
    }

    #[test]
    fn prism_reduces_by_triangle() {
        let g = named::prism().into_graph();
        let cfg = find_configuration(&g).unwrap();
        assert_eq!(cfg.extension.name, "node-triangle");
        assert!(is_isomorphic(&cfg.reduced.graph, named::k4().graph()));
        let (d, trace) = solved(&g);
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.replay(&g).unwrap(), d);
    }

    #[test]
    fn petersen_falls_back_to_solver() {
        let g = named::petersen().into_graph();
        assert!(find_configuration(&g).is_none());
        // The Petersen minus a vertex does occur, but its reduction is not simple.
        assert!(!find_embeddings(&g, &builtin::petersen_minus_vertex()).is_empty());
        let (_, trace) = solved(&g);
        assert!(trace.steps.is_empty());
        assert!(trace.to_text().starts_with(&to_graph6(&g)));
    }

    #[test]
    fn iterated_triangle_extensions_reduce_to_k4() {
        let pair = builtin::pair("node-triangle").unwrap();
        let mut g = named::k4().into_graph();
        for _ in 0..6 {
            let emb = find_embeddings(&g, &pair.x).pop().unwrap();
            g = apply_transformation(&g, &pair, &emb).unwrap().graph;
        }
        assert_eq!(g.n(), 16);
        let (d, trace) = solved(&g);
        assert_eq!(trace.steps.len(), 6);
        assert!(trace.steps.iter().all(|s| s.pair == "node-triangle"));
        assert_eq!(trace.base.as_ref().unwrap().graph.n(), 4);
        assert_eq!(trace.replay(&g).unwrap(), d);
    }

    #[test]
    fn every_small_graph_verifies_and_replays() {
        let cat = Catalogue::up_to(12);
        let mut used = std::collections::BTreeSet::new();
        for g in cat.all() {
            let (d, trace) = solved(g.graph());
            for s in &trace.steps {
                used.insert(s.pair.clone());
            }
            assert_eq!(trace.replay(g.graph()).unwrap(), d);
        }
        assert!(used.contains("node-triangle"));
        assert!(used.contains("node-k23"));
    }

    #[test]
    fn recheck_catches_cuts() {
        let g = named::prism().into_graph();
        let mut bad = g.clone();
        bad.remove_edge(0, 1);
        assert!(recheck(0, &named::petersen().into_graph(), &bad).is_err());
        assert!(three_connected_by_deletion(&g));
        assert!(!three_connected_by_deletion(&crate::generate::connected_cubic_graphs(10).into_iter().find(|h| !is_three_connected(h.graph())).unwrap().into_graph()));
    }

    #[test]
    fn counterexample_properties() {
        let k4 = check_min_counterexample_properties(named::k4().graph());
        assert_eq!(
            k4,
            MinCounterexampleReport {
                girth_ok: false,
                short_cycles_induced: false,
                p6_centres: false
            }
        );
        let p = check_min_counterexample_properties(named::petersen().graph());
        assert!(p.girth_ok && p.short_cycles_induced);
        assert_eq!(p.p6_centres, p6_oracle(named::petersen().graph()));
        for g in Catalogue::up_to(10).all() {
            assert_eq!(check_min_counterexample_properties(g.graph()).p6_centres, p6_oracle(g.graph()));
        }
        let k33 = check_min_counterexample_properties(named::k33().graph());
        assert!(k33.girth_ok && !k33.short_cycles_induced);
    }

    /// Centre edges of induced six-vertex paths over all vertex 6-tuples.
    fn p6_oracle(g: &Graph) -> bool {
        let mut centres = std::collections::BTreeSet::new();
        let mut t = [0usize; 6];
        fn rec(g: &Graph, t: &mut [usize; 6], k: usize, centres: &mut std::collections::BTreeSet<(usize, usize)>) {
            if k == 6 {
                for i in 0..6 {
                    for j in i + 1..6 {
                        if t[i] == t[j] || g.has_edge(t[i], t[j]) != (j == i + 1) {
                            return;
                        }
                    }
                }
                centres.insert((t[2].min(t[3]), t[2].max(t[3])));
                return;
            }
            for v in 0..g.n() {
                t[k] = v;
                rec(g, t, k + 1, centres);
            }
        }
        rec(g, &mut t, 0, &mut centres);
        g.edges().iter().all(|e| centres.contains(e))
    }

    #[test]
    fn short_cycle_count_matches_brute_force() {
        // Every 4-, 5- and 6-cycle of the cube, counted over vertex orderings.
        let g = named::cube().into_graph();
        let mut brute = 0;
        for len in 4..=6usize {
            let mut count = 0;
            let n = g.n();
            let mut idx = vec![0usize; len];
            loop {
                let ok = (0..len).all(|i| g.has_edge(idx[i], idx[(i + 1) % len]))
                    && idx.iter().fold(0u64, |m, &v| m | 1 << v).count_ones() as usize == len;
                if ok {
                    count += 1;
                }
                let mut i = 0;
                while i < len {
                    idx[i] += 1;
                    if idx[i] < n {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
            }
            brute += count / (2 * len);
        }
        assert_eq!(short_cycles(&g).len(), brute);
    }
}
