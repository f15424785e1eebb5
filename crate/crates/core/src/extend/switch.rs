//! Switches that rewrite a decomposition around a square so that only 18
//! of the 39 square forests need an extension rule.
//!
//! Square labellings use the edge order `u1u2, u1u3, u2u4, u3u4` followed
//! by the outer edges at `u1..u4`, with `u_i` as template vertex `i - 1`.
//! The square runs `u1 u2 u4 u3` in cyclic order.

use crate::decomp::{verify, Label, ThreeDecomposition};
use crate::graph::{Bits, Graph};
use crate::template::{builtin, Embedding};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareSwitch {
    /// A two-edge C path through the square is moved to the opposite side.
    PathSwap,
    /// A lone C edge with an M edge at an end of the opposite edge.
    MatchingIntoTree,
    /// A lone M edge in the square is moved to another square edge.
    MoveMatching,
    /// An M edge in the square with an outer M edge next to its first end.
    Reroute,
}

impl fmt::Display for SquareSwitch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SquareSwitch::PathSwap => "path-swap",
            SquareSwitch::MatchingIntoTree => "matching-into-tree",
            SquareSwitch::MoveMatching => "move-matching",
            SquareSwitch::Reroute => "reroute",
        })
    }
}

const CYCLE: [usize; 4] = [0, 1, 3, 2];

fn next(v: usize) -> usize {
    CYCLE[(CYCLE.iter().position(|&c| c == v).unwrap() + 1) % 4]
}

fn prev(v: usize) -> usize {
    CYCLE[(CYCLE.iter().position(|&c| c == v).unwrap() + 3) % 4]
}

fn sq(a: usize, b: usize) -> usize {
    match (a.min(b), a.max(b)) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 3) => 2,
        (2, 3) => 3,
        e => panic!("{e:?} is not a square edge"),
    }
}

fn outer(v: usize) -> usize {
    4 + v
}

/// Square edges as `(p, q)` with `q = next(p)`.
fn oriented(e: usize) -> (usize, usize) {
    let (a, b) = [(0, 1), (0, 2), (1, 3), (2, 3)][e];
    if next(a) == b {
        (a, b)
    } else {
        (b, a)
    }
}

fn count(labels: &[Label], l: Label) -> usize {
    labels[..4].iter().filter(|&&x| x == l).count()
}

/// What a switch does once the host has been inspected.
enum Plan {
    Fixed(Vec<Label>),
    /// Reroute around `(p, q)` with the outer M edge at `c`.
    Reroute { p: usize, q: usize, c: usize },
}

fn plan(labels: &[Label]) -> Option<(SquareSwitch, Plan)> {
    assert_eq!(labels.len(), 8, "square labelling");
    let mut out = labels.to_vec();
    let cs = count(labels, Label::C);
    let ms = count(labels, Label::M);
    if cs == 2 {
        let ends: Vec<usize> = (0..4).filter(|&v| labels[outer(v)] == Label::C).collect();
        let mid = (0..4).find(|&v| {
            labels[sq(v, next(v))] == Label::C && labels[sq(v, prev(v))] == Label::C
        })?;
        debug_assert_eq!(ends.len(), 2);
        if mid == 0 || mid == 2 {
            for l in out.iter_mut().take(4) {
                *l = if *l == Label::C { Label::T } else { Label::C };
            }
            return Some((SquareSwitch::PathSwap, Plan::Fixed(out)));
        }
        return None;
    }
    if cs == 1 {
        let ce = (0..4).find(|&e| labels[e] == Label::C).unwrap();
        let (a, b) = oriented(ce);
        let (c, d) = (prev(a), next(b));
        let cd = sq(c, d);
        if labels[cd] != Label::T {
            return None;
        }
        let m_at = [c, d].into_iter().find(|&v| labels[outer(v)] == Label::M)?;
        out[cd] = Label::M;
        out[outer(m_at)] = Label::T;
        return Some((SquareSwitch::MatchingIntoTree, Plan::Fixed(out)));
    }
    if cs == 0 && ms == 1 {
        let e = (0..4).find(|&e| labels[e] == Label::M).unwrap();
        let (p, q) = oriented(e);
        let outer_m: Vec<usize> = (0..4).filter(|&v| labels[outer(v)] == Label::M).collect();
        match outer_m.as_slice() {
            [] if e != 0 => {
                out[e] = Label::T;
                out[0] = Label::M;
                Some((SquareSwitch::MoveMatching, Plan::Fixed(out)))
            }
            &[w] if w == next(q) => {
                let f = (0..4)
                    .find(|&f| {
                        let (a, b) = oriented(f);
                        f != e && a != w && b != w
                    })
                    .unwrap();
                out[e] = Label::T;
                out[f] = Label::M;
                Some((SquareSwitch::MoveMatching, Plan::Fixed(out)))
            }
            &[w] if w == prev(p) => Some((SquareSwitch::Reroute, Plan::Reroute { p, q, c: w })),
            _ => None,
        }
    } else {
        None
    }
}

fn reroute(labels: &[Label], p: usize, q: usize, c: usize, via_cd: bool) -> Vec<Label> {
    let d = next(q);
    let mut out = labels.to_vec();
    out[outer(c)] = Label::T;
    if via_cd {
        out[sq(c, d)] = Label::M;
    } else {
        out[sq(p, q)] = Label::T;
        out[sq(q, d)] = Label::M;
        out[sq(c, p)] = Label::M;
    }
    out
}

/// The switch that eliminates a square forest, with every forest it can
/// lead to. `None` for the 18 forests that are kept.
pub fn square_switch(labels: &[Label]) -> Option<(SquareSwitch, Vec<Vec<Label>>)> {
    let (s, plan) = plan(labels)?;
    let targets = match plan {
        Plan::Fixed(l) => vec![l],
        Plan::Reroute { p, q, c } => vec![reroute(labels, p, q, c, true), reroute(labels, p, q, c, false)],
    };
    Some((s, targets))
}

/// Applies the switch for the square at `emb` to a host decomposition.
/// Returns `None` when the local forest is one of the kept 18.
pub fn switch_host(host: &Graph, d: &ThreeDecomposition, emb: &Embedding) -> Option<(SquareSwitch, ThreeDecomposition)> {
    let sq_t = builtin::square();
    let host_idx: Vec<usize> = sq_t
        .edges()
        .into_iter()
        .map(|e| host.edge_index(emb.host_edge(&sq_t, e)).expect("embedding maps edges to edges"))
        .collect();
    let local: Vec<Label> = host_idx.iter().map(|&i| d.labels[i]).collect();
    let (s, plan) = plan(&local)?;
    let new_local = match plan {
        Plan::Fixed(l) => l,
        Plan::Reroute { p, q, c } => {
            let path = tree_path(host, d, emb.phi[c], emb.psi[c]);
            let via_cd = path[1] == emb.phi[next(q)];
            reroute(&local, p, q, c, via_cd)
        }
    };
    let mut labels = d.labels.clone();
    for (k, &i) in host_idx.iter().enumerate() {
        labels[i] = new_local[k];
    }
    let out = ThreeDecomposition::new(labels);
    debug_assert_eq!(verify(host, &out), Ok(()), "switch {s} keeps the decomposition valid");
    Some((s, out))
}

/// Vertices of the tree path from `a` to `b`, starting at `a`.
fn tree_path(host: &Graph, d: &ThreeDecomposition, a: usize, b: usize) -> Vec<usize> {
    let n = host.n();
    let mut adj = vec![0u64; n];
    for (u, v) in d.tree_edges(host) {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut parent = vec![usize::MAX; n];
    parent[b] = b;
    let mut queue = std::collections::VecDeque::from([b]);
    while let Some(v) = queue.pop_front() {
        for w in Bits(adj[v]) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![a];
    let mut x = a;
    while x != b {
        x = parent[x];
        path.push(x);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::enumerate_decompositions;
    use crate::extend::forest::{enumerate_consistent_forests, ConsistentForest};
    use crate::generate::Catalogue;
    use crate::template::find_embeddings;
    use std::collections::BTreeSet;

    pub(crate) const KEPT: [&str; 18] = [
        "cccctttt", "ctctcttc", "ttcctcct", "cttmcctt", "tmcttctc", "mttcttcc", "tcmtctct", "ctttcctt", "ttcttctc",
        "tttcttcc", "tcttctct", "mttmtttt", "tmmttttt", "mtttttmm", "ttmtmtmt", "tttmmmtt", "tmtttmtm", "mttttttt",
    ];

    fn s(l: &[Label]) -> String {
        l.iter().map(|l| l.as_char()).collect()
    }

    #[test]
    fn switches_leave_eighteen_forests() {
        let sqt = builtin::square();
        let all = enumerate_consistent_forests(&sqt);
        let kept: BTreeSet<String> = all
            .iter()
            .filter(|f| square_switch(f.labels()).is_none())
            .map(|f| f.label_string())
            .collect();
        assert_eq!(kept, KEPT.iter().map(|s| s.to_string()).collect());
        let mut per_switch = std::collections::BTreeMap::new();
        for f in &all {
            if let Some((sw, targets)) = square_switch(f.labels()) {
                *per_switch.entry(sw.to_string()).or_insert(0) += 1;
                for t in targets {
                    assert!(ConsistentForest::new(&sqt, t.clone()).is_ok(), "{} -> {}", f, s(&t));
                }
            }
        }
        let counts: Vec<usize> = per_switch.values().copied().collect();
        assert_eq!(per_switch.len(), 4);
        assert_eq!(counts.iter().sum::<usize>(), 21);
    }

    #[test]
    fn switches_end_in_kept_forests() {
        // Chains of switches always terminate in the kept set.
        let sqt = builtin::square();
        for f in enumerate_consistent_forests(&sqt) {
            let mut frontier = vec![f.labels().to_vec()];
            for _ in 0..3 {
                frontier = frontier
                    .into_iter()
                    .flat_map(|l| match square_switch(&l) {
                        Some((_, t)) => t,
                        None => vec![l],
                    })
                    .collect();
            }
            for l in frontier {
                assert!(KEPT.contains(&s(&l).as_str()), "{f} ends at {}", s(&l));
            }
        }
    }

    #[test]
    fn host_switches_stay_valid() {
        let sqt = builtin::square();
        let cat = Catalogue::up_to(10);
        let mut used = BTreeSet::new();
        for g in cat.all() {
            let embs = find_embeddings(g, &sqt);
            if embs.is_empty() {
                continue;
            }
            for d in enumerate_decompositions(g).unwrap() {
                for emb in &embs {
                    if let Some((sw, nd)) = switch_host(g, &d, emb) {
                        assert_eq!(verify(g, &nd), Ok(()));
                        used.insert(sw.to_string());
                    }
                }
            }
        }
        assert_eq!(used.len(), 4);
    }
}
