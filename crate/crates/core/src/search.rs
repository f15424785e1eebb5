//! Depth-first search over T/C/M edge labellings with constraint
//! propagation.
//!
//! Vertices are either inner (degree 3) or outer (degree 1). An inner
//! vertex sees exactly one of the label multisets {T,C,C}, {T,T,M},
//! {T,T,T}. T must be acyclic. In spanning mode T is a spanning tree; in
//! forest mode every T component must contain an outer vertex, and an
//! optional target partition of outer vertices into T components can be
//! imposed.

use crate::decomp::{Label, UnionFind};
use std::ops::ControlFlow;

pub(crate) const DT: u8 = 1;
pub(crate) const DC: u8 = 2;
pub(crate) const DM: u8 = 4;
const DALL: u8 = DT | DC | DM;

fn bit(l: Label) -> u8 {
    match l {
        Label::T => DT,
        Label::C => DC,
        Label::M => DM,
    }
}

fn label(d: u8) -> Label {
    match d {
        DT => Label::T,
        DC => Label::C,
        DM => Label::M,
        _ => unreachable!("domain {d} is not a singleton"),
    }
}

// Label patterns of an inner vertex, spelled out per edge position.
const PATTERNS: [[u8; 3]; 7] = [
    [DT, DC, DC],
    [DC, DT, DC],
    [DC, DC, DT],
    [DT, DT, DM],
    [DT, DM, DT],
    [DM, DT, DT],
    [DT, DT, DT],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    Spanning,
    Forest,
}

#[derive(Clone, Debug)]
pub(crate) struct Problem {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub inc: Vec<Vec<usize>>,
    pub outer: Vec<bool>,
    pub mode: Mode,
    pub fixed: Vec<Option<Label>>,
    /// Target block per vertex for outer vertices whose edge is forced to
    /// be T; outer vertices with equal blocks must share a T component.
    pub blocks: Vec<Option<usize>>,
    pub order: Vec<usize>,
}

impl Problem {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, mode: Mode) -> Self {
        let mut inc = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            inc[u].push(i);
            inc[v].push(i);
        }
        let outer = inc.iter().map(|e| e.len() == 1).collect();
        let m = edges.len();
        let order = bfs_edge_order(n, &edges, &inc);
        Problem {
            n,
            edges,
            inc,
            outer,
            mode,
            fixed: vec![None; m],
            blocks: vec![None; n],
            order,
        }
    }
}

/// Edges in the order a breadth-first search from vertex 0 meets them.
pub(crate) fn bfs_edge_order(n: usize, edges: &[(usize, usize)], inc: &[Vec<usize>]) -> Vec<usize> {
    let mut seen_v = vec![false; n];
    let mut seen_e = vec![false; edges.len()];
    let mut order = Vec::with_capacity(edges.len());
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        if seen_v[root] {
            continue;
        }
        seen_v[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &e in &inc[v] {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                let (a, b) = edges[e];
                let w = if a == v { b } else { a };
                if !seen_v[w] {
                    seen_v[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

#[derive(Clone)]
struct State {
    dom: Vec<u8>,
    committed: Vec<bool>,
    uf: UnionFind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum End {
    Exhausted,
    Stopped,
    Budget,
}

pub(crate) struct Outcome {
    pub end: End,
    pub nodes: u64,
}

struct Search<'a, F> {
    p: &'a Problem,
    any_blocks: bool,
    nodes: u64,
    budget: u64,
    visit: F,
}

/// Runs the search, calling `visit` with each complete labelling (aligned
/// with `p.edges`). Stops early when `visit` breaks or after `budget`
/// search nodes.
pub(crate) fn run<F>(p: &Problem, budget: Option<u64>, visit: F) -> Outcome
where
    F: FnMut(&[Label]) -> ControlFlow<()>,
{
    let mut dom: Vec<u8> = p.fixed.iter().map(|f| f.map_or(DALL, bit)).collect();
    for (i, &(u, v)) in p.edges.iter().enumerate() {
        if p.outer[u] && p.outer[v] {
            // An isolated edge between two outer vertices is a T component
            // with outer vertices or a single-edge complement component.
            dom[i] &= DT | DM;
        }
    }
    let mut s = Search {
        p,
        any_blocks: p.blocks.iter().any(|b| b.is_some()),
        nodes: 0,
        budget: budget.unwrap_or(u64::MAX),
        visit,
    };
    let mut st = State {
        committed: vec![false; dom.len()],
        dom,
        uf: UnionFind::new(p.n),
    };
    let queue: Vec<usize> = (0..p.n).collect();
    let end = if s.propagate(&mut st, queue) {
        match s.dfs(st) {
            ControlFlow::Continue(()) => End::Exhausted,
            ControlFlow::Break(e) => e,
        }
    } else {
        End::Exhausted
    };
    Outcome { end, nodes: s.nodes }
}

impl<'a, F> Search<'a, F>
where
    F: FnMut(&[Label]) -> ControlFlow<()>,
{
    fn dfs(&mut self, st: State) -> ControlFlow<End> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return ControlFlow::Break(End::Budget);
        }
        let Some(&e) = self.p.order.iter().find(|&&e| st.dom[e].count_ones() > 1) else {
            return self.leaf(&st);
        };
        for b in [DT, DC, DM] {
            if st.dom[e] & b == 0 {
                continue;
            }
            let mut next = st.clone();
            next.dom[e] = b;
            let (u, v) = self.p.edges[e];
            if self.propagate(&mut next, vec![u, v]) {
                self.dfs(next)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn leaf(&mut self, st: &State) -> ControlFlow<End> {
        let labels: Vec<Label> = st.dom.iter().map(|&d| label(d)).collect();
        if !self.complete_ok(st) {
            return ControlFlow::Continue(());
        }
        match (self.visit)(&labels) {
            ControlFlow::Continue(()) => ControlFlow::Continue(()),
            ControlFlow::Break(()) => ControlFlow::Break(End::Stopped),
        }
    }

    fn complete_ok(&self, st: &State) -> bool {
        let p = self.p;
        let mut uf = st.uf.clone();
        match p.mode {
            Mode::Spanning => (1..p.n).all(|v| uf.find(v) == uf.find(0)),
            Mode::Forest => {
                let mut anchored = vec![false; p.n];
                for v in 0..p.n {
                    if p.outer[v] {
                        let r = uf.find(v);
                        anchored[r] = true;
                    }
                }
                if !(0..p.n).all(|v| {
                    let r = uf.find(v);
                    anchored[r]
                }) {
                    return false;
                }
                self.blocks_exact(&mut uf)
            }
        }
    }

    fn blocks_exact(&self, uf: &mut UnionFind) -> bool {
        let p = self.p;
        let outs: Vec<(usize, usize)> = (0..p.n).filter_map(|v| p.blocks[v].map(|b| (v, b))).collect();
        for i in 0..outs.len() {
            for j in i + 1..outs.len() {
                let same = uf.find(outs[i].0) == uf.find(outs[j].0);
                if same != (outs[i].1 == outs[j].1) {
                    return false;
                }
            }
        }
        true
    }

    /// Local and global propagation to a fixpoint. Returns false on a
    /// contradiction.
    fn propagate(&mut self, st: &mut State, mut queue: Vec<usize>) -> bool {
        let p = self.p;
        loop {
            while let Some(v) = queue.pop() {
                if !p.outer[v] && !self.restrict_vertex(st, v, &mut queue) {
                    return false;
                }
            }
            // Commit decided T edges and strip T from edges inside a tree
            // component.
            for (i, &(u, v)) in p.edges.iter().enumerate() {
                if st.dom[i] == DT && !st.committed[i] {
                    if !st.uf.union(u, v) {
                        return false;
                    }
                    st.committed[i] = true;
                    if self.any_blocks && !self.blocks_compatible(st) {
                        return false;
                    }
                }
            }
            for (i, &(u, v)) in p.edges.iter().enumerate() {
                if st.dom[i] & DT != 0 && st.dom[i] != DT && st.uf.find(u) == st.uf.find(v) {
                    st.dom[i] &= !DT;
                    if st.dom[i] == 0 {
                        return false;
                    }
                    queue.push(u);
                    queue.push(v);
                }
            }
            if !queue.is_empty() {
                continue;
            }
            match self.global(st) {
                None => return false,
                Some(forced) if forced.is_empty() => return true,
                Some(forced) => {
                    for e in forced {
                        st.dom[e] = DT;
                        let (u, v) = p.edges[e];
                        queue.push(u);
                        queue.push(v);
                    }
                }
            }
        }
    }

    fn restrict_vertex(&self, st: &mut State, v: usize, queue: &mut Vec<usize>) -> bool {
        let inc = &self.p.inc[v];
        debug_assert_eq!(inc.len(), 3);
        let d = [st.dom[inc[0]], st.dom[inc[1]], st.dom[inc[2]]];
        let mut allowed = [0u8; 3];
        for pat in &PATTERNS {
            if (0..3).all(|k| d[k] & pat[k] != 0) {
                for k in 0..3 {
                    allowed[k] |= pat[k];
                }
            }
        }
        for k in 0..3 {
            let nd = d[k] & allowed[k];
            if nd == 0 {
                return false;
            }
            if nd != d[k] {
                st.dom[inc[k]] = nd;
                let (a, b) = self.p.edges[inc[k]];
                queue.push(if a == v { b } else { a });
            }
        }
        true
    }

    fn blocks_compatible(&self, st: &mut State) -> bool {
        let p = self.p;
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for v in 0..p.n {
            if let Some(b) = p.blocks[v] {
                let r = st.uf.find(v);
                for &(r2, b2) in &seen {
                    if r2 == r && b2 != b {
                        return false;
                    }
                }
                seen.push((r, b));
            }
        }
        true
    }

    /// Feasibility of the T-possible subgraph. Returns the edges that must
    /// be T (bridges in spanning mode), or `None` if infeasible.
    fn global(&self, st: &State) -> Option<Vec<usize>> {
        let p = self.p;
        let mut comp = vec![usize::MAX; p.n];
        let mut stack = Vec::new();
        let mut ncomp = 0;
        for s in 0..p.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = ncomp;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &e in &p.inc[v] {
                    if st.dom[e] & DT == 0 {
                        continue;
                    }
                    let (a, b) = p.edges[e];
                    let w = if a == v { b } else { a };
                    if comp[w] == usize::MAX {
                        comp[w] = ncomp;
                        stack.push(w);
                    }
                }
            }
            ncomp += 1;
        }
        match p.mode {
            Mode::Spanning => {
                if ncomp > 1 {
                    return None;
                }
                Some(
                    self.bridges(st)
                        .into_iter()
                        .filter(|&e| st.dom[e] != DT)
                        .collect(),
                )
            }
            Mode::Forest => {
                let mut has_outer = vec![false; ncomp];
                for v in 0..p.n {
                    if p.outer[v] {
                        has_outer[comp[v]] = true;
                    }
                }
                if (0..p.n).any(|v| !has_outer[comp[v]]) {
                    return None;
                }
                let mut block_comp: Vec<Option<usize>> = Vec::new();
                for v in 0..p.n {
                    if let Some(b) = p.blocks[v] {
                        if block_comp.len() <= b {
                            block_comp.resize(b + 1, None);
                        }
                        match block_comp[b] {
                            None => block_comp[b] = Some(comp[v]),
                            Some(c) if c != comp[v] => return None,
                            _ => {}
                        }
                    }
                }
                Some(Vec::new())
            }
        }
    }

    /// Bridges of the T-possible subgraph.
    fn bridges(&self, st: &State) -> Vec<usize> {
        let p = self.p;
        let mut disc = vec![usize::MAX; p.n];
        let mut low = vec![0usize; p.n];
        let mut out = Vec::new();
        let mut time = 0;
        // Iterative DFS: (vertex, parent edge, next incidence index).
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..p.n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
                if *idx < p.inc[v].len() {
                    let e = p.inc[v][*idx];
                    *idx += 1;
                    if e == pe || st.dom[e] & DT == 0 {
                        continue;
                    }
                    let (a, b) = p.edges[e];
                    let w = if a == v { b } else { a };
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(pe);
                        }
                    }
                }
            }
        }
        out
    }
}
