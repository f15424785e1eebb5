//! Reduction of a 3-decomposition to one whose tree has no vertex of
//! degree 2, and the matching extensions.
//!
//! A coloured graph is a cubic graph with a green spanning tree; the other
//! edges are black. A Tutte extension subdivides two green edges and joins
//! the two new vertices by a black edge. A diamond extension replaces a
//! green edge `xy` by the green path `x p1 p2 p3 p4 y` plus black edges
//! `p1p3` and `p2p4`. Both extensions preserve the property that the black
//! edges split into cycles and isolated edges.

use super::{decomposition_from_tree, ThreeDecomposition, Violation};
use crate::graph::{edge, Bits, Edge, Graph, GraphError};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    pub graph: Graph,
    /// Adjacency rows of the green tree.
    pub green: Vec<u64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("{0}-{1} is not a green edge")]
    NotGreen(usize, usize),
    #[error("the two edges coincide")]
    SameEdge,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ColouredGraph {
    pub fn new(g: &Graph, d: &ThreeDecomposition) -> Self {
        let mut green = vec![0u64; g.n()];
        for (u, v) in d.tree_edges(g) {
            green[u] |= 1 << v;
            green[v] |= 1 << u;
        }
        ColouredGraph {
            graph: g.clone(),
            green,
        }
    }

    pub fn is_green(&self, a: usize, b: usize) -> bool {
        self.green[a] >> b & 1 == 1
    }

    pub fn green_degree(&self, v: usize) -> usize {
        self.green[v].count_ones() as usize
    }

    pub fn green_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (u, &row) in self.green.iter().enumerate() {
            for v in Bits(row) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The decomposition whose tree is the green subgraph.
    pub fn decomposition(&self) -> Result<ThreeDecomposition, Violation> {
        decomposition_from_tree(&self.graph, &self.green_edges())
    }

    fn set_green(&mut self, a: usize, b: usize, on: bool) {
        if on {
            self.green[a] |= 1 << b;
            self.green[b] |= 1 << a;
        } else {
            self.green[a] &= !(1 << b);
            self.green[b] &= !(1 << a);
        }
    }

    fn subdivide(&mut self, e: Edge, w: usize) {
        self.graph.remove_edge(e.0, e.1);
        self.set_green(e.0, e.1, false);
        for x in [e.0, e.1] {
            self.graph.try_add_edge(x, w).expect("subdivision vertex is fresh");
            self.set_green(x, w, true);
        }
    }

    fn add_vertices(&mut self, k: usize) -> Result<usize, GraphError> {
        let first = self.graph.add_vertices(k)?;
        self.green.extend(std::iter::repeat(0).take(k));
        Ok(first)
    }

    /// Tutte extension along two distinct green edges. The new vertices get
    /// the next two ids.
    pub fn tutte_extend(&self, e1: Edge, e2: Edge) -> Result<ColouredGraph, ExtendError> {
        let (e1, e2) = (edge(e1.0, e1.1), edge(e2.0, e2.1));
        for e in [e1, e2] {
            if e.1 >= self.graph.n() || !self.is_green(e.0, e.1) {
                return Err(ExtendError::NotGreen(e.0, e.1));
            }
        }
        if e1 == e2 {
            return Err(ExtendError::SameEdge);
        }
        let mut h = self.clone();
        let a = h.add_vertices(2)?;
        h.subdivide(e1, a);
        h.subdivide(e2, a + 1);
        h.graph.try_add_edge(a, a + 1)?;
        Ok(h)
    }

    /// Diamond extension along a green edge. The path vertices get the next
    /// four ids in path order.
    pub fn diamond_extend(&self, e: Edge) -> Result<ColouredGraph, ExtendError> {
        if e.0.max(e.1) >= self.graph.n() || !self.is_green(e.0, e.1) {
            return Err(ExtendError::NotGreen(e.0, e.1));
        }
        let mut h = self.clone();
        let p = h.add_vertices(4)?;
        insert_diamond(&mut h, e, [p, p + 1, p + 2, p + 3]);
        Ok(h)
    }
}

fn insert_diamond(h: &mut ColouredGraph, e: Edge, p: [usize; 4]) {
    let (x, y) = e;
    h.graph.remove_edge(x, y);
    h.set_green(x, y, false);
    let path = [x, p[0], p[1], p[2], p[3], y];
    for w in path.windows(2) {
        h.graph.try_add_edge(w[0], w[1]).expect("diamond vertices are fresh");
        h.set_green(w[0], w[1], true);
    }
    h.graph.try_add_edge(p[0], p[2]).expect("diamond vertices are fresh");
    h.graph.try_add_edge(p[1], p[3]).expect("diamond vertices are fresh");
}

/// Which branch of the case analysis produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HistCase {
    /// Neither pair of tree neighbours across the matching edge is
    /// adjacent.
    PlainTutte,
    /// The tree neighbours of one end are joined by a matching edge whose
    /// outer tree neighbours avoid the other end.
    NeighbourTutte,
    /// A diamond around the matching edge.
    Diamond,
    /// A diamond whose outer ends are themselves joined by a matching edge.
    DiamondTutte,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Tutte,
    Diamond,
}

/// One reduction. `removed` lists vertices in the numbering before the
/// step; `restored` lists the green edges created by the step in the
/// numbering after it. For a Tutte step `removed[i]` subdivides
/// `restored[i]`; for a diamond step `removed` is the path `p1..p4` from
/// `restored[0].0` to `restored[0].1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub case: HistCase,
    pub removed: Vec<usize>,
    pub restored: Vec<Edge>,
}

impl ReductionStep {
    /// Undoes the step on the reduced coloured graph, restoring the exact
    /// vertex numbering.
    pub fn extend(&self, reduced: &ColouredGraph) -> ColouredGraph {
        let n = reduced.graph.n() + self.removed.len();
        let mut sorted = self.removed.clone();
        sorted.sort_unstable();
        let mut map = Vec::with_capacity(reduced.graph.n());
        for v in 0..n {
            if sorted.binary_search(&v).is_err() {
                map.push(v);
            }
        }
        let mut h = ColouredGraph {
            graph: Graph::new(n).expect("within size bound"),
            green: vec![0; n],
        };
        for (u, v) in reduced.graph.edges() {
            h.graph.try_add_edge(map[u], map[v]).unwrap();
            if reduced.is_green(u, v) {
                h.set_green(map[u], map[v], true);
            }
        }
        let restored: Vec<Edge> = self.restored.iter().map(|&(a, b)| (map[a], map[b])).collect();
        match self.kind {
            StepKind::Tutte => {
                h.subdivide(restored[0], self.removed[0]);
                h.subdivide(restored[1], self.removed[1]);
                h.graph.try_add_edge(self.removed[0], self.removed[1]).unwrap();
            }
            StepKind::Diamond => {
                let p = [self.removed[0], self.removed[1], self.removed[2], self.removed[3]];
                insert_diamond(&mut h, restored[0], p);
            }
        }
        h
    }
}

fn green_nbrs(cg: &ColouredGraph, v: usize) -> (usize, usize) {
    let mut it = Bits(cg.green[v]);
    let a = it.next().expect("two green neighbours");
    let b = it.next().expect("two green neighbours");
    assert!(it.next().is_none(), "vertex {v} expected to have tree degree 2");
    (a, b)
}

fn black_nbr(cg: &ColouredGraph, v: usize) -> usize {
    let mut it = Bits(cg.graph.row(v) & !cg.green[v]);
    let u = it.next().expect("one black neighbour");
    assert!(it.next().is_none(), "vertex {v} expected one matching edge");
    u
}

fn third(cg: &ColouredGraph, v: usize, not: [usize; 2]) -> usize {
    let mut it = Bits(cg.graph.row(v) & !(1 << not[0]) & !(1 << not[1]));
    let w = it.next().expect("cubic vertex has a third neighbour");
    assert!(it.next().is_none());
    w
}

/// Removes `removed` and adds green edges `added` (old numbering), then
/// compacts the ids. Returns the reduced graph and the old-to-new map.
fn contract(cg: &ColouredGraph, removed: &[usize], added: &[Edge]) -> (ColouredGraph, Vec<Option<usize>>) {
    let mask = removed.iter().fold(0u64, |m, &v| m | 1 << v);
    let (mut graph, map) = cg.graph.without_vertices(mask);
    let mut green = vec![0u64; graph.n()];
    for (u, v) in cg.green_edges() {
        if let (Some(a), Some(b)) = (map[u], map[v]) {
            green[a] |= 1 << b;
            green[b] |= 1 << a;
        }
    }
    let mut out = ColouredGraph { graph: Graph::new(0).unwrap(), green };
    for &(a, b) in added {
        let (a, b) = (map[a].expect("kept vertex"), map[b].expect("kept vertex"));
        graph
            .try_add_edge(a, b)
            .unwrap_or_else(|e| panic!("reduction produced a non-simple graph: {e}"));
        out.green[a] |= 1 << b;
        out.green[b] |= 1 << a;
    }
    out.graph = graph;
    (out, map)
}

fn tutte_step(cg: &ColouredGraph, a: usize, b: usize, case: HistCase) -> (ColouredGraph, ReductionStep) {
    let (a1, a2) = green_nbrs(cg, a);
    let (b1, b2) = green_nbrs(cg, b);
    assert!(!cg.graph.has_edge(a1, a2) && !cg.graph.has_edge(b1, b2), "Tutte reduction would create a parallel edge");
    let (next, map) = contract(cg, &[a, b], &[(a1, a2), (b1, b2)]);
    let m = |x: usize| map[x].unwrap();
    let step = ReductionStep {
        kind: StepKind::Tutte,
        case,
        removed: vec![a, b],
        restored: vec![edge(m(a1), m(a2)), edge(m(b1), m(b2))],
    };
    (next, step)
}

/// One step of the case analysis at the lowest vertex of tree degree 2,
/// or `None` if the tree has no such vertex.
pub fn reduce_once(cg: &ColouredGraph) -> Option<(ColouredGraph, ReductionStep)> {
    let n = cg.graph.n();
    let v0 = (0..n).find(|&v| cg.green_degree(v) == 2)?;
    let u0 = black_nbr(cg, v0);
    let mut u = u0;
    let mut v = v0;
    let (xu, yu) = green_nbrs(cg, u);
    let (xv, yv) = green_nbrs(cg, v);
    let side_u = cg.graph.has_edge(xu, yu);
    let side_v = cg.graph.has_edge(xv, yv);
    if !side_u && !side_v {
        return Some(tutte_step(cg, u, v, HistCase::PlainTutte));
    }
    if !side_u {
        std::mem::swap(&mut u, &mut v);
    }
    let (mut xu, mut yu) = green_nbrs(cg, u);
    assert!(!cg.is_green(xu, yu), "tree contains a triangle");
    let mut txu = third(cg, xu, [u, yu]);
    let mut tyu = third(cg, yu, [u, xu]);
    if txu != v && tyu != v {
        return Some(tutte_step(cg, xu, yu, HistCase::NeighbourTutte));
    }
    if tyu == v {
        std::mem::swap(&mut xu, &mut yu);
        std::mem::swap(&mut txu, &mut tyu);
    }
    debug_assert_eq!(txu, v);
    let (p, q) = green_nbrs(cg, v);
    let yv = if p == xu { q } else { assert_eq!(q, xu); p };
    if !cg.graph.has_edge(tyu, yv) {
        let (next, map) = contract(cg, &[yu, u, xu, v], &[(tyu, yv)]);
        let step = ReductionStep {
            kind: StepKind::Diamond,
            case: HistCase::Diamond,
            removed: vec![yu, u, xu, v],
            restored: vec![(map[tyu].unwrap(), map[yv].unwrap())],
        };
        return Some((next, step));
    }
    // y_v and the outer neighbour of y_u are joined by a matching edge.
    assert!(!cg.is_green(tyu, yv));
    let (next, mut step) = tutte_step(cg, yv, tyu, HistCase::DiamondTutte);
    step.case = HistCase::DiamondTutte;
    Some((next, step))
}

/// Reduces until the tree has no vertex of degree 2. Every intermediate
/// coloured graph is checked to still induce a 3-decomposition.
pub fn hist_reduce(g: &Graph, d: &ThreeDecomposition) -> (ColouredGraph, Vec<ReductionStep>) {
    let mut cg = ColouredGraph::new(g, d);
    let mut steps = Vec::new();
    while let Some((next, step)) = reduce_once(&cg) {
        if let Err(e) = next.decomposition() {
            panic!("reduction step {step:?} broke the decomposition: {e}");
        }
        steps.push(step);
        cg = next;
    }
    (cg, steps)
}

/// Replays the inverse steps on the terminal coloured graph.
pub fn hist_extend(terminal: &ColouredGraph, steps: &[ReductionStep]) -> ColouredGraph {
    steps.iter().rev().fold(terminal.clone(), |cg, s| s.extend(&cg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{enumerate_decompositions, verify};
    use crate::generate::Catalogue;
    use crate::graph::named;

    #[test]
    fn prism_single_plain_tutte_step() {
        let g = named::prism();
        let d = decomposition_from_tree(&g, &[(0, 2), (0, 3), (1, 2), (1, 4), (2, 5)]).unwrap();
        let (term, steps) = hist_reduce(&g, &d);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].case, HistCase::PlainTutte);
        assert_eq!(term.graph.n(), 4);
        let td = term.decomposition().unwrap();
        assert_eq!(td.tree_degree_two_count(&term.graph), 0);
        assert_eq!(hist_extend(&term, &steps), ColouredGraph::new(&g, &d));
    }

    #[test]
    fn every_decomposition_up_to_twelve_reduces_and_replays() {
        let cat = Catalogue::up_to(12);
        let mut cases = std::collections::HashSet::new();
        for g in cat.all() {
            for d in enumerate_decompositions(g).unwrap() {
                let (term, steps) = hist_reduce(g, &d);
                assert!(steps.len() <= g.n() / 2);
                let td = term.decomposition().unwrap();
                verify(&term.graph, &td).unwrap();
                assert_eq!(td.tree_degree_two_count(&term.graph), 0);
                assert_eq!(hist_extend(&term, &steps), ColouredGraph::new(g, &d));
                cases.extend(steps.iter().map(|s| s.case));
            }
        }
        assert_eq!(cases.len(), 4, "all four branches exercised: {cases:?}");
    }

    #[test]
    fn extensions_preserve_validity() {
        let g = named::k4();
        let d = decomposition_from_tree(&g, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let cg = ColouredGraph::new(&g, &d);
        let t = cg.tutte_extend((0, 1), (0, 2)).unwrap();
        verify(&t.graph, &t.decomposition().unwrap()).unwrap();
        let dm = cg.diamond_extend((0, 3)).unwrap();
        verify(&dm.graph, &dm.decomposition().unwrap()).unwrap();
        assert_eq!(cg.tutte_extend((0, 1), (1, 0)), Err(ExtendError::SameEdge));
        assert_eq!(cg.tutte_extend((1, 2), (0, 1)), Err(ExtendError::NotGreen(1, 2)));
    }
}
