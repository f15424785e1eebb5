//! Simple undirected graphs on at most 64 vertices, stored as one adjacency
//! bitset per vertex.

mod connectivity;
mod graph6;
mod iso;
mod subgraph;

pub use connectivity::{is_connected, is_three_connected};
pub use graph6::{from_graph6, to_graph6};
pub use iso::{automorphisms, canonical_form, is_isomorphic, CanonicalForm};
pub use subgraph::{find_subgraph, for_each_subgraph};

use std::fmt;
use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

/// Unordered edge, always stored with `0 <= u < v`.
pub type Edge = (usize, usize);

#[inline]
pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} supported")]
    TooLarge(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("vertex {vertex} has degree {degree}, expected at most 3")]
    NotSubcubic { vertex: usize, degree: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("malformed graph6: {0}")]
    Graph6(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph { adj: vec![0; n] })
    }

    /// Builds a graph, rejecting loops and repeated edges.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(a, b) in edges {
            g.try_add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn try_add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        let n = self.n();
        if a >= n {
            return Err(GraphError::VertexOutOfRange(a));
        }
        if b >= n {
            return Err(GraphError::VertexOutOfRange(b));
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.has_edge(a, b) {
            let (u, v) = edge(a, b);
            return Err(GraphError::ParallelEdge(u, v));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    /// All edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for v in Bits(self.adj[u] & !mask_upto(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Index of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        let (u, v) = edge(e.0, e.1);
        if u >= self.n() || v >= self.n() || !self.has_edge(u, v) {
            return None;
        }
        let mut idx = 0;
        for w in 0..u {
            idx += (self.adj[w] & !mask_upto(w + 1)).count_ones() as usize;
        }
        idx += (self.adj[u] & !mask_upto(u + 1) & mask_upto(v)).count_ones() as usize;
        Some(idx)
    }

    /// Subgraph induced by the complement of `removed`, with surviving
    /// vertices renumbered in ascending order. Returns the graph and the
    /// old-to-new vertex map.
    pub fn without_vertices(&self, removed: u64) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n()];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if removed >> v & 1 == 0 {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Graph { adj: vec![0; next] };
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                g.adj[a] |= 1 << b;
                g.adj[b] |= 1 << a;
            }
        }
        (g, map)
    }

    /// Appends `k` isolated vertices and returns the first new id.
    pub fn add_vertices(&mut self, k: usize) -> Result<usize, GraphError> {
        let first = self.n();
        if first + k > MAX_VERTICES {
            return Err(GraphError::TooLarge(first + k));
        }
        self.adj.extend(std::iter::repeat(0).take(k));
        Ok(first)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n()];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Graph { adj }
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|r| r.count_ones() == 3)
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Bits below position `k`.
#[inline]
pub fn mask_upto(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Iterator over set bit positions, ascending.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// A simple graph in which every vertex has degree exactly 3.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubicGraph(Graph);

impl CubicGraph {
    pub fn new(g: Graph) -> Result<Self, GraphError> {
        for v in 0..g.n() {
            if g.degree(v) != 3 {
                return Err(GraphError::NotCubic {
                    vertex: v,
                    degree: g.degree(v),
                });
            }
        }
        Ok(CubicGraph(g))
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        CubicGraph::new(Graph::from_edges(n, edges)?)
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }
}

impl std::ops::Deref for CubicGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl fmt::Debug for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A simple graph of maximum degree 3.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubcubicGraph(Graph);

impl SubcubicGraph {
    pub fn new(g: Graph) -> Result<Self, GraphError> {
        for v in 0..g.n() {
            if g.degree(v) > 3 {
                return Err(GraphError::NotSubcubic {
                    vertex: v,
                    degree: g.degree(v),
                });
            }
        }
        Ok(SubcubicGraph(g))
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        SubcubicGraph::new(Graph::from_edges(n, edges)?)
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }
}

impl std::ops::Deref for SubcubicGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

/// Small named graphs used throughout the tests and the CLI.
pub mod named {
    use super::{CubicGraph, Graph};

    pub fn k4() -> CubicGraph {
        CubicGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn k33() -> CubicGraph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        CubicGraph::from_edges(6, &e).unwrap()
    }

    pub fn prism() -> CubicGraph {
        CubicGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    /// Outer 5-cycle `0..5`, spokes `i - i+5`, inner pentagram.
    pub fn petersen() -> CubicGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        CubicGraph::from_edges(10, &e).unwrap()
    }

    /// Circular ladder on `2k` vertices.
    pub fn prism_k(k: usize) -> CubicGraph {
        let mut e = Vec::new();
        for i in 0..k {
            e.push((i, (i + 1) % k));
            e.push((k + i, k + (i + 1) % k));
            e.push((i, k + i));
        }
        CubicGraph::from_edges(2 * k, &e).unwrap()
    }

    /// Möbius ladder on `2k` vertices.
    pub fn mobius(k: usize) -> CubicGraph {
        let n = 2 * k;
        let mut e = Vec::new();
        for i in 0..n {
            e.push((i, (i + 1) % n));
        }
        for i in 0..k {
            e.push((i, i + k));
        }
        CubicGraph::from_edges(n, &e).unwrap()
    }

    /// 3-cube.
    pub fn cube() -> CubicGraph {
        let mut e = Vec::new();
        for v in 0..8usize {
            for b in 0..3 {
                let w = v ^ (1 << b);
                if v < w {
                    e.push((v, w));
                }
            }
        }
        CubicGraph::from_edges(8, &e).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_index_matches_edge_list() {
        let g = named::petersen();
        for (i, e) in g.edges().into_iter().enumerate() {
            assert_eq!(g.edge_index(e), Some(i));
            assert_eq!(g.edge_index((e.1, e.0)), Some(i));
        }
        assert_eq!(g.edge_index((0, 2)), None);
    }

    #[test]
    fn rejects_loops_and_multi_edges() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(0, 1))
        );
        assert!(CubicGraph::new(named::path(4)).is_err());
    }

    #[test]
    fn girth_of_named_graphs() {
        assert_eq!(named::k4().girth(), Some(3));
        assert_eq!(named::k33().girth(), Some(4));
        assert_eq!(named::petersen().girth(), Some(5));
        assert_eq!(named::cube().girth(), Some(4));
        assert_eq!(named::path(5).girth(), None);
        assert_eq!(named::cycle(7).girth(), Some(7));
    }

    #[test]
    fn without_vertices_renumbers() {
        let g = named::k4();
        let (h, map) = g.without_vertices(0b0010);
        assert_eq!(h.n(), 3);
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2)]);
        assert_eq!(h.m(), 3);
    }
}
