//! 3-decompositions: representation, verification, certificates and the
//! exhaustive solver.

mod certificate;
mod heuristic;
pub mod hist;
mod solver;

pub use certificate::{parse_certificate, write_certificate, Certificate, CertificateError};
pub use solver::{enumerate_decompositions, solve, SolveError, SolveOutcome, SolveStats};

use crate::graph::{edge, Edge, Graph};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    T,
    C,
    M,
}

impl Label {
    pub fn as_char(self) -> char {
        match self {
            Label::T => 't',
            Label::C => 'c',
            Label::M => 'm',
        }
    }

    pub fn from_char(c: char) -> Option<Label> {
        match c.to_ascii_lowercase() {
            't' => Some(Label::T),
            'c' => Some(Label::C),
            'm' => Some(Label::M),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Edge labels aligned with [`Graph::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThreeDecomposition {
    pub labels: Vec<Label>,
}

impl ThreeDecomposition {
    pub fn new(labels: Vec<Label>) -> Self {
        ThreeDecomposition { labels }
    }

    pub fn edges_with(&self, g: &Graph, l: Label) -> Vec<Edge> {
        g.edges()
            .into_iter()
            .zip(&self.labels)
            .filter(|&(_, &x)| x == l)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn tree_edges(&self, g: &Graph) -> Vec<Edge> {
        self.edges_with(g, Label::T)
    }

    pub fn label_of(&self, g: &Graph, a: usize, b: usize) -> Option<Label> {
        g.edge_index(edge(a, b)).map(|i| self.labels[i])
    }

    /// Number of vertices of tree degree 2. Zero means the tree is a
    /// homeomorphically irreducible spanning tree.
    pub fn tree_degree_two_count(&self, g: &Graph) -> usize {
        let mut deg = vec![0usize; g.n()];
        for (u, v) in self.tree_edges(g) {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.iter().filter(|&&d| d == 2).count()
    }

    pub fn label_string(&self) -> String {
        self.labels.iter().map(|l| l.as_char()).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("{found} labels for {expected} edges")]
    LabelCount { expected: usize, found: usize },
    #[error("graph is not cubic")]
    NotCubic,
    #[error("tree has {found} edges, a spanning tree needs {expected}")]
    TreeEdgeCount { expected: usize, found: usize },
    #[error("tree edge {0}-{1} closes a cycle")]
    TreeCycle(usize, usize),
    #[error("tree does not reach vertex {0}")]
    TreeDisconnected(usize),
    #[error("vertex {vertex} has {degree} cycle edges")]
    CycleDegree { vertex: usize, degree: usize },
    #[error("vertex {vertex} has {degree} matching edges")]
    MatchingDegree { vertex: usize, degree: usize },
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("tree edge {0}-{1} listed twice")]
    DuplicateTreeEdge(usize, usize),
    #[error("complement has a path of length ≥ 2 through vertex {0}")]
    PathComponent(usize),
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Clone for UnionFind {
    fn clone(&self) -> Self {
        UnionFind {
            parent: self.parent.clone(),
        }
    }
}

/// Checks the invariants in order: label count, spanning tree, 2-regular
/// cycle part, matching part. The first violation is returned.
pub fn verify(g: &Graph, d: &ThreeDecomposition) -> Result<(), Violation> {
    let edges = g.edges();
    if d.labels.len() != edges.len() {
        return Err(Violation::LabelCount {
            expected: edges.len(),
            found: d.labels.len(),
        });
    }
    if !g.is_cubic() {
        return Err(Violation::NotCubic);
    }
    let n = g.n();
    let tree: Vec<Edge> = edges
        .iter()
        .zip(&d.labels)
        .filter(|&(_, &l)| l == Label::T)
        .map(|(&e, _)| e)
        .collect();
    check_spanning_tree(n, &tree)?;
    let mut cdeg = vec![0usize; n];
    let mut mdeg = vec![0usize; n];
    for (&(u, v), &l) in edges.iter().zip(&d.labels) {
        match l {
            Label::C => {
                cdeg[u] += 1;
                cdeg[v] += 1;
            }
            Label::M => {
                mdeg[u] += 1;
                mdeg[v] += 1;
            }
            Label::T => {}
        }
    }
    for v in 0..n {
        if cdeg[v] != 0 && cdeg[v] != 2 {
            return Err(Violation::CycleDegree {
                vertex: v,
                degree: cdeg[v],
            });
        }
    }
    for v in 0..n {
        if mdeg[v] > 1 {
            return Err(Violation::MatchingDegree {
                vertex: v,
                degree: mdeg[v],
            });
        }
    }
    Ok(())
}

fn check_spanning_tree(n: usize, tree: &[Edge]) -> Result<(), Violation> {
    if tree.len() + 1 != n {
        return Err(Violation::TreeEdgeCount {
            expected: n.saturating_sub(1),
            found: tree.len(),
        });
    }
    let mut uf = UnionFind::new(n);
    for &(u, v) in tree {
        if !uf.union(u, v) {
            return Err(Violation::TreeCycle(u, v));
        }
    }
    for v in 1..n {
        if uf.find(v) != uf.find(0) {
            return Err(Violation::TreeDisconnected(v));
        }
    }
    Ok(())
}

/// Builds the decomposition determined by a spanning tree: complement
/// components that are cycles go to C, single edges to M. Any complement
/// component that is a longer path rejects the tree.
pub fn decomposition_from_tree(g: &Graph, tree: &[Edge]) -> Result<ThreeDecomposition, Violation> {
    let edges = g.edges();
    let n = g.n();
    if !g.is_cubic() {
        return Err(Violation::NotCubic);
    }
    let mut in_tree = vec![false; edges.len()];
    for &(a, b) in tree {
        let Some(i) = g.edge_index((a, b)) else {
            return Err(Violation::NotAnEdge(a, b));
        };
        if in_tree[i] {
            let (u, v) = edges[i];
            return Err(Violation::DuplicateTreeEdge(u, v));
        }
        in_tree[i] = true;
    }
    let mut sorted: Vec<Edge> = tree.iter().map(|&(a, b)| edge(a, b)).collect();
    sorted.sort();
    check_spanning_tree(n, &sorted)?;
    let mut rest = vec![0usize; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if !in_tree[i] {
            rest[u] += 1;
            rest[v] += 1;
        }
    }
    let mut labels = Vec::with_capacity(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        labels.push(if in_tree[i] {
            Label::T
        } else {
            // A complement edge lies on a cycle iff both ends have two
            // complement edges, and is an isolated edge iff both have one.
            // Mixed degrees mean a longer path.
            match (rest[u], rest[v]) {
                (2, 2) => Label::C,
                (1, 1) => Label::M,
                (1, _) => return Err(Violation::PathComponent(v)),
                _ => return Err(Violation::PathComponent(u)),
            }
        });
    }
    let d = ThreeDecomposition::new(labels);
    verify(g, &d)?;
    Ok(d)
}
