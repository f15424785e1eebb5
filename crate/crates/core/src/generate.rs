//! Exhaustive generation of connected cubic graphs up to isomorphism.
//!
//! Every connected cubic graph other than K4 arises from a smaller one by
//! one of three expansions: joining the subdivision vertices of two edges,
//! replacing an edge by a diamond, or attaching a K4 with one subdivided
//! edge to a subdivided edge. Graphs of order `n` are the closure of these
//! expansions applied to orders `n - 2`, `n - 4` and `n - 6`, with
//! isomorphism rejection by canonical form.

use crate::graph::{canonical_form, edge, named, CanonicalForm, CubicGraph, Edge, Graph};
use std::collections::BTreeSet;

/// Connected cubic graphs by order, `catalogue[i]` holding order `2i`.
pub struct Catalogue {
    levels: Vec<Vec<CubicGraph>>,
}

impl Catalogue {
    /// All connected cubic graphs of every even order up to `max_n`.
    pub fn up_to(max_n: usize) -> Self {
        let mut levels: Vec<Vec<CubicGraph>> = vec![Vec::new(); max_n / 2 + 1];
        if max_n >= 4 {
            levels[2] = vec![CubicGraph::new(canonical_form(&named::k4()).graph()).unwrap()];
        }
        for n in (6..=max_n).step_by(2) {
            let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
            for g in &levels[n / 2 - 1] {
                let edges = g.edges();
                for i in 0..edges.len() {
                    for j in i + 1..edges.len() {
                        seen.insert(canonical_form(&join_subdivisions(g, edges[i], edges[j])));
                    }
                }
            }
            if n >= 8 {
                for g in &levels[n / 2 - 2] {
                    for e in g.edges() {
                        seen.insert(canonical_form(&insert_diamond(g, e)));
                    }
                }
            }
            if n >= 10 {
                for g in &levels[n / 2 - 3] {
                    for e in g.edges() {
                        seen.insert(canonical_form(&attach_k4(g, e)));
                    }
                }
            }
            levels[n / 2] = seen
                .into_iter()
                .map(|c| CubicGraph::new(c.graph()).expect("expansions keep graphs cubic"))
                .collect();
        }
        Catalogue { levels }
    }

    /// Graphs of order `n` in canonical form, sorted by canonical rows.
    pub fn order(&self, n: usize) -> &[CubicGraph] {
        if n % 2 == 1 || n / 2 >= self.levels.len() {
            return &[];
        }
        &self.levels[n / 2]
    }

    pub fn all(&self) -> impl Iterator<Item = &CubicGraph> {
        self.levels.iter().flatten()
    }
}

pub fn connected_cubic_graphs(n: usize) -> Vec<CubicGraph> {
    Catalogue::up_to(n).order(n).to_vec()
}

fn subdivide(g: &mut Graph, e: Edge, w: usize) {
    g.remove_edge(e.0, e.1);
    g.try_add_edge(e.0, w).unwrap();
    g.try_add_edge(w, e.1).unwrap();
}

/// Subdivides two distinct edges and joins the new vertices.
pub fn join_subdivisions(g: &Graph, e1: Edge, e2: Edge) -> Graph {
    let mut h = g.clone();
    let x = h.add_vertices(2).unwrap();
    subdivide(&mut h, e1, x);
    subdivide(&mut h, edge(e2.0, e2.1), x + 1);
    h.try_add_edge(x, x + 1).unwrap();
    h
}

/// Replaces edge `xy` by the path `x d1 .. d4 y` through a diamond.
pub fn insert_diamond(g: &Graph, e: Edge) -> Graph {
    let mut h = g.clone();
    let d = h.add_vertices(4).unwrap();
    h.remove_edge(e.0, e.1);
    for (a, b) in [(e.0, d), (d, d + 1), (d, d + 2), (d + 1, d + 2), (d + 1, d + 3), (d + 2, d + 3), (d + 3, e.1)] {
        h.try_add_edge(a, b).unwrap();
    }
    h
}

/// Adds a K4 with one edge subdivided and joins that vertex to a new
/// vertex subdividing `e`.
pub fn attach_k4(g: &Graph, e: Edge) -> Graph {
    let mut h = g.clone();
    let k = h.add_vertices(6).unwrap();
    for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 1)] {
        h.try_add_edge(k + a, k + b).unwrap();
    }
    subdivide(&mut h, e, k + 5);
    h.try_add_edge(k + 4, k + 5).unwrap();
    h
}
