//! Templates and the transformations `G[X -> Y]` they define.
//!
//! A template is a core graph whose vertices have degree at most 3, padded
//! with pendant outer vertices so every core vertex has degree 3. Outer
//! vertices carry labels `0..k`; two templates with the same number of
//! outer vertices form a transformation pair, matched label by label.

pub mod builtin;

use crate::graph::{
    automorphisms, edge, for_each_subgraph, is_three_connected, Bits, Edge, Graph, GraphError,
    SubcubicGraph,
};
use std::fmt;
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TemplateError {
    #[error("core vertex {vertex} would have degree {degree}")]
    BadDegree { vertex: usize, degree: usize },
    #[error("outer label {label} attached to missing core vertex {vertex}")]
    BadAttachment { label: usize, vertex: usize },
    #[error("templates have {x} and {y} outer vertices")]
    OuterCountMismatch { x: usize, y: usize },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("result is not simple: core vertex {core} receives two edges from host vertex {host}")]
    NonSimpleResult { core: usize, host: usize },
    #[error("malformed template text: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TemplateGraph {
    core_n: usize,
    core_edges: Vec<Edge>,
    attach: Vec<usize>,
}

impl TemplateGraph {
    /// Template from core edges and the core vertex each outer label hangs
    /// from. Core vertices must end up with degree exactly 3.
    pub fn from_parts(core_n: usize, core_edges: &[Edge], attach: Vec<usize>) -> Result<Self, TemplateError> {
        let mut deg = vec![0usize; core_n];
        let mut edges: Vec<Edge> = Vec::with_capacity(core_edges.len());
        for &(a, b) in core_edges {
            if a >= core_n || b >= core_n {
                return Err(GraphError::VertexOutOfRange(a.max(b)).into());
            }
            if a == b {
                return Err(GraphError::SelfLoop(a).into());
            }
            edges.push(edge(a, b));
            deg[a] += 1;
            deg[b] += 1;
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::ParallelEdge(w[0].0, w[0].1).into());
        }
        for (label, &c) in attach.iter().enumerate() {
            if c >= core_n {
                return Err(TemplateError::BadAttachment { label, vertex: c });
            }
            deg[c] += 1;
        }
        if let Some(v) = (0..core_n).find(|&v| deg[v] != 3) {
            return Err(TemplateError::BadDegree {
                vertex: v,
                degree: deg[v],
            });
        }
        Ok(TemplateGraph {
            core_n,
            core_edges: edges,
            attach,
        })
    }

    pub fn from_core(core: &Graph, attach: Vec<usize>) -> Result<Self, TemplateError> {
        TemplateGraph::from_parts(core.n(), &core.edges(), attach)
    }

    pub fn core_n(&self) -> usize {
        self.core_n
    }

    pub fn outer_count(&self) -> usize {
        self.attach.len()
    }

    pub fn n(&self) -> usize {
        self.core_n + self.attach.len()
    }

    /// Template vertex id of outer label `i`.
    pub fn outer_vertex(&self, i: usize) -> usize {
        self.core_n + i
    }

    pub fn attach(&self) -> &[usize] {
        &self.attach
    }

    pub fn core_edges(&self) -> &[Edge] {
        &self.core_edges
    }

    /// Template edges: core edges in sorted order, then the outer edges in
    /// label order. Forest labellings are aligned with this list.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = self.core_edges.clone();
        out.extend(self.attach.iter().enumerate().map(|(i, &c)| (c, self.core_n + i)));
        out
    }

    pub fn edge_count(&self) -> usize {
        self.core_edges.len() + self.attach.len()
    }

    /// Index of the edge of outer label `i` in [`TemplateGraph::edges`].
    pub fn outer_edge_index(&self, i: usize) -> usize {
        self.core_edges.len() + i
    }

    pub fn core(&self) -> Result<Graph, GraphError> {
        Graph::from_edges(self.core_n, &self.core_edges)
    }

    pub fn graph(&self) -> Result<Graph, GraphError> {
        Graph::from_edges(self.n(), &self.edges())
    }

    /// Outer labels attached to core vertex `c`, ascending.
    pub fn labels_at(&self, c: usize) -> Vec<usize> {
        (0..self.attach.len()).filter(|&i| self.attach[i] == c).collect()
    }

    /// Automorphisms of the whole template as vertex permutations.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        automorphisms(&self.graph().expect("small template"))
    }

    /// The outer-label permutation induced by a template automorphism.
    pub fn outer_permutation(&self, aut: &[usize]) -> Vec<usize> {
        (0..self.outer_count())
            .map(|i| aut[self.outer_vertex(i)] - self.core_n)
            .collect()
    }

    pub fn to_text(&self) -> String {
        let edges: Vec<String> = self.core_edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let attach: Vec<String> = self.attach.iter().map(|c| c.to_string()).collect();
        format!("core={} edges={} attach={}", self.core_n, edges.join(","), attach.join(","))
    }

    pub fn from_text(s: &str) -> Result<Self, TemplateError> {
        let bad = |m: &str| TemplateError::Parse(format!("{m} in `{s}`"));
        let mut core_n = None;
        let mut edges = None;
        let mut attach = None;
        for field in s.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(|| bad("field without `=`"))?;
            match k {
                "core" => core_n = Some(v.parse::<usize>().map_err(|_| bad("bad core size"))?),
                "edges" => {
                    let mut es = Vec::new();
                    for tok in v.split(',').filter(|t| !t.is_empty()) {
                        let (a, b) = tok.split_once('-').ok_or_else(|| bad("bad edge"))?;
                        let a = a.parse().map_err(|_| bad("bad edge"))?;
                        let b = b.parse().map_err(|_| bad("bad edge"))?;
                        es.push((a, b));
                    }
                    edges = Some(es);
                }
                "attach" => {
                    let mut at = Vec::new();
                    for tok in v.split(',').filter(|t| !t.is_empty()) {
                        at.push(tok.parse().map_err(|_| bad("bad attachment"))?);
                    }
                    attach = Some(at);
                }
                _ => return Err(bad("unknown field")),
            }
        }
        TemplateGraph::from_parts(
            core_n.ok_or_else(|| bad("missing core"))?,
            &edges.unwrap_or_default(),
            attach.unwrap_or_default(),
        )
    }
}

impl fmt::Debug for TemplateGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TemplateGraph({})", self.to_text())
    }
}

/// Template whose outer vertices pad each core vertex to degree 3, labelled
/// in ascending core-vertex order.
pub fn make_template(core: &SubcubicGraph) -> TemplateGraph {
    let mut attach = Vec::new();
    for v in 0..core.n() {
        for _ in core.degree(v)..3 {
            attach.push(v);
        }
    }
    TemplateGraph::from_core(core, attach).expect("subcubic core pads to degree 3")
}

/// Placement of a template in a host: `phi` maps core vertices, `psi`
/// maps outer labels to host vertices outside the image of `phi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
}

impl Embedding {
    pub fn image_mask(&self) -> u64 {
        self.phi.iter().fold(0u64, |m, &v| m | 1 << v)
    }

    /// Host edge corresponding to template edge `(a, b)`.
    pub fn host_edge(&self, t: &TemplateGraph, (a, b): Edge) -> Edge {
        let map = |x: usize| {
            if x < t.core_n() {
                self.phi[x]
            } else {
                self.psi[x - t.core_n()]
            }
        };
        edge(map(a), map(b))
    }

    /// Checks that `phi` is injective, core edges map to host edges, and
    /// for every core vertex its host neighbourhood is exactly the image of
    /// its core neighbours plus its outer labels. That makes the image an
    /// induced copy of the core.
    pub fn validate(&self, host: &Graph, t: &TemplateGraph) -> Result<(), TemplateError> {
        let bad = |m: String| Err(TemplateError::InvalidEmbedding(m));
        if self.phi.len() != t.core_n() || self.psi.len() != t.outer_count() {
            return bad("wrong number of images".into());
        }
        let n = host.n();
        if let Some(&v) = self.phi.iter().chain(&self.psi).find(|&&v| v >= n) {
            return bad(format!("host vertex {v} out of range"));
        }
        let image = self.image_mask();
        if image.count_ones() as usize != t.core_n() {
            return bad("core map is not injective".into());
        }
        let mut expected = vec![0u64; t.core_n()];
        for &(a, b) in t.core_edges() {
            expected[a] |= 1 << self.phi[b];
            expected[b] |= 1 << self.phi[a];
        }
        for (i, &c) in t.attach().iter().enumerate() {
            let w = self.psi[i];
            if image >> w & 1 == 1 {
                return bad(format!("outer label {i} maps into the core image"));
            }
            if expected[c] >> w & 1 == 1 {
                return bad(format!("two outer labels at core vertex {c} share host vertex {w}"));
            }
            expected[c] |= 1 << w;
        }
        for c in 0..t.core_n() {
            if host.row(self.phi[c]) != expected[c] {
                return bad(format!("neighbourhood of host vertex {} does not match core vertex {c}", self.phi[c]));
            }
        }
        Ok(())
    }
}

/// Calls `visit` with every embedding of the template's core as an induced
/// subgraph, with outer labels at each core vertex matched to the remaining
/// host neighbours in ascending order.
pub fn for_each_embedding<F>(host: &Graph, t: &TemplateGraph, mut visit: F)
where
    F: FnMut(Embedding) -> ControlFlow<()>,
{
    let core = t.core().expect("template core fits the host bound");
    for_each_subgraph(host, &core, true, |phi| {
        let image = phi.iter().fold(0u64, |m, &v| m | 1 << v);
        let mut psi = vec![usize::MAX; t.outer_count()];
        for c in 0..t.core_n() {
            let labels = t.labels_at(c);
            let outside: Vec<usize> = Bits(host.row(phi[c]) & !image).collect();
            if outside.len() != labels.len() {
                return ControlFlow::Continue(());
            }
            for (&l, &w) in labels.iter().zip(&outside) {
                psi[l] = w;
            }
        }
        visit(Embedding { phi: phi.to_vec(), psi })
    });
}

pub fn find_embeddings(host: &Graph, t: &TemplateGraph) -> Vec<Embedding> {
    let mut out = Vec::new();
    for_each_embedding(host, t, |e| {
        out.push(e);
        ControlFlow::Continue(())
    });
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct TransformationPair {
    pub name: String,
    pub x: TemplateGraph,
    pub y: TemplateGraph,
}

impl fmt::Debug for TransformationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TransformationPair({})", self.name)
    }
}

impl TransformationPair {
    pub fn new(name: &str, x: TemplateGraph, y: TemplateGraph) -> Result<Self, TemplateError> {
        if x.outer_count() != y.outer_count() {
            return Err(TemplateError::OuterCountMismatch {
                x: x.outer_count(),
                y: y.outer_count(),
            });
        }
        Ok(TransformationPair {
            name: name.to_string(),
            x,
            y,
        })
    }

    /// The same pair read from `y` to `x`.
    pub fn reversed(&self) -> TransformationPair {
        TransformationPair {
            name: format!("{}^-1", self.name),
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    pub fn is_reduction(&self) -> bool {
        self.x.n() > self.y.n()
    }

    pub fn to_text(&self) -> String {
        format!("pair {}\nx {}\ny {}\n", self.name, self.x.to_text(), self.y.to_text())
    }

    pub fn from_text(s: &str) -> Result<Self, TemplateError> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let bad = |m: &str| TemplateError::Parse(m.to_string());
        let name = lines
            .next()
            .and_then(|l| l.strip_prefix("pair "))
            .ok_or_else(|| bad("expected `pair <name>`"))?
            .trim();
        let x = lines.next().and_then(|l| l.strip_prefix("x ")).ok_or_else(|| bad("expected `x ...`"))?;
        let y = lines.next().and_then(|l| l.strip_prefix("y ")).ok_or_else(|| bad("expected `y ...`"))?;
        TransformationPair::new(name, TemplateGraph::from_text(x)?, TemplateGraph::from_text(y)?)
    }
}

/// Result of replacing the image of `x` by a fresh copy of `y`'s core.
#[derive(Clone, Debug)]
pub struct Transformed {
    pub graph: Graph,
    /// Old host vertex to new id; `None` for removed core vertices.
    pub host_map: Vec<Option<usize>>,
    /// Embedding of `y` in the result. Its core occupies the highest ids.
    pub embedding: Embedding,
}

/// Computes `G[X -> Y]`: removes the core image, appends the core of `y`,
/// and joins each `y` outer edge to the host vertex its label maps to.
pub fn apply_transformation(host: &Graph, pair: &TransformationPair, emb: &Embedding) -> Result<Transformed, TemplateError> {
    emb.validate(host, &pair.x)?;
    let (mut g, host_map) = host.without_vertices(emb.image_mask());
    let base = g.add_vertices(pair.y.core_n())?;
    for &(a, b) in pair.y.core_edges() {
        g.try_add_edge(base + a, base + b)?;
    }
    let mut psi = Vec::with_capacity(pair.y.outer_count());
    for (i, &c) in pair.y.attach().iter().enumerate() {
        let w = host_map[emb.psi[i]].expect("outer images lie outside the core");
        if g.has_edge(base + c, w) {
            return Err(TemplateError::NonSimpleResult {
                core: c,
                host: emb.psi[i],
            });
        }
        g.try_add_edge(base + c, w)?;
        psi.push(w);
    }
    Ok(Transformed {
        graph: g,
        host_map,
        embedding: Embedding {
            phi: (base..base + pair.y.core_n()).collect(),
            psi,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateFailure {
    Embedding(String),
    NotSimple,
    NotThreeConnected,
}

/// Checks that a reduction is usable: the embedding is an induced copy,
/// and the result is simple and 3-connected.
pub fn reduction_gate(host: &Graph, pair: &TransformationPair, emb: &Embedding) -> Result<Transformed, GateFailure> {
    match apply_transformation(host, pair, emb) {
        Ok(t) if is_three_connected(&t.graph) => Ok(t),
        Ok(_) => Err(GateFailure::NotThreeConnected),
        Err(TemplateError::NonSimpleResult { .. }) => Err(GateFailure::NotSimple),
        Err(e) => Err(GateFailure::Embedding(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_isomorphic, named};

    #[test]
    fn make_template_pads_in_core_order() {
        let path = SubcubicGraph::new(named::path(3)).unwrap();
        let t = make_template(&path);
        assert_eq!(t.attach(), &[0, 0, 1, 2, 2]);
        assert_eq!(t.n(), 8);
        assert_eq!(t.edges()[2], (0, 3));
    }

    #[test]
    fn text_round_trip() {
        for p in builtin::builtin_pairs() {
            assert_eq!(TransformationPair::from_text(&p.to_text()).unwrap(), p);
        }
        assert!(TemplateGraph::from_text("core=2 edges=0-1 attach=0").is_err());
    }

    #[test]
    fn triangle_extension_of_k4_is_prism() {
        let pair = builtin::pair("node-triangle").unwrap();
        let host = named::k4();
        let emb = find_embeddings(&host, &pair.x).remove(0);
        let t = apply_transformation(&host, &pair, &emb).unwrap();
        assert!(is_isomorphic(&t.graph, &named::prism()));
        assert!(t.embedding.validate(&t.graph, &pair.y).is_ok());
    }

    #[test]
    fn petersen_minus_vertex_collapses_to_multigraph() {
        let pair = builtin::pair("node-petv").unwrap().reversed();
        let host = named::petersen();
        let embs = find_embeddings(&host, &pair.x);
        assert_eq!(embs.len(), 10 * 12);
        assert!(matches!(
            apply_transformation(&host, &pair, &embs[0]),
            Err(TemplateError::NonSimpleResult { .. })
        ));
        assert_eq!(reduction_gate(&host, &pair, &embs[0]).unwrap_err(), GateFailure::NotSimple);
    }

    #[test]
    fn invalid_embeddings_rejected() {
        let pair = builtin::pair("node-triangle").unwrap();
        let host = named::k4();
        let bad = Embedding { phi: vec![0], psi: vec![1, 1, 2] };
        assert!(apply_transformation(&host, &pair, &bad).is_err());
        let bad = Embedding { phi: vec![0], psi: vec![1, 2, 0] };
        assert!(apply_transformation(&host, &pair, &bad).is_err());
    }
}
