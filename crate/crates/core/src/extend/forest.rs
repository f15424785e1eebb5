//! 3-consistent forests of a template graph and naive extendability.

use crate::decomp::{Label, UnionFind};
use crate::graph::{edge, Edge};
use crate::search::{self, Mode, Problem};
use crate::template::TemplateGraph;
use std::fmt;
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConsistencyError {
    #[error("expected {expected} edge labels, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("tree edges close a cycle at edge {0}")]
    TreeCycle(usize),
    #[error("tree component of vertex {0} has no outer vertex")]
    Unanchored(usize),
    #[error("complement component of vertex {0} is not a vertex, an edge, a cycle or a path between outer vertices")]
    BadComponent(usize),
    #[error("edge {edge} is labelled {found} but the tree determines {expected}")]
    LabelMismatch { edge: usize, found: Label, expected: Label },
}

/// Label of the edge at each outer vertex, indexed by outer label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub Vec<Label>);

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A 3-consistent labelling of a template's edges, aligned with
/// [`TemplateGraph::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConsistentForest {
    template: TemplateGraph,
    labels: Vec<Label>,
}

impl ConsistentForest {
    /// Validates a full labelling.
    pub fn new(template: &TemplateGraph, labels: Vec<Label>) -> Result<Self, ConsistencyError> {
        let tree: Vec<bool> = labels.iter().map(|&l| l == Label::T).collect();
        if labels.len() != template.edge_count() {
            return Err(ConsistencyError::WrongLength {
                expected: template.edge_count(),
                found: labels.len(),
            });
        }
        let derived = derive_labels(template, &tree)?;
        if let Some(i) = (0..labels.len()).find(|&i| labels[i] != derived[i]) {
            return Err(ConsistencyError::LabelMismatch {
                edge: i,
                found: labels[i],
                expected: derived[i],
            });
        }
        Ok(ConsistentForest {
            template: template.clone(),
            labels,
        })
    }

    /// The forest determined by a set of tree edges.
    pub fn from_tree(template: &TemplateGraph, tree: &[bool]) -> Result<Self, ConsistencyError> {
        let labels = derive_labels(template, tree)?;
        Ok(ConsistentForest {
            template: template.clone(),
            labels,
        })
    }

    pub fn parse(template: &TemplateGraph, s: &str) -> Option<Self> {
        let labels: Option<Vec<Label>> = s.chars().map(Label::from_char).collect();
        ConsistentForest::new(template, labels?).ok()
    }

    pub fn template(&self) -> &TemplateGraph {
        &self.template
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_string(&self) -> String {
        self.labels.iter().map(|l| l.as_char()).collect()
    }

    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let edges = self.template.edges();
        (0..edges.len()).filter(|&i| self.labels[i] == Label::T).map(|i| edges[i]).collect()
    }

    pub fn assignment(&self) -> Assignment {
        let t = &self.template;
        Assignment((0..t.outer_count()).map(|i| self.labels[t.outer_edge_index(i)]).collect())
    }

    /// Block index of every outer label under the tree components, with
    /// blocks numbered by first occurrence.
    pub fn outer_partition(&self) -> Vec<usize> {
        let t = &self.template;
        let mut uf = UnionFind::new(t.n());
        for (a, b) in self.tree_edges() {
            uf.union(a, b);
        }
        let roots: Vec<usize> = (0..t.outer_count()).map(|i| uf.find(t.outer_vertex(i))).collect();
        canonical_blocks(&roots)
    }
}

impl fmt::Display for ConsistentForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label_string())
    }
}

/// Renumbers arbitrary block keys by first occurrence.
pub(crate) fn canonical_blocks<K: PartialEq + Copy>(keys: &[K]) -> Vec<usize> {
    let mut seen: Vec<K> = Vec::new();
    keys.iter()
        .map(|k| match seen.iter().position(|s| s == k) {
            Some(i) => i,
            None => {
                seen.push(*k);
                seen.len() - 1
            }
        })
        .collect()
}

/// Derives C and M from a tree edge set, checking 3-consistency directly
/// on components.
fn derive_labels(t: &TemplateGraph, tree: &[bool]) -> Result<Vec<Label>, ConsistencyError> {
    let edges = t.edges();
    if tree.len() != edges.len() {
        return Err(ConsistencyError::WrongLength {
            expected: edges.len(),
            found: tree.len(),
        });
    }
    let n = t.n();
    let is_outer = |v: usize| v >= t.core_n();
    let mut uf = UnionFind::new(n);
    for (i, &(a, b)) in edges.iter().enumerate() {
        if tree[i] && !uf.union(a, b) {
            return Err(ConsistencyError::TreeCycle(i));
        }
    }
    let mut anchored = vec![false; n];
    for v in t.core_n()..n {
        let r = uf.find(v);
        anchored[r] = true;
    }
    if let Some(v) = (0..n).find(|&v| !anchored[uf.find(v)]) {
        return Err(ConsistencyError::Unanchored(v));
    }

    let mut rest = UnionFind::new(n);
    let mut deg = vec![0usize; n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if !tree[i] {
            rest.union(a, b);
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    let mut comp_v = vec![0usize; n];
    let mut comp_e = vec![0usize; n];
    for v in 0..n {
        comp_v[rest.find(v)] += 1;
    }
    for (i, &(a, _)) in edges.iter().enumerate() {
        if !tree[i] {
            comp_e[rest.find(a)] += 1;
        }
    }
    let mut labels = vec![Label::T; edges.len()];
    for v in 0..n {
        let r = rest.find(v);
        let (cv, ce) = (comp_v[r], comp_e[r]);
        let ok = match ce {
            0 | 1 => true,
            _ if ce == cv => deg[v] == 2,
            _ if ce + 1 == cv => match deg[v] {
                1 => is_outer(v),
                2 => true,
                _ => false,
            },
            _ => false,
        };
        if !ok {
            return Err(ConsistencyError::BadComponent(v));
        }
    }
    for (i, &(a, _)) in edges.iter().enumerate() {
        if !tree[i] {
            labels[i] = if comp_e[rest.find(a)] == 1 { Label::M } else { Label::C };
        }
    }
    Ok(labels)
}

fn template_problem(t: &TemplateGraph) -> Problem {
    Problem::new(t.n(), t.edges(), Mode::Forest)
}

/// Every 3-consistent forest of the template, sorted by labels.
pub fn enumerate_consistent_forests(t: &TemplateGraph) -> Vec<ConsistentForest> {
    let p = template_problem(t);
    let mut out = Vec::new();
    search::run(&p, None, |labels| {
        out.push(ConsistentForest::new(t, labels.to_vec()).expect("search yields consistent forests"));
        ControlFlow::Continue(())
    });
    out.sort_by(|a, b| a.labels.cmp(&b.labels));
    out
}

/// A 3-consistent forest of `t` realising `f`, if one exists. Also used
/// for templates beyond the host size bound.
pub fn realise_assignment(t: &TemplateGraph, f: &Assignment, budget: Option<u64>) -> Realisation {
    let mut p = template_problem(t);
    for (i, &l) in f.0.iter().enumerate() {
        p.fixed[t.outer_edge_index(i)] = Some(l);
    }
    first_solution(t, &p, budget)
}

/// As `realise_assignment`, branching on the edges in `first` (as template
/// edges) before any other.
pub(crate) fn realise_with_priority(t: &TemplateGraph, f: &Assignment, budget: Option<u64>, first: &[Edge]) -> Realisation {
    let mut p = template_problem(t);
    for (i, &l) in f.0.iter().enumerate() {
        p.fixed[t.outer_edge_index(i)] = Some(l);
    }
    let index: std::collections::HashMap<Edge, usize> = p.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut order: Vec<usize> = first.iter().map(|e| index[&edge(e.0, e.1)]).collect();
    let mut seen = vec![false; p.edges.len()];
    order.retain(|&e| !std::mem::replace(&mut seen[e], true));
    order.extend(p.order.iter().copied().filter(|&e| !seen[e]));
    p.order = order;
    first_solution(t, &p, budget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realisation {
    Found(ConsistentForest),
    None,
    /// The node budget ran out.
    Unknown,
}

fn first_solution(t: &TemplateGraph, p: &Problem, budget: Option<u64>) -> Realisation {
    let mut found = None;
    let out = search::run(p, budget, |labels| {
        found = Some(labels.to_vec());
        ControlFlow::Break(())
    });
    match (found, out.end) {
        (Some(l), _) => Realisation::Found(ConsistentForest::new(t, l).expect("search yields consistent forests")),
        (None, search::End::Budget) => Realisation::Unknown,
        (None, _) => Realisation::None,
    }
}

/// A forest of `y` with the same assignment as `fx` whose tree components
/// group the outer labels exactly as those of `fx` do.
pub fn naive_witness(fx: &ConsistentForest, y: &TemplateGraph) -> Option<ConsistentForest> {
    assert_eq!(fx.template.outer_count(), y.outer_count(), "templates share outer labels");
    let mut p = template_problem(y);
    let f = fx.assignment();
    let blocks = fx.outer_partition();
    for i in 0..y.outer_count() {
        p.fixed[y.outer_edge_index(i)] = Some(f.0[i]);
        if f.0[i] == Label::T {
            p.blocks[y.outer_vertex(i)] = Some(blocks[i]);
        }
    }
    match first_solution(y, &p, None) {
        Realisation::Found(w) => {
            debug_assert!(w.assignment() == f && w.outer_partition() == blocks);
            Some(w)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::builtin;
    use std::collections::BTreeSet;

    fn brute_force(t: &TemplateGraph) -> BTreeSet<Vec<Label>> {
        let m = t.edge_count();
        (0u32..1 << m)
            .filter_map(|mask| {
                let tree: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
                ConsistentForest::from_tree(t, &tree).ok().map(|f| f.labels)
            })
            .collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for name in ["node", "triangle", "square", "edge", "k23", "twin-house", "domino"] {
            let t = builtin::template(name).unwrap();
            let fast: Vec<Vec<Label>> = enumerate_consistent_forests(&t).into_iter().map(|f| f.labels).collect();
            let set: BTreeSet<Vec<Label>> = fast.iter().cloned().collect();
            assert_eq!(set.len(), fast.len(), "{name}: duplicates");
            assert_eq!(set, brute_force(&t), "{name}");
        }
    }

    #[test]
    fn node_and_square_counts() {
        let node = enumerate_consistent_forests(&builtin::node());
        let kinds: BTreeSet<String> = node.iter().map(|f| f.label_string()).collect();
        let expected: BTreeSet<String> = ["tcc", "ctc", "cct", "ttm", "tmt", "mtt", "ttt"].map(String::from).into();
        assert_eq!(kinds, expected);
        assert_eq!(enumerate_consistent_forests(&builtin::square()).len(), 39);
    }

    #[test]
    fn checker_rejects_bad_forests() {
        let sq = builtin::square();
        // Path of three complement edges inside the square.
        let tree = [false, false, true, false, true, true, true, true];
        assert!(matches!(ConsistentForest::from_tree(&sq, &tree), Err(ConsistencyError::BadComponent(_))));
        let all = [true; 8];
        assert!(matches!(ConsistentForest::from_tree(&sq, &all), Err(ConsistencyError::TreeCycle(_))));
        let node = builtin::node();
        assert!(matches!(
            ConsistentForest::from_tree(&node, &[false; 3]),
            Err(ConsistencyError::Unanchored(0))
        ));
        assert!(ConsistentForest::parse(&node, "tcm").is_none());
    }

    #[test]
    fn naive_witness_examples() {
        let tri = builtin::triangle();
        let node = builtin::node();
        let ttt = ConsistentForest::parse(&node, "ttt").unwrap();
        let w = naive_witness(&ttt, &tri).unwrap();
        assert_eq!(w.assignment(), ttt.assignment());
        assert_eq!(w.outer_partition(), vec![0, 0, 0]);
        let ttm = ConsistentForest::parse(&node, "ttm").unwrap();
        assert!(naive_witness(&ttm, &builtin::petersen_minus_vertex()).is_none());
        // C-path through the edge with both other outer edges in one tree.
        let edge = builtin::edge();
        let f = ConsistentForest::parse(&edge, "ccctt").unwrap();
        assert_eq!(f.outer_partition(), vec![0, 1, 2, 3]);
        assert!(naive_witness(&f, &builtin::domino()).is_some());
    }
}
