//! Carrying a decomposition of a host across an extension.

use super::forest::{naive_witness, ConsistencyError, ConsistentForest};
use super::manual::find_rule;
use super::switch::{switch_host, SquareSwitch};
use super::symmetry::PairSymmetry;
use crate::decomp::{decomposition_from_tree, verify, Label, ThreeDecomposition, UnionFind, Violation};
use crate::graph::{Edge, Graph};
use crate::template::{apply_transformation, builtin, Embedding, TemplateError, TemplateGraph, TransformationPair, Transformed};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error("host labelling is not a 3-decomposition: {0}")]
    HostInvalid(Violation),
    #[error("restriction to the template is not 3-consistent: {0}")]
    Inconsistent(ConsistencyError),
    #[error("forest {forest} of {pair} has no extension rule")]
    NoRule { pair: String, forest: String },
    #[error("rule {rule} has no variant for forest {forest} in this host")]
    ManualCaseUnresolved { rule: &'static str, forest: String },
    #[error("lifted labelling is not a 3-decomposition: {0}")]
    Invalid(Violation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftRule {
    Naive,
    Manual { rule: &'static str, variant: usize },
}

impl fmt::Display for LiftRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftRule::Naive => f.write_str("naive"),
            LiftRule::Manual { rule, variant } => write!(f, "{rule}#{variant}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Lifted {
    pub transformed: Transformed,
    pub decomposition: ThreeDecomposition,
    /// The forest of `x` met in the host before any switch.
    pub forest: String,
    /// Switches applied to the host decomposition, in order.
    pub switches: Vec<SquareSwitch>,
    pub rule: LiftRule,
}

/// Labels of the template's edges read off a host decomposition.
pub fn restrict(host: &Graph, d: &ThreeDecomposition, t: &TemplateGraph, emb: &Embedding) -> Result<ConsistentForest, ConsistencyError> {
    let labels: Vec<Label> = t
        .edges()
        .into_iter()
        .map(|e| {
            let i = host.edge_index(emb.host_edge(t, e)).expect("embedding maps edges to edges");
            d.labels[i]
        })
        .collect();
    ConsistentForest::new(t, labels)
}

/// Union-find over host vertices joined by tree edges that avoid the core.
fn exterior(host: &Graph, d: &ThreeDecomposition, emb: &Embedding) -> UnionFind {
    let image = emb.image_mask();
    let mut uf = UnionFind::new(host.n());
    for (a, b) in d.tree_edges(host) {
        if image >> a & 1 == 0 && image >> b & 1 == 0 {
            uf.union(a, b);
        }
    }
    uf
}

/// Extends `d` from `host` to `host[x -> y]`. Uses a naive witness when one
/// exists, then the manual rules, and for the square the switches.
pub fn lift_decomposition(host: &Graph, d: &ThreeDecomposition, pair: &TransformationPair, emb: &Embedding) -> Result<Lifted, LiftError> {
    verify(host, d).map_err(LiftError::HostInvalid)?;
    emb.validate(host, &pair.x)?;
    let sym = PairSymmetry::of(pair);
    let is_square = pair.x == builtin::square();
    let mut d = d.clone();
    let mut switches = Vec::new();
    let first = restrict(host, &d, &pair.x, emb).map_err(LiftError::Inconsistent)?.label_string();
    loop {
        let fx = restrict(host, &d, &pair.x, emb).map_err(LiftError::Inconsistent)?;
        if let Some(w) = naive_witness(&fx, &pair.y) {
            return finish(host, &d, pair, emb, w.labels(), LiftRule::Naive, first, switches);
        }
        if let Some(m) = find_rule(pair, &sym, fx.labels()) {
            let mut uf = exterior(host, &d, emb);
            let roots: Vec<usize> = emb.psi.iter().map(|&v| uf.find(v)).collect();
            let Some((variant, y)) = m.choose(pair, &|i, j| roots[i] == roots[j]) else {
                return Err(LiftError::ManualCaseUnresolved {
                    rule: m.rule.id,
                    forest: fx.label_string(),
                });
            };
            let rule = LiftRule::Manual { rule: m.rule.id, variant };
            return finish(host, &d, pair, emb, &y, rule, first, switches);
        }
        if is_square {
            if let Some((s, nd)) = switch_host(host, &d, emb) {
                switches.push(s);
                d = nd;
                continue;
            }
        }
        return Err(LiftError::NoRule {
            pair: pair.name.clone(),
            forest: fx.label_string(),
        });
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    host: &Graph,
    d: &ThreeDecomposition,
    pair: &TransformationPair,
    emb: &Embedding,
    y_labels: &[Label],
    rule: LiftRule,
    forest: String,
    switches: Vec<SquareSwitch>,
) -> Result<Lifted, LiftError> {
    let tr = apply_transformation(host, pair, emb)?;
    let image = emb.image_mask();
    let mut tree: Vec<Edge> = d
        .tree_edges(host)
        .into_iter()
        .filter(|&(a, b)| image >> a & 1 == 0 && image >> b & 1 == 0)
        .map(|(a, b)| (tr.host_map[a].unwrap(), tr.host_map[b].unwrap()))
        .collect();
    for (e, &l) in pair.y.edges().into_iter().zip(y_labels) {
        if l == Label::T {
            tree.push(tr.embedding.host_edge(&pair.y, e));
        }
    }
    let decomposition = decomposition_from_tree(&tr.graph, &tree).map_err(LiftError::Invalid)?;
    Ok(Lifted {
        transformed: tr,
        decomposition,
        forest,
        switches,
        rule,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::enumerate_decompositions;
    use crate::generate::Catalogue;
    use crate::graph::named;
    use crate::template::{builtin, find_embeddings};
    use std::collections::BTreeSet;

    #[test]
    fn k4_to_prism() {
        let pair = builtin::pair("node-triangle").unwrap();
        let g = named::k4();
        let d = decomposition_from_tree(&g, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let emb = find_embeddings(&g, &pair.x).remove(0);
        let out = lift_decomposition(&g, &d, &pair, &emb).unwrap();
        assert_eq!(out.forest, "tcc");
        assert_eq!(verify(&out.transformed.graph, &out.decomposition), Ok(()));
    }

    #[test]
    fn every_lift_to_ten_vertices_verifies() {
        let cat = Catalogue::up_to(8);
        let mut rules = BTreeSet::new();
        for pair in builtin::builtin_pairs() {
            for g in cat.all() {
                let embs = find_embeddings(g, &pair.x);
                if embs.is_empty() {
                    continue;
                }
                for d in enumerate_decompositions(g).unwrap() {
                    for emb in &embs {
                        match lift_decomposition(g, &d, &pair, emb) {
                            Ok(l) => {
                                assert_eq!(verify(&l.transformed.graph, &l.decomposition), Ok(()));
                                rules.insert(l.rule.to_string());
                            }
                            Err(LiftError::ManualCaseUnresolved { .. }) => assert_eq!(pair.name, "square-domino"),
                            Err(e) => panic!("{}: {e}", pair.name),
                        }
                    }
                }
            }
        }
        assert!(rules.contains("naive"));
        assert!(rules.iter().any(|r| r.starts_with("petv-ttm")));
    }
}
