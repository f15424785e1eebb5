//! Symmetries shared by both templates of a pair.

use crate::decomp::Label;
use crate::graph::edge;
use crate::template::{TemplateGraph, TransformationPair};
use std::collections::BTreeMap;

/// An outer-label permutation realised by automorphisms of both templates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryElement {
    pub outer: Vec<usize>,
    pub x_aut: Vec<usize>,
    pub y_aut: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PairSymmetry {
    elements: Vec<SymmetryElement>,
}

fn by_outer(t: &TemplateGraph) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut out = BTreeMap::new();
    for aut in t.automorphisms() {
        out.entry(t.outer_permutation(&aut)).or_insert(aut);
    }
    out
}

impl PairSymmetry {
    pub fn of(pair: &TransformationPair) -> Self {
        let xs = by_outer(&pair.x);
        let ys = by_outer(&pair.y);
        let elements = xs
            .into_iter()
            .filter_map(|(outer, x_aut)| {
                ys.get(&outer).map(|y_aut| SymmetryElement {
                    outer,
                    x_aut,
                    y_aut: y_aut.clone(),
                })
            })
            .collect();
        PairSymmetry { elements }
    }

    /// Elements in lexicographic order of the outer permutation, so the
    /// identity comes first.
    pub fn elements(&self) -> &[SymmetryElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Smallest image of an `x` labelling under the group.
    pub fn canonical(&self, x: &TemplateGraph, labels: &[Label]) -> Vec<Label> {
        self.elements
            .iter()
            .map(|g| map_labels(x, &g.x_aut, labels))
            .min()
            .expect("group contains the identity")
    }

    /// Groups labellings into orbits; each orbit lists indices ascending.
    pub fn classes(&self, x: &TemplateGraph, labellings: &[Vec<Label>]) -> Vec<Vec<usize>> {
        let mut orbits: BTreeMap<Vec<Label>, Vec<usize>> = BTreeMap::new();
        for (i, l) in labellings.iter().enumerate() {
            orbits.entry(self.canonical(x, l)).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = orbits.into_values().collect();
        out.sort();
        out
    }
}

/// Image of an edge labelling under a vertex automorphism: the edge
/// `aut(e)` receives the label of `e`.
pub fn map_labels(t: &TemplateGraph, aut: &[usize], labels: &[Label]) -> Vec<Label> {
    let edges = t.edges();
    let mut out = labels.to_vec();
    for (i, &(a, b)) in edges.iter().enumerate() {
        let j = edges
            .iter()
            .position(|&e| e == edge(aut[a], aut[b]))
            .expect("automorphism maps edges to edges");
        out[j] = labels[i];
    }
    out
}

pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::builtin;

    #[test]
    fn pair_group_orders() {
        let order = |name: &str| PairSymmetry::of(&builtin::pair(name).unwrap()).order();
        assert_eq!(order("node-triangle"), 6);
        assert_eq!(order("node-petv"), 6);
        assert_eq!(order("node-k23"), 6);
        assert_eq!(order("edge-domino"), 4);
        assert_eq!(order("square-domino"), 4);
        assert_eq!(order("square-twin-house"), 2);
        assert_eq!(order("square-claw-square"), 2);
    }

    #[test]
    fn twin_house_swaps_sides() {
        let s = PairSymmetry::of(&builtin::pair("square-twin-house").unwrap());
        assert_eq!(s.elements()[1].outer, vec![1, 0, 3, 2]);
        let x = builtin::square();
        let l: Vec<Label> = "ttmtmtmt".chars().map(|c| Label::from_char(c).unwrap()).collect();
        let img = map_labels(&x, &s.elements()[1].x_aut, &l);
        let s: String = img.iter().map(|l| l.as_char()).collect();
        assert_eq!(s, "tmtttmtm");
    }
}
