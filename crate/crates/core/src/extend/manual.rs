//! Extension rules for the forests that have no naive extension.
//!
//! A rule is keyed by a pair name and one forest of `x`. Forests in the
//! same orbit under the pair symmetry use the rule through the symmetry.
//! Each variant lists the full labelling of `y` and a condition on the
//! exterior partition: outer labels `i` and `j` are joined when their host
//! vertices lie in one component of the host tree with the core removed.
//! Outer labels may change from M to T, so the variant labels need not
//! realise the assignment of the forest.

use super::symmetry::{invert, map_labels, PairSymmetry};
use crate::decomp::Label;
use crate::template::TransformationPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    Always,
    /// Labels `i` and `j` are in different exterior components.
    Apart(usize, usize),
    /// At least one of the listed label pairs is joined.
    AnyJoined(&'static [(usize, usize)]),
}

impl Condition {
    pub fn holds(&self, joined: &dyn Fn(usize, usize) -> bool) -> bool {
        match *self {
            Condition::Always => true,
            Condition::Apart(i, j) => !joined(i, j),
            Condition::AnyJoined(pairs) => pairs.iter().any(|&(i, j)| joined(i, j)),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Variant {
    pub when: Condition,
    pub labels: &'static str,
}

#[derive(Clone, Copy, Debug)]
pub struct ManualRule {
    pub id: &'static str,
    pub pair: &'static str,
    pub forest: &'static str,
    pub variants: &'static [Variant],
}

// Template edge orders, for reading the tables:
// petv: o1o2 o1i0 o2o3 o2i1 o3o4 o3i2 o4i3 i0i1 i0i2 i1i3 i1i4 i2i4, outer 0..2
// twin-house: u1u2 u1u5 u2u6 u3u5 u3u6 u4u5 u4u6, outer 0..3
// domino: u1u2 u1u5 u2u6 u3u4 u3u5 u4u6 u5u6, outer 0..3
pub const RULES: &[ManualRule] = &[
    ManualRule {
        id: "petv-ttm",
        pair: "node-petv",
        forest: "ttm",
        // Everything but the five-cycle through the vertex of label 2.
        variants: &[Variant {
            when: Condition::Always,
            labels: "tttttttcccccttt",
        }],
    },
    ManualRule {
        id: "twin-house-opposite-m",
        pair: "square-twin-house",
        forest: "tmmttttt",
        variants: &[
            Variant {
                when: Condition::AnyJoined(&[(1, 2), (0, 3)]),
                labels: "mtttmmttttt",
            },
            Variant {
                when: Condition::AnyJoined(&[(1, 3), (0, 2)]),
                labels: "mttmttmtttt",
            },
        ],
    },
    ManualRule {
        id: "twin-house-m-fan",
        pair: "square-twin-house",
        forest: "mtttttmm",
        variants: &[Variant {
            when: Condition::Always,
            labels: "tttcccctttt",
        }],
    },
    ManualRule {
        id: "domino-bad",
        pair: "square-domino",
        forest: "ttmtmtmt",
        variants: &[
            Variant {
                when: Condition::Apart(2, 3),
                labels: "ccctttctttt",
            },
            Variant {
                when: Condition::Apart(0, 1),
                labels: "tttcccctttt",
            },
        ],
    },
];

pub(crate) fn parse_labels(s: &str) -> Vec<Label> {
    s.chars().map(|c| Label::from_char(c).expect("rule tables use t, c, m")).collect()
}

/// A rule matched to a concrete forest through a symmetry element.
pub struct Matched<'a> {
    pub rule: &'static ManualRule,
    sym: &'a PairSymmetry,
    element: usize,
}

impl Matched<'_> {
    /// The first variant whose condition holds, as `y` labels of the
    /// concrete forest, with its index.
    pub fn choose(&self, pair: &TransformationPair, joined: &dyn Fn(usize, usize) -> bool) -> Option<(usize, Vec<Label>)> {
        let back = invert(&self.sym.elements()[self.element].outer);
        let in_rule_frame = |i: usize, j: usize| joined(back[i], back[j]);
        let (k, v) = self
            .rule
            .variants
            .iter()
            .enumerate()
            .find(|(_, v)| v.when.holds(&in_rule_frame))?;
        let y_aut = &self.sym.elements()[self.element].y_aut;
        Some((k, map_labels(&pair.y, &invert(y_aut), &parse_labels(v.labels))))
    }
}

/// The rule for a forest of `pair.x`, if any.
pub fn find_rule<'a>(pair: &TransformationPair, sym: &'a PairSymmetry, labels: &[Label]) -> Option<Matched<'a>> {
    for rule in RULES.iter().filter(|r| r.pair == pair.name) {
        let target = parse_labels(rule.forest);
        for (i, g) in sym.elements().iter().enumerate() {
            if map_labels(&pair.x, &g.x_aut, labels) == target {
                return Some(Matched { rule, sym, element: i });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extend::forest::ConsistentForest;
    use crate::template::builtin;

    #[test]
    fn tables_are_well_formed() {
        for r in RULES {
            let pair = builtin::pair(r.pair).unwrap();
            assert!(ConsistentForest::parse(&pair.x, r.forest).is_some(), "{}", r.id);
            for v in r.variants {
                // Every variant is a 3-consistent forest of y in its own right.
                let f = ConsistentForest::parse(&pair.y, v.labels);
                assert!(f.is_some(), "{} {}", r.id, v.labels);
            }
        }
    }

    #[test]
    fn symmetric_forest_uses_rule() {
        let pair = builtin::pair("node-petv").unwrap();
        let sym = PairSymmetry::of(&pair);
        let l = parse_labels("mtt");
        let m = find_rule(&pair, &sym, &l).unwrap();
        assert_eq!(m.rule.id, "petv-ttm");
        let (_, y) = m.choose(&pair, &|_, _| false).unwrap();
        let f = ConsistentForest::new(&pair.y, y).unwrap();
        assert_eq!(f.outer_partition(), vec![0, 1, 1]);
    }
}
