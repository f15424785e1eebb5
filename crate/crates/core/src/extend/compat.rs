//! Classification of every forest of `x` for a transformation pair.

use super::forest::{enumerate_consistent_forests, naive_witness, ConsistentForest};
use super::manual::find_rule;
use super::switch::{square_switch, SquareSwitch};
use super::symmetry::PairSymmetry;
use crate::template::{builtin, TransformationPair};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    Naive(ConsistentForest),
    Manual(&'static str),
    /// Eliminated by a square switch; every forest it can lead to is
    /// resolved.
    Switched(SquareSwitch, Vec<String>),
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct CompatEntry {
    pub forest: ConsistentForest,
    pub resolution: Resolution,
}

#[derive(Clone, Debug)]
pub struct CompatReport {
    pub pair: TransformationPair,
    pub entries: Vec<CompatEntry>,
    /// Orbits of the forests without a naive extension or switch, under
    /// the pair symmetry, as indices into `entries`.
    pub manual_classes: Vec<Vec<usize>>,
}

impl CompatReport {
    pub fn naive(&self) -> impl Iterator<Item = (&ConsistentForest, &ConsistentForest)> {
        self.entries.iter().filter_map(|e| match &e.resolution {
            Resolution::Naive(w) => Some((&e.forest, w)),
            _ => None,
        })
    }

    /// Forests needing a rule, with the rule if one is registered.
    pub fn manual(&self) -> impl Iterator<Item = (&ConsistentForest, Option<&'static str>)> {
        self.entries.iter().filter_map(|e| match e.resolution {
            Resolution::Manual(r) => Some((&e.forest, Some(r))),
            Resolution::Unresolved => Some((&e.forest, None)),
            _ => None,
        })
    }

    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(|e| e.resolution != Resolution::Unresolved)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "pair {}", self.pair.name).unwrap();
        for e in &self.entries {
            match &e.resolution {
                Resolution::Naive(w) => writeln!(s, "{} naive {}", e.forest, w),
                Resolution::Manual(r) => writeln!(s, "{} manual {}", e.forest, r),
                Resolution::Switched(sw, t) => writeln!(s, "{} switched {} -> {}", e.forest, sw, t.join(",")),
                Resolution::Unresolved => writeln!(s, "{} unresolved", e.forest),
            }
            .unwrap();
        }
        let switched = self
            .entries
            .iter()
            .filter(|e| matches!(e.resolution, Resolution::Switched(..)))
            .count();
        writeln!(s, "forests: {}", self.entries.len()).unwrap();
        writeln!(s, "naive: {}", self.naive().count()).unwrap();
        writeln!(s, "switched: {switched}").unwrap();
        writeln!(s, "manual: {}", self.manual_classes.len()).unwrap();
        writeln!(s, "status: {}", if self.is_complete() { "complete" } else { "INCOMPLETE" }).unwrap();
        s
    }
}

pub fn check_compatibility(pair: &TransformationPair) -> CompatReport {
    let sym = PairSymmetry::of(pair);
    let is_square = pair.x == builtin::square();
    let forests = enumerate_consistent_forests(&pair.x);
    let direct = |f: &ConsistentForest| -> Resolution {
        if let Some(w) = naive_witness(f, &pair.y) {
            Resolution::Naive(w)
        } else if let Some(m) = find_rule(pair, &sym, f.labels()) {
            Resolution::Manual(m.rule.id)
        } else {
            Resolution::Unresolved
        }
    };
    let mut entries = Vec::new();
    for f in forests {
        let mut resolution = direct(&f);
        if resolution == Resolution::Unresolved && is_square {
            if let Some((sw, targets)) = square_switch(f.labels()) {
                if targets.iter().all(|t| resolved(pair, &sym, t, 4)) {
                    let names = targets.iter().map(|t| t.iter().map(|l| l.as_char()).collect()).collect();
                    resolution = Resolution::Switched(sw, names);
                }
            }
        }
        entries.push(CompatEntry { forest: f, resolution });
    }
    let pending: Vec<usize> = (0..entries.len())
        .filter(|&i| matches!(entries[i].resolution, Resolution::Manual(_) | Resolution::Unresolved))
        .collect();
    let labels: Vec<_> = pending.iter().map(|&i| entries[i].forest.labels().to_vec()).collect();
    let manual_classes = sym
        .classes(&pair.x, &labels)
        .into_iter()
        .map(|c| c.into_iter().map(|k| pending[k]).collect())
        .collect();
    CompatReport {
        pair: pair.clone(),
        entries,
        manual_classes,
    }
}

fn resolved(pair: &TransformationPair, sym: &PairSymmetry, labels: &[crate::decomp::Label], depth: usize) -> bool {
    let f = ConsistentForest::new(&pair.x, labels.to_vec()).expect("switch targets are consistent");
    if naive_witness(&f, &pair.y).is_some() || find_rule(pair, sym, labels).is_some() {
        return true;
    }
    depth > 0
        && match square_switch(labels) {
            Some((_, targets)) => targets.iter().all(|t| resolved(pair, sym, t, depth - 1)),
            None => false,
        }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manual_counts_per_pair() {
        let expected = [
            ("node-triangle", 0),
            ("node-k23", 0),
            ("node-petv", 1),
            ("square-claw-square", 0),
            ("square-twin-house", 2),
            ("edge-domino", 0),
            ("square-domino", 1),
        ];
        for (name, k) in expected {
            let r = check_compatibility(&builtin::pair(name).unwrap());
            assert_eq!(r.manual_classes.len(), k, "{name}");
            assert!(r.is_complete(), "{name}");
        }
    }

    #[test]
    fn report_text() {
        let r = check_compatibility(&builtin::pair("node-triangle").unwrap());
        let t = r.to_text();
        assert!(t.starts_with("pair node-triangle\n"));
        assert!(t.contains("\nmanual: 0\n"));
        assert!(t.ends_with("status: complete\n"));
    }

    #[test]
    fn unregistered_pair_is_incomplete() {
        let p = TransformationPair::new("edge-square", builtin::edge(), builtin::square()).unwrap();
        let r = check_compatibility(&p);
        assert!(!r.is_complete());
        assert_eq!(r.manual_classes.len(), 1);
        assert!(r.to_text().contains("status: INCOMPLETE"));
    }
}
