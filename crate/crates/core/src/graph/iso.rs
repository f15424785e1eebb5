use super::Graph;
use std::ops::ControlFlow;

/// Adjacency rows of the canonically relabelled graph. Two graphs are
/// isomorphic iff their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.n).expect("canonical form within size bound");
        for u in 0..self.n {
            for v in super::Bits(self.rows[u] & !super::mask_upto(u + 1)) {
                g.try_add_edge(u, v).expect("canonical rows are simple");
            }
        }
        g
    }
}

/// Canonical form by individualisation and refinement: every leaf of the
/// search tree yields a discrete ordered partition, and the smallest
/// relabelled adjacency among all leaves is kept.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labelling(g).0
}

/// Canonical form together with a labelling `perm` such that
/// `g.permuted(&perm)` is the canonical graph.
pub fn canonical_labelling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    let mut init: Vec<Vec<usize>> = Vec::new();
    for d in 0..=n {
        let cell: Vec<usize> = (0..n).filter(|&v| g.degree(v) == d).collect();
        if !cell.is_empty() {
            init.push(cell);
        }
    }
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(g, init, &mut best);
    let (rows, perm) = best.unwrap_or_default();
    (CanonicalForm { n, rows }, perm)
}

fn search(g: &Graph, mut cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(g, &mut cells);
    if cells.len() == g.n() {
        let mut perm = vec![0; g.n()];
        for (i, c) in cells.iter().enumerate() {
            perm[c[0]] = i;
        }
        let mut rows = vec![0u64; g.n()];
        for (u, v) in g.edges() {
            rows[perm[u]] |= 1 << perm[v];
            rows[perm[v]] |= 1 << perm[u];
        }
        if best.as_ref().map_or(true, |(b, _)| rows < *b) {
            *best = Some((rows, perm));
        }
        return;
    }
    let target = (0..cells.len())
        .filter(|&i| cells[i].len() > 1)
        .min_by_key(|&i| (cells[i].len(), i))
        .expect("non-discrete partition has a non-singleton cell");
    for &v in &cells[target] {
        let mut next = cells.clone();
        let rest: Vec<usize> = cells[target].iter().copied().filter(|&w| w != v).collect();
        next[target] = vec![v];
        next.insert(target + 1, rest);
        search(g, next, best);
    }
}

/// Splits cells by neighbour counts into each other cell until the
/// partition is equitable. Pieces are ordered by count, so the result only
/// depends on the graph structure and the input order of cells.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let mut mask = 0u64;
            for &v in &cells[s] {
                mask |= 1 << v;
            }
            let mut i = 0;
            while i < cells.len() {
                if cells[i].len() > 1 {
                    let mut keyed: Vec<(u32, usize)> = cells[i]
                        .iter()
                        .map(|&v| ((g.row(v) & mask).count_ones(), v))
                        .collect();
                    keyed.sort();
                    if keyed.first().map(|k| k.0) != keyed.last().map(|k| k.0) {
                        let mut pieces: Vec<Vec<usize>> = Vec::new();
                        let mut last = u32::MAX;
                        for (k, v) in keyed {
                            if k != last {
                                pieces.push(Vec::new());
                                last = k;
                            }
                            pieces.last_mut().unwrap().push(v);
                        }
                        let count = pieces.len();
                        cells.splice(i..=i, pieces);
                        i += count;
                        changed = true;
                        continue;
                    }
                }
                i += 1;
            }
            s += 1;
        }
        if !changed {
            return;
        }
    }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

/// All automorphisms of `g` as vertex permutations, identity first.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    super::for_each_subgraph(g, g, true, |phi| {
        out.push(phi.to_vec());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for g in [named::petersen(), named::prism(), named::cube(), named::mobius(5), named::k33()] {
            let c = canonical_form(&g);
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..g.n()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.permuted(&perm)), c);
            }
            let (_, lab) = canonical_labelling(&g);
            assert_eq!(g.permuted(&lab), c.graph());
        }
    }

    #[test]
    fn distinguishes_prism_and_k33() {
        assert!(!is_isomorphic(&named::prism(), &named::k33()));
        assert!(!is_isomorphic(&named::cube(), &named::mobius(4)));
        assert!(is_isomorphic(&named::prism_k(3), &named::prism()));
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphisms(&named::petersen()).len(), 120);
        assert_eq!(automorphisms(&named::k4()).len(), 24);
        assert_eq!(automorphisms(&named::cube()).len(), 48);
        assert_eq!(automorphisms(&named::prism()).len(), 12);
        assert_eq!(automorphisms(&named::k33()).len(), 72);
    }
}
