//! Randomised greedy search. A tree is grown by always expanding a tree
//! vertex that can still gain outside neighbours, which pushes tree degrees
//! towards 3, then repaired by edge swaps that lower the number of
//! complement edges joining vertices of different tree degree. A spanning
//! tree is valid exactly when that number is zero.

use super::{decomposition_from_tree, ThreeDecomposition};
use crate::graph::{Edge, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) fn search(g: &Graph, restarts: usize, seed: u64) -> Option<(ThreeDecomposition, usize)> {
    let n = g.n();
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(r as u64));
        let mut tree = grow(g, &mut rng);
        if let Ok(d) = decomposition_from_tree(g, &tree.edges()) {
            return Some((d, r));
        }
        if repair(g, &mut tree, &mut rng, 20 * n) {
            let d = decomposition_from_tree(g, &tree.edges()).expect("repaired tree has zero defects");
            return Some((d, r));
        }
    }
    None
}

struct Tree {
    adj: Vec<u64>,
}

impl Tree {
    fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (u, &row) in self.adj.iter().enumerate() {
            for v in crate::graph::Bits(row) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn deg(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    fn add(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    fn remove(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    /// Vertices on the tree path from `a` to `b`.
    fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        parent[a] = a;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for w in crate::graph::Bits(self.adj[v]) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![b];
        let mut x = b;
        while x != a {
            x = parent[x];
            path.push(x);
        }
        path
    }
}

fn grow(g: &Graph, rng: &mut ChaCha8Rng) -> Tree {
    let n = g.n();
    let mut tree = Tree { adj: vec![0; n] };
    let root = rng.gen_range(0..n);
    let mut inside = 1u64 << root;
    let mut active = vec![root];
    while inside.count_ones() as usize != n {
        // Prefer the active vertex with the most outside neighbours.
        let best = active
            .iter()
            .map(|&v| (g.row(v) & !inside).count_ones())
            .max()
            .unwrap_or(0);
        let cands: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&v| (g.row(v) & !inside).count_ones() == best)
            .collect();
        let &v = cands.choose(rng).expect("connected graph keeps a frontier");
        for w in crate::graph::Bits(g.row(v) & !inside) {
            tree.add(v, w);
            inside |= 1 << w;
            active.push(w);
        }
        active.retain(|&x| g.row(x) & !inside != 0);
    }
    tree
}

fn defects(g: &Graph, tree: &Tree) -> usize {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| tree.adj[u] >> v & 1 == 0 && tree.deg(u) != tree.deg(v))
        .count()
}

fn repair(g: &Graph, tree: &mut Tree, rng: &mut ChaCha8Rng, steps: usize) -> bool {
    let mut score = defects(g, tree);
    for _ in 0..steps {
        if score == 0 {
            return true;
        }
        let bad: Vec<Edge> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| tree.adj[u] >> v & 1 == 0 && tree.deg(u) != tree.deg(v))
            .collect();
        let &(a, b) = bad.choose(rng).expect("positive score has a defect");
        let path = tree.path(a, b);
        let k = rng.gen_range(0..path.len() - 1);
        let (x, y) = (path[k], path[k + 1]);
        tree.add(a, b);
        tree.remove(x, y);
        let next = defects(g, tree);
        if next <= score || rng.gen_bool(0.1) {
            score = next;
        } else {
            tree.remove(a, b);
            tree.add(x, y);
        }
    }
    score == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::verify;
    use crate::generate::Catalogue;

    #[test]
    fn defect_count_zero_iff_valid() {
        let g = crate::graph::named::prism();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let t = grow(&g, &mut rng);
            let ok = decomposition_from_tree(&g, &t.edges()).is_ok();
            assert_eq!(ok, defects(&g, &t) == 0);
        }
    }

    #[test]
    fn heuristic_solves_catalogue_to_twelve() {
        let cat = Catalogue::up_to(12);
        for g in cat.all() {
            let (d, _) = search(g, 200, 0).expect("heuristic finds a decomposition");
            verify(g, &d).unwrap();
        }
    }
}
