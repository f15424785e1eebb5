use super::{Bits, Graph};

pub fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let all = super::mask_upto(n);
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        for v in Bits(frontier) {
            next |= g.row(v);
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & all == all
}

/// True iff `g` has at least four vertices and no vertex cut of size at most
/// two. Local connectivities are computed as unit-capacity flows in the
/// vertex-split digraph and only need to reach three.
pub fn is_three_connected(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 || !is_connected(g) {
        return false;
    }
    let mut net = SplitNetwork::new(g);
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) && net.disjoint_paths(s, t, 3) < 3 {
                return false;
            }
        }
    }
    true
}

struct Arc {
    to: usize,
    cap: u8,
}

struct SplitNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    n: usize,
}

impl SplitNetwork {
    // Node 2v is v-in, 2v+1 is v-out.
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut net = SplitNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); 2 * n],
            n,
        };
        for v in 0..n {
            net.add(2 * v, 2 * v + 1);
        }
        for (u, v) in g.edges() {
            net.add(2 * u + 1, 2 * v);
            net.add(2 * v + 1, 2 * u);
        }
        net
    }

    fn add(&mut self, a: usize, b: usize) {
        self.out[a].push(self.arcs.len());
        self.arcs.push(Arc { to: b, cap: 1 });
        self.out[b].push(self.arcs.len());
        self.arcs.push(Arc { to: a, cap: 0 });
    }

    fn reset(&mut self) {
        for (i, a) in self.arcs.iter_mut().enumerate() {
            a.cap = if i % 2 == 0 { 1 } else { 0 };
        }
    }

    /// Number of internally disjoint s-t paths, capped at `limit`.
    fn disjoint_paths(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.reset();
        let src = 2 * s + 1;
        let dst = 2 * t;
        let mut flow = 0;
        let mut pred = vec![usize::MAX; 2 * self.n];
        let mut queue = std::collections::VecDeque::new();
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            queue.push_back(src);
            let mut reached = false;
            while let Some(x) = queue.pop_front() {
                if x == dst {
                    reached = true;
                    break;
                }
                for &ai in &self.out[x] {
                    let arc = &self.arcs[ai];
                    if arc.cap > 0 && arc.to != src && pred[arc.to] == usize::MAX {
                        pred[arc.to] = ai;
                        queue.push_back(arc.to);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut x = dst;
            while x != src {
                let ai = pred[x];
                self.arcs[ai].cap -= 1;
                self.arcs[ai ^ 1].cap += 1;
                x = self.arcs[ai ^ 1].to;
            }
            flow += 1;
        }
        flow
    }
}
