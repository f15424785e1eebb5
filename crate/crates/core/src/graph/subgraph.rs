use super::{Bits, Graph};
use std::ops::ControlFlow;

/// First embedding of `pattern` into `host` in the search order, as the
/// map pattern vertex -> host vertex.
pub fn find_subgraph(host: &Graph, pattern: &Graph, induced: bool) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_subgraph(host, pattern, induced, |phi| {
        found = Some(phi.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// Calls `visit` for every injective homomorphism (or induced embedding)
/// of `pattern` into `host`. Pattern vertices are placed in breadth-first
/// order and host candidates are tried in ascending id order.
pub fn for_each_subgraph<F>(host: &Graph, pattern: &Graph, induced: bool, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let k = pattern.n();
    if k > host.n() {
        return;
    }
    if k == 0 {
        let _ = visit(&[]);
        return;
    }
    let order = bfs_order(pattern);
    let mut phi = vec![usize::MAX; k];
    let _ = extend(host, pattern, induced, &order, 0, &mut phi, 0, &mut visit);
}

fn bfs_order(p: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(p.n());
    let mut seen = 0u64;
    for root in 0..p.n() {
        if seen >> root & 1 == 1 {
            continue;
        }
        seen |= 1 << root;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for w in p.neighbors(v) {
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend<F>(
    host: &Graph,
    pattern: &Graph,
    induced: bool,
    order: &[usize],
    depth: usize,
    phi: &mut [usize],
    used: u64,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if depth == order.len() {
        return visit(phi);
    }
    let p = order[depth];
    let mut candidates = super::mask_upto(host.n()) & !used;
    let mut mapped_nbrs = 0u64;
    let mut mapped_non = 0u64;
    for &q in &order[..depth] {
        if pattern.has_edge(p, q) {
            candidates &= host.row(phi[q]);
            mapped_nbrs |= 1 << phi[q];
        } else {
            mapped_non |= 1 << phi[q];
        }
    }
    let need = pattern.degree(p);
    for h in Bits(candidates) {
        if host.degree(h) < need {
            continue;
        }
        if host.row(h) & mapped_nbrs != mapped_nbrs {
            continue;
        }
        if induced && host.row(h) & mapped_non != 0 {
            continue;
        }
        phi[p] = h;
        extend(host, pattern, induced, order, depth + 1, phi, used | 1 << h, visit)?;
    }
    phi[p] = usize::MAX;
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn brute_count(host: &Graph, pattern: &Graph, induced: bool) -> usize {
        // Enumerate all injective maps by recursion over pattern vertices.
        fn go(h: &Graph, p: &Graph, ind: bool, phi: &mut Vec<usize>, count: &mut usize) {
            let k = phi.len();
            if k == p.n() {
                for a in 0..k {
                    for b in a + 1..k {
                        let pe = p.has_edge(a, b);
                        let he = h.has_edge(phi[a], phi[b]);
                        if (pe && !he) || (ind && !pe && he) {
                            return;
                        }
                    }
                }
                *count += 1;
                return;
            }
            for v in 0..h.n() {
                if !phi.contains(&v) {
                    phi.push(v);
                    go(h, p, ind, phi, count);
                    phi.pop();
                }
            }
        }
        let mut c = 0;
        go(host, pattern, induced, &mut Vec::new(), &mut c);
        c
    }

    fn count(host: &Graph, pattern: &Graph, induced: bool) -> usize {
        let mut c = 0;
        for_each_subgraph(host, pattern, induced, |phi| {
            for a in 0..pattern.n() {
                for b in 0..pattern.n() {
                    if pattern.has_edge(a, b) {
                        assert!(host.has_edge(phi[a], phi[b]));
                    }
                }
            }
            c += 1;
            ControlFlow::Continue(())
        });
        c
    }

    #[test]
    fn counts_match_brute_force() {
        let hosts = [named::k4(), named::prism(), named::petersen(), named::k33(), named::cube()];
        let patterns = [named::cycle(3), named::cycle(4), named::path(4), named::cycle(5)];
        for h in &hosts {
            for p in &patterns {
                for induced in [false, true] {
                    assert_eq!(count(h, p, induced), brute_count(h, p, induced));
                }
            }
        }
    }

    #[test]
    fn triangle_in_k4_lowest_first() {
        assert_eq!(find_subgraph(&named::k4(), &named::cycle(3), true), Some(vec![0, 1, 2]));
        assert_eq!(find_subgraph(&named::petersen(), &named::cycle(4), false), None);
        // The 4-cycle of K4 is never induced.
        assert_eq!(find_subgraph(&named::k4(), &named::cycle(4), true), None);
        assert!(find_subgraph(&named::k4(), &named::cycle(4), false).is_some());
    }
}
