//! The seven transformation pairs used by the reduction pipeline, each
//! stored in extension direction (smaller template first).
//!
//! Vertex names used in comments: the square is `u1 u2 u4 u3` with edges
//! `u1u2, u1u3, u2u4, u3u4`, core ids `u_i -> i-1`, outer `v_i` at `u_i`.
//! The edge template has `v1, v3` at one end and `v2, v4` at the other.

use super::{TemplateGraph, TransformationPair};

fn t(core_n: usize, edges: &[(usize, usize)], attach: &[usize]) -> TemplateGraph {
    TemplateGraph::from_parts(core_n, edges, attach.to_vec()).expect("builtin template is well formed")
}

pub fn node() -> TemplateGraph {
    t(1, &[], &[0, 0, 0])
}

pub fn triangle() -> TemplateGraph {
    t(3, &[(0, 1), (0, 2), (1, 2)], &[0, 1, 2])
}

/// `K_{2,3}` with sides `{0, 1}` and `{2, 3, 4}`.
pub fn k23() -> TemplateGraph {
    t(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], &[2, 3, 4])
}

/// Petersen graph minus one vertex. With outer cycle `o0..o4`, spokes
/// `o_k i_k` and inner pentagram `i_k i_{k+2}`, `o0` is removed and the
/// core ids are `o1 o2 o3 o4 i0 i1 i2 i3 i4`.
pub fn petersen_minus_vertex() -> TemplateGraph {
    t(
        9,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 6),
            (6, 8),
            (8, 5),
            (5, 7),
            (7, 4),
        ],
        &[0, 3, 4],
    )
}

pub fn square() -> TemplateGraph {
    t(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &[0, 1, 2, 3])
}

pub fn edge() -> TemplateGraph {
    t(2, &[(0, 1)], &[0, 1, 0, 1])
}

/// Two squares sharing the edge `u5u6`: `u1u2` on top, `u3u4` at the
/// bottom, `u1u5, u2u6, u5u3, u6u4`. Core ids `u_i -> i-1`.
pub fn domino() -> TemplateGraph {
    t(6, &[(0, 1), (0, 4), (1, 5), (4, 5), (4, 2), (5, 3), (2, 3)], &[0, 1, 2, 3])
}

/// `u1u2` with `u1u5, u2u6`, and both `u5, u6` joined to both `u3, u4`.
pub fn twin_house() -> TemplateGraph {
    t(6, &[(0, 1), (0, 4), (1, 5), (4, 2), (4, 3), (5, 2), (5, 3)], &[0, 1, 2, 3])
}

/// A square `q1 q2 q4 q3` whose vertices `q2, q3, q4` each reach a claw
/// centre through a private leaf. Outer labels sit at `q1` and at the
/// three leaves, so the square vertex without a leaf faces the outer
/// label of the square template it replaces, and the leaf of the
/// opposite square vertex faces the opposite outer label.
pub fn claw_square() -> TemplateGraph {
    // q1 q2 q3 q4 l2 l3 l4 z
    t(
        8,
        &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 7), (6, 7)],
        &[0, 4, 5, 6],
    )
}

/// The claw-square with the leafless square vertex at `q4` instead.
pub fn claw_square_flipped() -> TemplateGraph {
    // q1 q2 q3 q4 l1 l2 l3 z
    t(
        8,
        &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 4), (1, 5), (2, 6), (4, 7), (5, 7), (6, 7)],
        &[4, 5, 6, 3],
    )
}

pub fn template(name: &str) -> Option<TemplateGraph> {
    Some(match name {
        "node" => node(),
        "triangle" => triangle(),
        "k23" => k23(),
        "petv" => petersen_minus_vertex(),
        "square" => square(),
        "edge" => edge(),
        "domino" => domino(),
        "twin-house" => twin_house(),
        "claw-square" => claw_square(),
        _ => return None,
    })
}

pub const PAIR_NAMES: [&str; 7] = [
    "node-triangle",
    "node-k23",
    "node-petv",
    "square-claw-square",
    "square-twin-house",
    "edge-domino",
    "square-domino",
];

pub fn pair(name: &str) -> Option<TransformationPair> {
    if !PAIR_NAMES.contains(&name) {
        return None;
    }
    // Names are `<small>-<large>` and the small name never contains a dash.
    let (x, y) = name.split_once('-')?;
    let (x, y) = (template(x)?, template(y)?);
    Some(TransformationPair::new(name, x, y).expect("builtin pairs share outer counts"))
}

pub fn builtin_pairs() -> Vec<TransformationPair> {
    PAIR_NAMES.iter().map(|n| pair(n).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn cores_have_expected_shape() {
        let petv = petersen_minus_vertex().core().unwrap();
        assert_eq!((petv.n(), petv.m()), (9, 12));
        let (pv, _) = named::petersen().without_vertices(1);
        assert!(crate::graph::is_isomorphic(&pv, &petv));
        assert_eq!(domino().core().unwrap().girth(), Some(4));
        assert_eq!(claw_square().core().unwrap().m(), 10);
        assert!(crate::graph::is_isomorphic(
            &claw_square().core().unwrap(),
            &claw_square_flipped().core().unwrap()
        ));
        assert_eq!(builtin_pairs().len(), 7);
        for p in builtin_pairs() {
            assert!(p.x.n() < p.y.n(), "{}", p.name);
        }
    }
}
