use super::heuristic;
use super::{verify, Label, ThreeDecomposition};
use crate::graph::{is_connected, Graph};
use crate::search::{self, End, Mode, Problem};
use std::ops::ControlFlow;
use thiserror::Error;

/// Environment variable seeding the randomised restarts.
pub const SEED_VAR: &str = "CUBIC3DEC_SEED";

pub const HEURISTIC_RESTARTS: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph is not connected")]
    Disconnected,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Restart on which the heuristic succeeded.
    pub heuristic_restart: Option<usize>,
    /// Nodes visited by the exhaustive search.
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Found(ThreeDecomposition, SolveStats),
    /// The node budget ran out before a decomposition was found.
    Unknown(SolveStats),
}

impl SolveOutcome {
    pub fn decomposition(&self) -> Option<&ThreeDecomposition> {
        match self {
            SolveOutcome::Found(d, _) => Some(d),
            SolveOutcome::Unknown(_) => None,
        }
    }
}

pub(crate) fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}

fn check_input(g: &Graph) -> Result<(), SolveError> {
    if !g.is_cubic() {
        return Err(SolveError::NotCubic);
    }
    if !is_connected(g) {
        return Err(SolveError::Disconnected);
    }
    Ok(())
}

fn host_problem(g: &Graph) -> Problem {
    Problem::new(g.n(), g.edges(), Mode::Spanning)
}

/// Finds a 3-decomposition. Randomised greedy restarts come first, then
/// exhaustive label branching limited to `budget` search nodes.
pub fn solve(g: &Graph, budget: Option<u64>) -> Result<SolveOutcome, SolveError> {
    check_input(g)?;
    let mut stats = SolveStats::default();
    if let Some((d, restart)) = heuristic::search(g, HEURISTIC_RESTARTS, seed_from_env()) {
        stats.heuristic_restart = Some(restart);
        return Ok(SolveOutcome::Found(d, stats));
    }
    let (found, end, nodes) = exhaustive(g, budget);
    stats.nodes = nodes;
    match found {
        Some(d) => Ok(SolveOutcome::Found(d, stats)),
        None if end == End::Budget => Ok(SolveOutcome::Unknown(stats)),
        None => panic!("exhaustive search found no 3-decomposition of a connected cubic graph {g:?}"),
    }
}

/// Exhaustive search only, without the heuristic.
pub(crate) fn exhaustive(g: &Graph, budget: Option<u64>) -> (Option<ThreeDecomposition>, End, u64) {
    let p = host_problem(g);
    let mut found = None;
    let out = search::run(&p, budget, |labels| {
        let d = ThreeDecomposition::new(labels.to_vec());
        debug_assert!(verify(g, &d).is_ok());
        found = Some(d);
        ControlFlow::Break(())
    });
    (found, out.end, out.nodes)
}

/// Every 3-decomposition of `g`, each exactly once.
pub fn enumerate_decompositions(g: &Graph) -> Result<Vec<ThreeDecomposition>, SolveError> {
    check_input(g)?;
    let p = host_problem(g);
    let mut all = Vec::new();
    search::run(&p, None, |labels: &[Label]| {
        all.push(ThreeDecomposition::new(labels.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::decomposition_from_tree;
    use crate::generate::Catalogue;
    use crate::graph::{named, Edge};
    use std::collections::BTreeSet;

    /// Every spanning tree whose complement splits into cycles and single
    /// edges, by trying all (n-1)-subsets of the edges.
    fn brute_force_trees(g: &Graph) -> BTreeSet<Vec<Edge>> {
        let edges = g.edges();
        let k = g.n() - 1;
        let mut out = BTreeSet::new();
        let mut pick = Vec::new();
        fn go(edges: &[Edge], from: usize, k: usize, pick: &mut Vec<Edge>, g: &Graph, out: &mut BTreeSet<Vec<Edge>>) {
            if pick.len() == k {
                if decomposition_from_tree(g, pick).is_ok() {
                    out.insert(pick.clone());
                }
                return;
            }
            for i in from..edges.len() {
                if edges.len() - i < k - pick.len() {
                    break;
                }
                pick.push(edges[i]);
                go(edges, i + 1, k, pick, g, out);
                pick.pop();
            }
        }
        go(&edges, 0, k, &mut pick, g, &mut out);
        out
    }

    #[test]
    fn enumeration_matches_brute_force_up_to_eight() {
        let cat = Catalogue::up_to(8);
        for g in cat.all() {
            let found: BTreeSet<Vec<Edge>> = enumerate_decompositions(g)
                .unwrap()
                .iter()
                .map(|d| d.tree_edges(g))
                .collect();
            let all = enumerate_decompositions(g).unwrap();
            assert_eq!(found.len(), all.len(), "duplicate labelling");
            assert_eq!(found, brute_force_trees(g));
        }
    }

    #[test]
    fn exhaustive_alone_solves_small_catalogue() {
        let cat = Catalogue::up_to(12);
        for g in cat.all() {
            let (d, end, _) = exhaustive(g, None);
            assert_eq!(end, End::Stopped);
            verify(g, &d.unwrap()).unwrap();
        }
    }

    #[test]
    fn solve_named_graphs() {
        for g in [named::k4(), named::k33(), named::petersen(), named::cube(), named::mobius(7), named::prism_k(9)] {
            let out = solve(&g, None).unwrap();
            verify(&g, out.decomposition().unwrap()).unwrap();
        }
    }

    #[test]
    fn input_errors() {
        assert_eq!(solve(&named::cycle(4), None), Err(SolveError::NotCubic));
        let two = Graph::from_edges(
            8,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)],
        )
        .unwrap();
        assert_eq!(solve(&two, None), Err(SolveError::Disconnected));
    }

    #[test]
    fn tiny_budget_reports_unknown_or_solves() {
        let g = named::petersen();
        let (d, end, nodes) = exhaustive(&g, Some(1));
        assert!(d.is_none() || end == End::Stopped);
        assert!(nodes <= 2);
    }
}
