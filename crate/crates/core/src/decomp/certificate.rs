//! Plain-text certificates: a graph6 line followed by a line listing the
//! spanning-tree edges as `u-v` tokens in ascending order.

use super::{decomposition_from_tree, ThreeDecomposition, Violation};
use crate::graph::{edge, from_graph6, to_graph6, Edge, Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("line {line}: {source}")]
    Graph6 {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("line {line}: bad edge token `{token}`")]
    BadEdge { line: usize, token: String },
    #[error("line {line}: graph record without a tree line")]
    MissingTree { line: usize },
    #[error("certificate is not ASCII")]
    NotAscii,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub graph: Graph,
    pub tree: Vec<Edge>,
}

impl Certificate {
    pub fn new(g: &Graph, d: &ThreeDecomposition) -> Self {
        Certificate {
            graph: g.clone(),
            tree: d.tree_edges(g),
        }
    }

    /// Rebuilds and verifies the decomposition the tree determines.
    pub fn check(&self) -> Result<ThreeDecomposition, Violation> {
        decomposition_from_tree(&self.graph, &self.tree)
    }

    pub fn to_text(&self) -> String {
        let mut tree = self.tree.clone();
        tree.sort();
        let edges: Vec<String> = tree.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}\n{}\n", to_graph6(&self.graph), edges.join(" "))
    }
}

pub fn write_certificate(g: &Graph, d: &ThreeDecomposition) -> String {
    Certificate::new(g, d).to_text()
}

/// Parses a sequence of two-line records. Blank lines between records are
/// skipped.
pub fn parse_certificate(text: &str) -> Result<Vec<Certificate>, CertificateError> {
    if !text.is_ascii() {
        return Err(CertificateError::NotAscii);
    }
    let mut out = Vec::new();
    let mut lines = text.split('\n').enumerate().peekable();
    while let Some((i, line)) = lines.next() {
        if line.trim().is_empty() {
            continue;
        }
        let graph = from_graph6(line).map_err(|source| CertificateError::Graph6 { line: i + 1, source })?;
        let Some((j, tree_line)) = lines.next() else {
            return Err(CertificateError::MissingTree { line: i + 1 });
        };
        let tree = parse_edge_list(tree_line, j + 1)?;
        out.push(Certificate { graph, tree });
    }
    Ok(out)
}

fn parse_edge_list(line: &str, lineno: usize) -> Result<Vec<Edge>, CertificateError> {
    line.split_whitespace()
        .map(|tok| {
            let bad = || CertificateError::BadEdge {
                line: lineno,
                token: tok.to_string(),
            };
            let (a, b) = tok.split_once('-').ok_or_else(bad)?;
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.parse().map_err(|_| bad())?;
            Ok(edge(a, b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::decomposition_from_tree;
    use crate::graph::named;

    #[test]
    fn k4_star_round_trip() {
        let g = named::k4();
        let d = decomposition_from_tree(&g, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let text = write_certificate(&g, &d);
        assert_eq!(text, "C~\n0-1 0-2 0-3\n");
        let certs = parse_certificate(&text).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].check().unwrap(), d);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_certificate("C~\n0-1 0-x\n"), Err(CertificateError::BadEdge { line: 2, .. })));
        let empty = parse_certificate("C~\n").unwrap();
        assert!(matches!(empty[0].check(), Err(Violation::TreeEdgeCount { found: 0, .. })));
        assert!(matches!(parse_certificate("C~"), Err(CertificateError::MissingTree { line: 1 })));
        assert!(matches!(parse_certificate("C~~\n0-1\n"), Err(CertificateError::Graph6 { line: 1, .. })));
        let bad = parse_certificate("C~\n0-1 1-2 2-3\n").unwrap();
        assert!(matches!(bad[0].check(), Err(Violation::PathComponent(_))));
    }
}
