//! A 3CNF formula as a template whose assignment is realisable by a
//! 3-consistent forest exactly when the formula is satisfiable.
//!
//! Forced tree edges are subdivided, and the subdivision vertex carries an
//! outer vertex assigned `m`, so both halves must be tree edges. Each
//! variable is a pair of paths between `s_i` and `t_i` cut into blocks of
//! four vertices, one block per occurrence. The second and fourth vertex
//! of each block are joined to their partner on the other path by a forced
//! edge, the third vertex to the vertex of the clause, and the first to a
//! spine of forced edges ending in two outer vertices assigned `t`.
//! Gadgets are chained by `t_i s_{i+1}`, with outer vertices assigned `c`
//! at `s_1` and `t_n`.

use super::forest::{realise_with_priority, Assignment, ConsistentForest, Realisation};
use crate::decomp::Label;
use crate::graph::Edge;
use crate::template::TemplateGraph;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("clause {0} does not have exactly three literals")]
    NotThreeCnf(usize),
    #[error("variable {0} does not occur")]
    UnusedVariable(usize),
    #[error("formula has no clauses")]
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    fn dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.vars, self.clauses.len())?;
        for c in &self.clauses {
            writeln!(f, "{} {} {} 0", c[0].dimacs(), c[1].dimacs(), c[2].dimacs())?;
        }
        Ok(())
    }
}

impl Cnf {
    pub fn parse_dimacs(s: &str) -> Result<Cnf, SatError> {
        let mut vars = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for (k, line) in s.lines().enumerate() {
            let line = line.trim();
            let bad = |msg: &str| SatError::Parse {
                line: k + 1,
                msg: msg.to_string(),
            };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[0] != "cnf" {
                    return Err(bad("expected `p cnf <vars> <clauses>`"));
                }
                vars = Some(parts[1].parse::<usize>().map_err(|_| bad("bad variable count"))?);
                continue;
            }
            let n = vars.ok_or_else(|| bad("clause before header"))?;
            for tok in line.split_whitespace() {
                let x: i64 = tok.parse().map_err(|_| bad("bad literal"))?;
                if x == 0 {
                    let c: [Literal; 3] = current
                        .as_slice()
                        .try_into()
                        .map_err(|_| SatError::NotThreeCnf(clauses.len()))?;
                    clauses.push(c);
                    current.clear();
                    continue;
                }
                let var = x.unsigned_abs() as usize - 1;
                if var >= n {
                    return Err(bad("literal exceeds variable count"));
                }
                current.push(Literal { var, negated: x < 0 });
            }
        }
        if !current.is_empty() {
            return Err(SatError::Parse {
                line: s.lines().count(),
                msg: "unterminated clause".into(),
            });
        }
        Ok(Cnf {
            vars: vars.unwrap_or(0),
            clauses,
        })
    }

    pub fn eval(&self, values: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| values[l.var] != l.negated))
    }

    /// A satisfying assignment by trying all of them.
    pub fn brute_force(&self) -> Option<Vec<bool>> {
        assert!(self.vars < 32, "brute force is for small formulas");
        (0u32..1 << self.vars)
            .map(|m| (0..self.vars).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
            .find(|v| self.eval(v))
    }

    /// Positive and negative occurrence counts per variable.
    fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(0, 0); self.vars];
        for c in &self.clauses {
            for l in c {
                if l.negated {
                    occ[l.var].1 += 1;
                } else {
                    occ[l.var].0 += 1;
                }
            }
        }
        occ
    }

    /// Adds `x | x | !x` or `x | !x | !x` until every variable occurs
    /// equally often in both polarities.
    pub fn padded(&self) -> Cnf {
        let mut out = self.clone();
        for (v, (mut p, mut q)) in self.occurrences().into_iter().enumerate() {
            while p < q {
                out.clauses.push([Literal::pos(v), Literal::pos(v), Literal::neg(v)]);
                p += 2;
                q += 1;
            }
            while q < p {
                out.clauses.push([Literal::pos(v), Literal::neg(v), Literal::neg(v)]);
                p += 1;
                q += 2;
            }
        }
        out
    }
}

/// The template built from a padded formula together with the assignment
/// to realise.
#[derive(Clone, Debug)]
pub struct SatGadget {
    pub formula: Cnf,
    pub template: TemplateGraph,
    pub assignment: Assignment,
    /// Edges deciding the truth values, then the clause edges.
    decisions: Vec<Edge>,
}

impl SatGadget {
    /// Searches for a forest realising the assignment, branching on the
    /// variable paths first.
    pub fn realise(&self, budget: Option<u64>) -> Realisation {
        realise_with_priority(&self.template, &self.assignment, budget, &self.decisions)
    }
}

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<Edge>,
    attach: Vec<usize>,
    labels: Vec<Label>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    fn outer(&mut self, v: usize, l: Label) {
        self.attach.push(v);
        self.labels.push(l);
    }

    fn forced(&mut self, a: usize, b: usize) {
        let w = self.vertex();
        self.edge(a, w);
        self.edge(w, b);
        self.outer(w, Label::M);
    }
}

/// Builds the gadget for `f` after padding it.
pub fn sat_to_template(f: &Cnf) -> Result<SatGadget, SatError> {
    if f.clauses.is_empty() {
        return Err(SatError::Empty);
    }
    let f = f.padded();
    let occ = f.occurrences();
    if let Some(v) = (0..f.vars).find(|&v| occ[v].0 == 0) {
        return Err(SatError::UnusedVariable(v + 1));
    }
    let mut b = Builder::default();
    // first[v][side][j] and third[..] are the first and third vertex of
    // block j on the upper (0) or lower (1) path of variable v.
    let mut first = vec![[Vec::new(), Vec::new()]; f.vars];
    let mut decisions = Vec::new();
    let mut third = vec![[Vec::new(), Vec::new()]; f.vars];
    let mut prev_t = None;
    for v in 0..f.vars {
        let l = occ[v].0;
        let s = b.vertex();
        let t = b.vertex();
        match prev_t {
            None => b.outer(s, Label::C),
            Some(pt) => b.edge(pt, s),
        }
        let mut paths = [Vec::new(), Vec::new()];
        decisions.push((s, b.n));
        for (side, path) in paths.iter_mut().enumerate() {
            let mut last = s;
            for k in 0..4 * l {
                let x = b.vertex();
                b.edge(last, x);
                path.push(x);
                if k % 4 == 0 {
                    first[v][side].push(x);
                }
                if k % 4 == 2 {
                    third[v][side].push(x);
                }
                last = x;
            }
            b.edge(last, t);
        }
        for k in (1..4 * l).step_by(2) {
            b.forced(paths[0][k], paths[1][k]);
        }
        prev_t = Some(t);
    }
    b.outer(prev_t.expect("at least one variable"), Label::C);

    let mut used = vec![[0usize; 2]; f.vars];
    for c in &f.clauses {
        let cv = b.vertex();
        for l in c {
            let side = l.negated as usize;
            let j = used[l.var][side];
            used[l.var][side] += 1;
            decisions.push((cv, b.n));
            b.forced(cv, third[l.var][side][j]);
        }
    }

    let blocks: Vec<usize> = first.iter().flat_map(|f| f[0].iter().chain(&f[1]).copied()).collect();
    let spine: Vec<usize> = blocks.iter().map(|_| b.vertex()).collect();
    for (k, (&p, &x)) in spine.iter().zip(&blocks).enumerate() {
        b.forced(p, x);
        if k + 1 < spine.len() {
            b.forced(p, spine[k + 1]);
        }
    }
    b.outer(spine[0], Label::T);
    b.outer(*spine.last().unwrap(), Label::T);

    let template = TemplateGraph::from_parts(b.n, &b.edges, b.attach).expect("gadget vertices have degree 3");
    Ok(SatGadget {
        formula: f,
        template,
        assignment: Assignment(b.labels),
        decisions,
    })
}

/// A small template with a 3-consistent forest realising `f` in which the
/// two outer vertices assigned `t` share a tree component. Naive
/// extendability from it to a gadget is realisability of the gadget.
/// Needs exactly two `t` labels and an even number of `c` labels.
pub fn naive_source(f: &Assignment) -> Option<ConsistentForest> {
    let ts: Vec<usize> = (0..f.0.len()).filter(|&i| f.0[i] == Label::T).collect();
    let cs: Vec<usize> = (0..f.0.len()).filter(|&i| f.0[i] == Label::C).collect();
    let ms: Vec<usize> = (0..f.0.len()).filter(|&i| f.0[i] == Label::M).collect();
    if ts.len() != 2 || cs.len() % 2 != 0 {
        return None;
    }
    let k = ms.len() + cs.len() / 2;
    if k == 0 {
        return None;
    }
    let mut edges: Vec<Edge> = (1..k).map(|i| (i - 1, i)).collect();
    let mut attach = vec![0; f.0.len()];
    attach[ts[0]] = 0;
    attach[ts[1]] = k - 1;
    for (j, &m) in ms.iter().enumerate() {
        attach[m] = j;
    }
    for (r, pair) in cs.chunks(2).enumerate() {
        let b = k + r;
        edges.push((ms.len() + r, b));
        attach[pair[0]] = b;
        attach[pair[1]] = b;
    }
    let n = k + cs.len() / 2;
    let t = TemplateGraph::from_parts(n, &edges, attach).ok()?;
    let tree: Vec<bool> = t
        .edges()
        .iter()
        .enumerate()
        .map(|(i, _)| i < t.core_edges().len() || f.0[i - t.core_edges().len()] == Label::T)
        .collect();
    let forest = ConsistentForest::from_tree(&t, &tree).ok()?;
    (forest.assignment() == *f).then_some(forest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extend::forest::{naive_witness, Realisation};

    fn cnf(vars: usize, cl: &[[i64; 3]]) -> Cnf {
        let lit = |x: i64| Literal {
            var: x.unsigned_abs() as usize - 1,
            negated: x < 0,
        };
        Cnf {
            vars,
            clauses: cl.iter().map(|c| [lit(c[0]), lit(c[1]), lit(c[2])]).collect(),
        }
    }

    fn realisable(f: &Cnf) -> bool {
        let g = sat_to_template(f).unwrap();
        match g.realise(None) {
            Realisation::Found(_) => true,
            Realisation::None => false,
            Realisation::Unknown => unreachable!(),
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let f = cnf(3, &[[1, 2, 3], [-1, -2, -3]]);
        assert_eq!(Cnf::parse_dimacs(&f.to_string()).unwrap(), f);
        assert!(matches!(Cnf::parse_dimacs("p cnf 2 1\n1 2 0\n"), Err(SatError::NotThreeCnf(0))));
        assert!(Cnf::parse_dimacs("p cnf 1 1\n1 2 1 0\n").is_err());
    }

    #[test]
    fn padding_balances() {
        let f = cnf(3, &[[1, 2, 3], [-1, -2, -3], [1, 1, 2]]).padded();
        for (p, q) in f.occurrences() {
            assert_eq!(p, q);
        }
    }

    #[test]
    fn tautology_is_realisable() {
        let f = cnf(1, &[[1, 1, -1]]);
        assert_eq!(f.padded().clauses.len(), 2);
        assert!(realisable(&f));
    }

    #[test]
    fn small_formulas_agree() {
        assert!(realisable(&cnf(3, &[[1, 2, 3], [-1, -2, -3]])));
        // All eight sign patterns on one variable triple.
        let mut all = Vec::new();
        for m in 0..8 {
            let s = |i: i64| if m >> (i - 1) & 1 == 1 { -i } else { i };
            all.push([s(1), s(2), s(3)]);
        }
        let unsat = cnf(3, &all);
        assert!(unsat.brute_force().is_none());
        assert!(!realisable(&unsat));
    }

    #[test]
    fn naive_source_matches_realisability() {
        for f in [cnf(1, &[[1, 1, -1]]), cnf(2, &[[1, 2, 2], [-1, -2, -2], [1, -1, -1]])] {
            let g = sat_to_template(&f).unwrap();
            let x = naive_source(&g.assignment).unwrap();
            assert_eq!(x.assignment(), g.assignment);
            assert_eq!(naive_witness(&x, &g.template).is_some(), f.brute_force().is_some());
        }
    }
}
