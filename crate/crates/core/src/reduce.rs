//! Parsimonious reductions `#3SAT -> #X3SAT -> #IS of fixed size`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::cnf::{Clause, CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::isp::{count_is_of_size_with, Limits};

/// Exactly-one gadget for the clause `a or b or c` over fresh variables
/// `u1..u6`:
///
/// `(a,u1,u4) (b,u2,u4) (u1,u2,u5) (u3,u4,u6) (c,u3)`
///
/// Every assignment to `a, b, c` satisfying the clause extends to exactly
/// one exactly-one solution over `u1..u6`; others extend to none.
pub fn schaefer_gadget(a: Literal, b: Literal, c: Literal, u: [Literal; 6]) -> [Clause; 5] {
    let [u1, u2, u3, u4, u5, u6] = u;
    [
        vec![a, u1, u4],
        vec![b, u2, u4],
        vec![u1, u2, u5],
        vec![u3, u4, u6],
        vec![c, u3],
    ]
}

/// Replaces each clause by its gadget with six fresh variables, numbered
/// after the original ones in clause order. A width-2 clause `(a or b)`
/// uses `c := b`, a width-1 clause `(a)` uses `c := b := a`.
pub fn schaefer_reduce(f: &CnfFormula) -> Result<CnfFormula> {
    let n = f.variable_count();
    let mut clauses = Vec::with_capacity(5 * f.clause_count());
    for (i, clause) in f.clauses().iter().enumerate() {
        let (a, b, c) = match clause[..] {
            [a] => (a, a, a),
            [a, b] => (a, b, b),
            [a, b, c] => (a, b, c),
            _ => {
                return Err(Error::InvalidFormula(format!(
                    "clause {} has width {}, at most 3 supported",
                    i + 1,
                    clause.len()
                )))
            }
        };
        let base = n + 6 * i as u32;
        let u = std::array::from_fn(|j| Literal::pos(base + 1 + j as u32));
        clauses.extend(schaefer_gadget(a, b, c, u));
    }
    CnfFormula::new(n + 6 * f.clause_count() as u32, clauses)
}

/// Output of [`x3sat_to_graph`].
#[derive(Debug, Clone)]
pub struct GraphReduction {
    /// Labeled with the literal of each vertex.
    pub graph: Graph,
    /// Independent sets of this size correspond to solutions.
    pub target_size: usize,
    /// `2^r` for the `r` declared variables that occur in no clause.
    pub multiplier: BigUint,
}

/// One clique per clause (a triangle for width 3, an edge for width 2),
/// vertices numbered clause by clause and labeled with their literals.
///
/// For vertices `u, v` in different clauses:
/// * same literal: `u` is joined to the clause partners of `v` and `v` to
///   those of `u`;
/// * complementary literals: `u` is joined to `v`, and the partners of `u`
///   to the partners of `v`.
///
/// Then `count_x3sat(f) = multiplier * #{independent sets of size m}`.
pub fn x3sat_to_graph(f: &CnfFormula) -> Result<GraphReduction> {
    f.check_x3sat_instance()?;
    let mut labels = Vec::with_capacity(f.literal_count());
    let mut clause_of = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, clause) in f.clauses().iter().enumerate() {
        let start = labels.len();
        labels.extend(clause.iter().copied());
        clause_of.extend(std::iter::repeat_n(i, clause.len()));
        members.push((start..labels.len()).collect());
    }
    let partners = |v: usize| {
        members[clause_of[v]]
            .iter()
            .copied()
            .filter(move |&w| w != v)
    };

    let mut edges = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        edges.insert((a.min(b), a.max(b)));
    };
    for clique in &members {
        for (j, &a) in clique.iter().enumerate() {
            for &b in &clique[j + 1..] {
                add(a, b);
            }
        }
    }
    let n = labels.len();
    for u in 0..n {
        for v in u + 1..n {
            if clause_of[u] == clause_of[v] {
                continue;
            }
            if labels[u] == labels[v] {
                for p in partners(v) {
                    add(u, p);
                }
                for p in partners(u) {
                    add(v, p);
                }
            } else if labels[u] == labels[v].complement() {
                add(u, v);
                for p in partners(u) {
                    for q in partners(v) {
                        add(p, q);
                    }
                }
            }
        }
    }
    let graph = Graph::from_edge_set(n, edges).with_labels(labels)?;
    Ok(GraphReduction {
        graph,
        target_size: f.clause_count(),
        multiplier: BigUint::from(1u32) << f.unused_variables(),
    })
}

/// `#SAT` through both reductions and a size-`m` independent set count.
pub fn sat_count_via_is(f: &CnfFormula) -> Result<BigUint> {
    sat_count_via_is_with(f, &Limits::default())
}

pub fn sat_count_via_is_with(f: &CnfFormula, limits: &Limits) -> Result<BigUint> {
    let reduction = x3sat_to_graph(&schaefer_reduce(f)?)?;
    let count = count_is_of_size_with(&reduction.graph, reduction.target_size, limits)?;
    Ok(count * reduction.multiplier)
}

/// Sizes along the reduction chain, as reported by the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub clauses_in: usize,
    pub clauses_out: usize,
    pub vars_out: u32,
    pub vertices: usize,
    pub target_size: usize,
    pub multiplier: String,
}

impl ReductionReport {
    pub fn for_formula(f: &CnfFormula) -> Result<(Self, CnfFormula, GraphReduction)> {
        let x3 = schaefer_reduce(f)?;
        let red = x3sat_to_graph(&x3)?;
        let report = ReductionReport {
            clauses_in: f.clause_count(),
            clauses_out: x3.clause_count(),
            vars_out: x3.variable_count(),
            vertices: red.graph.vertex_count(),
            target_size: red.target_size,
            multiplier: red.multiplier.to_string(),
        };
        Ok((report, x3, red))
    }
}
