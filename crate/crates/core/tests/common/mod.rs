//! Brute-force oracles written independently of the library's evaluators.

#![allow(dead_code)]

use indpoly::arith::Rational;
use indpoly::cnf::CnfFormula;
use indpoly::graph::Graph;
use num_traits::{One, Zero};

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.vertex_count()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn independent_subsets(g: &Graph) -> impl Iterator<Item = u64> {
    let n = g.vertex_count();
    assert!(n <= 24, "brute force limited to 24 vertices");
    let adj = adjacency_masks(g);
    (0..1u64 << n).filter(move |&set| (0..n).all(|v| set >> v & 1 == 0 || adj[v] & set == 0))
}

/// Number of independent sets of each size.
pub fn brute_is_counts(g: &Graph) -> Vec<u64> {
    let mut counts = vec![0u64; g.vertex_count() + 1];
    for set in independent_subsets(g) {
        counts[set.count_ones() as usize] += 1;
    }
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    counts
}

/// Sum over independent sets of the product of vertex weights.
pub fn brute_is_weighted(g: &Graph, weights: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for set in independent_subsets(g) {
        let mut term = Rational::one();
        for (v, w) in weights.iter().enumerate() {
            if set >> v & 1 == 1 {
                term *= w;
            }
        }
        total += term;
    }
    total
}

pub fn brute_is_eval(g: &Graph, x: &Rational) -> Rational {
    brute_is_weighted(g, &vec![x.clone(); g.vertex_count()])
}

fn true_literals(clause: &[i64], assignment: u64) -> usize {
    clause
        .iter()
        .filter(|&&l| {
            let bit = assignment >> (l.unsigned_abs() - 1) & 1 == 1;
            bit == (l > 0)
        })
        .count()
}

fn dimacs_clauses(f: &CnfFormula) -> Vec<Vec<i64>> {
    f.clauses()
        .iter()
        .map(|c| c.iter().map(|l| l.to_dimacs()).collect())
        .collect()
}

/// Assignments satisfying every clause (`exactly_one`: with exactly one true
/// literal per clause).
pub fn brute_models(f: &CnfFormula, exactly_one: bool) -> u64 {
    let n = f.variable_count();
    assert!(n <= 24, "brute force limited to 24 variables");
    let clauses = dimacs_clauses(f);
    (0..1u64 << n)
        .filter(|&a| {
            clauses.iter().all(|c| {
                let t = true_literals(c, a);
                if exactly_one {
                    t == 1
                } else {
                    t >= 1
                }
            })
        })
        .count() as u64
}
