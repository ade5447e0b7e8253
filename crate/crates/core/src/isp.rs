//! Definitional evaluators for the independent set polynomial
//! `I(G; X) = sum over independent A of X^|A|`.
//!
//! Two independent routes are provided and cross-checked in tests:
//!
//! * enumeration of independent sets, bounded by
//!   [`Limits::enumeration_vertices`];
//! * the branching recursion `I(G) = I(G - v) + X * I(G - N[v])` with
//!   factorization over connected components and memoization on the
//!   induced vertex subset. Branching picks a vertex of maximum degree,
//!   smallest id first. The memo table is bounded by
//!   [`Limits::memo_entries`].
//!
//! Neither route uses clone or path identities, so both can serve as
//! oracles for them.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::Polynomial;

/// Resource bounds shared by the exhaustive algorithms in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest graph handed to plain independent-set enumeration.
    pub enumeration_vertices: usize,
    /// Largest memo table for one branching evaluation.
    pub memo_entries: usize,
    /// Largest variable count for exhaustive assignment enumeration.
    pub sat_variables: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_vertices: 24,
            memo_entries: 4_000_000,
            sat_variables: 24,
        }
    }
}

impl Limits {
    fn check_enumeration(&self, n: usize) -> Result<()> {
        if n > self.enumeration_vertices {
            return Err(Error::Capacity {
                what: "vertex count for enumeration",
                actual: n,
                limit: self.enumeration_vertices,
            });
        }
        Ok(())
    }
}

/// One rational weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexWeights(Vec<Rational>);

impl VertexWeights {
    pub fn new(weights: Vec<Rational>) -> Self {
        VertexWeights(weights)
    }

    pub fn uniform(n: usize, x: &Rational) -> Self {
        VertexWeights(vec![x.clone(); n])
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.0[v]
    }

    pub fn set(&mut self, v: usize, value: Rational) {
        self.0[v] = value;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }
}

// ---------------------------------------------------------------------------
// enumeration route

/// Calls `visit` once per independent set, in lexicographic order of sorted
/// vertex lists.
fn for_each_independent_set(g: &Graph, mut visit: impl FnMut(&[usize])) {
    let adj = g.neighbors();
    let n = g.vertex_count();
    let mut blocked = vec![0usize; n];
    let mut chosen = Vec::new();

    fn rec(
        start: usize,
        adj: &[Vec<usize>],
        blocked: &mut [usize],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        visit(chosen);
        for v in start..adj.len() {
            if blocked[v] > 0 {
                continue;
            }
            chosen.push(v);
            for &u in &adj[v] {
                blocked[u] += 1;
            }
            rec(v + 1, adj, blocked, chosen, visit);
            for &u in &adj[v] {
                blocked[u] -= 1;
            }
            chosen.pop();
        }
    }

    rec(0, &adj, &mut blocked, &mut chosen, &mut visit);
}

/// Independent set counts by size, via plain enumeration.
pub fn isp_coeffs_enumerated(g: &Graph, limits: &Limits) -> Result<Polynomial> {
    limits.check_enumeration(g.vertex_count())?;
    let mut counts = vec![0u64; g.vertex_count() + 1];
    for_each_independent_set(g, |set| counts[set.len()] += 1);
    Ok(Polynomial::new(
        counts
            .into_iter()
            .map(|c| Rational::from_integer(c.into()))
            .collect(),
    ))
}

/// Multivariate evaluation `sum over independent A of prod w(a)`.
pub fn isp_multivariate(g: &Graph, weights: &VertexWeights) -> Result<Rational> {
    isp_multivariate_with(g, weights, &Limits::default())
}

pub fn isp_multivariate_with(
    g: &Graph,
    weights: &VertexWeights,
    limits: &Limits,
) -> Result<Rational> {
    if weights.len() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} vertices",
            weights.len(),
            g.vertex_count()
        )));
    }
    limits.check_enumeration(g.vertex_count())?;
    let mut total = Rational::zero();
    for_each_independent_set(g, |set| {
        total += set
            .iter()
            .fold(Rational::one(), |acc, &v| acc * weights.get(v));
    });
    Ok(total)
}

/// Number of independent sets of size `k`, by enumerating `k`-subsets.
pub fn count_is_of_size_enumerated(g: &Graph, k: usize, limits: &Limits) -> Result<BigUint> {
    limits.check_enumeration(g.vertex_count())?;
    let adj = g.neighbors();
    let n = g.vertex_count();

    fn rec(start: usize, left: usize, adj: &[Vec<usize>], chosen: &mut Vec<usize>) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for v in start..adj.len().saturating_sub(left - 1) {
            if chosen.iter().any(|u| adj[v].binary_search(u).is_ok()) {
                continue;
            }
            chosen.push(v);
            total += rec(v + 1, left - 1, adj, chosen);
            chosen.pop();
        }
        total
    }

    if k > n {
        return Ok(BigUint::zero());
    }
    Ok(BigUint::from(rec(0, k, &adj, &mut Vec::new())))
}

// ---------------------------------------------------------------------------
// branching route

type Bits = Vec<u64>;

fn set_bit(set: &mut [u64], v: usize) {
    set[v / 64] |= 1 << (v % 64);
}

fn clear_bit(set: &mut [u64], v: usize) {
    set[v / 64] &= !(1 << (v % 64));
}

fn ones(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + b)
        })
    })
}

fn count_common(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// The value domain the branching recursion runs in.
trait Algebra {
    type Value: Clone + Send;
    fn one(&self) -> Self::Value;
    /// `I` of a single isolated vertex.
    fn single(&self, v: usize) -> Self::Value;
    /// `lhs + weight(v) * rhs`
    fn branch(&self, lhs: Self::Value, v: usize, rhs: Self::Value) -> Self::Value;
    fn mul(&self, lhs: Self::Value, rhs: &Self::Value) -> Self::Value;
}

/// Integer coefficient vectors.
struct Counting;

impl Algebra for Counting {
    type Value = Vec<BigUint>;

    fn one(&self) -> Self::Value {
        vec![BigUint::one()]
    }

    fn single(&self, _v: usize) -> Self::Value {
        vec![BigUint::one(), BigUint::one()]
    }

    fn branch(&self, mut lhs: Self::Value, _v: usize, rhs: Self::Value) -> Self::Value {
        if lhs.len() < rhs.len() + 1 {
            lhs.resize(rhs.len() + 1, BigUint::zero());
        }
        for (k, c) in rhs.into_iter().enumerate() {
            lhs[k + 1] += c;
        }
        lhs
    }

    fn mul(&self, lhs: Self::Value, rhs: &Self::Value) -> Self::Value {
        let mut out = vec![BigUint::zero(); lhs.len() + rhs.len() - 1];
        for (i, a) in lhs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    }
}

/// Evaluation at one rational point per vertex.
struct Weighted<'a>(&'a [Rational]);

impl Algebra for Weighted<'_> {
    type Value = Rational;

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn single(&self, v: usize) -> Rational {
        Rational::one() + &self.0[v]
    }

    fn branch(&self, lhs: Rational, v: usize, rhs: Rational) -> Rational {
        lhs + &self.0[v] * rhs
    }

    fn mul(&self, lhs: Rational, rhs: &Rational) -> Rational {
        lhs * rhs
    }
}

struct Brancher<'a, A: Algebra> {
    algebra: A,
    adj: Vec<Bits>,
    memo: HashMap<Bits, A::Value>,
    limits: &'a Limits,
}

impl<A: Algebra> Brancher<'_, A> {
    fn component_of(&self, set: &[u64], start: usize) -> Bits {
        let mut comp = vec![0u64; set.len()];
        let mut stack = vec![start];
        set_bit(&mut comp, start);
        while let Some(v) = stack.pop() {
            for (w, (&nb, &s)) in self.adj[v].iter().zip(set).enumerate() {
                let mut fresh = nb & s & !comp[w];
                comp[w] |= fresh;
                while fresh != 0 {
                    let b = fresh.trailing_zeros() as usize;
                    fresh &= fresh - 1;
                    stack.push(w * 64 + b);
                }
            }
        }
        comp
    }

    fn solve(&mut self, set: Bits) -> Result<A::Value> {
        let Some(first) = ones(&set).next() else {
            return Ok(self.algebra.one());
        };
        let comp = self.component_of(&set, first);
        if comp != set {
            let rest: Bits = set.iter().zip(&comp).map(|(s, c)| s & !c).collect();
            let head = self.solve_connected(comp)?;
            let tail = self.solve(rest)?;
            return Ok(self.algebra.mul(head, &tail));
        }
        self.solve_connected(set)
    }

    fn solve_connected(&mut self, set: Bits) -> Result<A::Value> {
        if let Some(hit) = self.memo.get(&set) {
            return Ok(hit.clone());
        }
        let mut best = None;
        let mut best_degree = 0;
        for v in ones(&set) {
            let d = count_common(&self.adj[v], &set);
            if best.is_none() || d > best_degree {
                best = Some(v);
                best_degree = d;
            }
        }
        let v = best.expect("connected component is nonempty");
        let value = if best_degree == 0 {
            self.algebra.single(v)
        } else {
            let mut without = set.clone();
            clear_bit(&mut without, v);
            let closed: Bits = without
                .iter()
                .zip(&self.adj[v])
                .map(|(s, nb)| s & !nb)
                .collect();
            let skip = self.solve(without)?;
            let take = self.solve(closed)?;
            self.algebra.branch(skip, v, take)
        };
        if self.memo.len() >= self.limits.memo_entries {
            return Err(Error::Capacity {
                what: "memo entries",
                actual: self.memo.len() + 1,
                limit: self.limits.memo_entries,
            });
        }
        self.memo.insert(set, value.clone());
        Ok(value)
    }
}

fn run_branching<A: Algebra + Send>(g: &Graph, algebra: A, limits: &Limits) -> Result<A::Value> {
    let n = g.vertex_count();
    let words = n.div_ceil(64).max(1);
    let mut adj = vec![vec![0u64; words]; n];
    for &(u, v) in g.edges() {
        set_bit(&mut adj[u], v);
        set_bit(&mut adj[v], u);
    }
    let mut all = vec![0u64; words];
    for v in 0..n {
        set_bit(&mut all, v);
    }
    let mut brancher = Brancher {
        algebra,
        adj,
        memo: HashMap::new(),
        limits,
    };
    // Deep pendant paths recurse once per vertex; give the recursion room.
    let stack = 64 * 1024 * 1024;
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(stack)
            .spawn_scoped(scope, || brancher.solve(all))
            .expect("spawn evaluation thread")
            .join()
            .expect("evaluation thread panicked")
    })
}

/// Coefficients of `I(G; X)` by the branching recursion.
pub fn isp_coeffs(g: &Graph) -> Result<Polynomial> {
    isp_coeffs_with(g, &Limits::default())
}

pub fn isp_coeffs_with(g: &Graph, limits: &Limits) -> Result<Polynomial> {
    let counts = run_branching(g, Counting, limits)?;
    Ok(Polynomial::new(
        counts
            .into_iter()
            .map(|c| Rational::from_integer(c.into()))
            .collect(),
    ))
}

/// `I(G; x)` at a rational point.
///
/// Runs the branching recursion directly over the rationals; the result
/// equals `isp_coeffs(g).eval(x)`.
pub fn isp_eval(g: &Graph, x: &Rational) -> Result<Rational> {
    isp_eval_with(g, x, &Limits::default())
}

pub fn isp_eval_with(g: &Graph, x: &Rational, limits: &Limits) -> Result<Rational> {
    let weights = vec![x.clone(); g.vertex_count()];
    run_branching(g, Weighted(&weights), limits)
}

/// Multivariate evaluation by branching, for graphs beyond the enumeration
/// bound.
pub fn isp_multivariate_branching(
    g: &Graph,
    weights: &VertexWeights,
    limits: &Limits,
) -> Result<Rational> {
    if weights.len() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} vertices",
            weights.len(),
            g.vertex_count()
        )));
    }
    run_branching(g, Weighted(weights.as_slice()), limits)
}

/// Number of independent sets of size exactly `k`, read off the branching
/// coefficients.
pub fn count_is_of_size(g: &Graph, k: usize) -> Result<BigUint> {
    count_is_of_size_with(g, k, &Limits::default())
}

pub fn count_is_of_size_with(g: &Graph, k: usize, limits: &Limits) -> Result<BigUint> {
    let counts = run_branching(g, Counting, limits)?;
    Ok(counts.into_iter().nth(k).unwrap_or_default())
}
