//! Algebra of S-clones.
//!
//! A pendant path of length `k` hanging off a vertex `a` can be contracted
//! into `a`: the independent set polynomial picks up a factor `C_k` and the
//! weight of `a` becomes `B_k / C_k`, where `(B_0, C_0) = (x, 1)` and
//! `(B, C) -> (x C, B + C)`. Clones of a vertex multiply `1 + weight`.
//! Together, for an S-clone,
//!
//! ```text
//! I(G_S; x) = (prod C_s)^|V| * I(G; x(S)),   1 + x(S) = prod (1 + B_s / C_s).
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{format_rational, lambda_pair, pow, QuadExt, Rational, RationalStr};
use crate::error::{Error, Result};
use crate::graph::{comb, k_clone, CloneSpec, Graph};

fn quarter() -> Rational {
    Rational::new(BigInt::from(-1), BigInt::from(4))
}

pub fn is_nondegenerate(x: &Rational) -> bool {
    x > &quarter() && !x.is_zero()
}

pub(crate) fn check_nondegenerate(x: &Rational) -> Result<()> {
    let reason = if x.is_zero() {
        "x must be nonzero"
    } else if x <= &quarter() {
        "x must exceed -1/4"
    } else {
        return Ok(());
    };
    Err(Error::Degenerate {
        point: format_rational(x),
        reason,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWeights {
    pub k: u32,
    pub b: Rational,
    pub c: Rational,
}

/// `(B_k, C_k)` by `k` applications of `[[0, x], [1, 1]]` to `(x, 1)`.
/// Valid for every rational `x`.
pub fn path_weights(x: &Rational, k: u32) -> PathWeights {
    let mut b = x.clone();
    let mut c = Rational::one();
    for _ in 0..k {
        let next_b = x * &c;
        c += &b;
        b = next_b;
    }
    PathWeights { k, b, c }
}

/// All of `(B_0, C_0) ..= (B_max, C_max)`.
pub fn path_weight_table(x: &Rational, max_k: u32) -> Vec<PathWeights> {
    let mut out = Vec::with_capacity(max_k as usize + 1);
    let mut w = path_weights(x, 0);
    out.push(w.clone());
    for k in 1..=max_k {
        w = PathWeights {
            k,
            b: x * &w.c,
            c: &w.b + &w.c,
        };
        out.push(w.clone());
    }
    out
}

/// Closed forms in `Q(sqrt(1 + 4x))`:
///
/// ```text
/// B_k = x (lambda2^{k+1} - lambda1^{k+1}) / (lambda2 - lambda1)
/// C_k =   (lambda2^{k+2} - lambda1^{k+2}) / (lambda2 - lambda1)
/// ```
pub fn path_weights_closed_form(x: &Rational, k: u32) -> Result<(QuadExt, QuadExt)> {
    let (l1, l2) = lambda_pair(x)?;
    let gap = l2.try_sub(&l1)?;
    let b = l2
        .pow(k + 1)
        .try_sub(&l1.pow(k + 1))?
        .try_div(&gap)?
        .scale(x);
    let c = l2.pow(k + 2).try_sub(&l1.pow(k + 2))?.try_div(&gap)?;
    Ok((b, c))
}

/// `lambda1^{s+2} != lambda2^{s+2}` for every `s` in the multiset.
pub fn is_compatible(x: &Rational, spec: &CloneSpec) -> Result<bool> {
    let (l1, l2) = lambda_pair(x)?;
    Ok(spec
        .entries()
        .iter()
        .all(|&s| l1.pow(s + 2) != l2.pow(s + 2)))
}

fn check_compatible(x: &Rational, spec: &CloneSpec) -> Result<()> {
    if !is_compatible(x, spec)? {
        return Err(Error::Incompatible {
            point: format_rational(x),
            spec: spec.to_string(),
        });
    }
    Ok(())
}

/// The shifted point `x(S)` with `1 + x(S) = prod (1 + B_s / C_s)`.
pub fn x_of_s(x: &Rational, spec: &CloneSpec) -> Result<Rational> {
    check_nondegenerate(x)?;
    check_compatible(x, spec)?;
    let max = spec.entries().last().copied().unwrap_or(0);
    let table = path_weight_table(x, max);
    let mut product = Rational::one();
    for &s in spec.entries() {
        let w = &table[s as usize];
        if w.c.is_zero() {
            return Err(Error::Incompatible {
                point: format_rational(x),
                spec: spec.to_string(),
            });
        }
        let factor = Rational::one() + &w.b / &w.c;
        if factor.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "path of length {s} contracts to weight -1 at x = {}",
                format_rational(x)
            )));
        }
        product *= factor;
    }
    Ok(product - Rational::one())
}

/// `(prod over S of C_s)^n`.
pub fn clone_factor(x: &Rational, spec: &CloneSpec, n: usize) -> Result<Rational> {
    check_nondegenerate(x)?;
    check_compatible(x, spec)?;
    let max = spec.entries().last().copied().unwrap_or(0);
    let table = path_weight_table(x, max);
    let per_vertex = spec
        .entries()
        .iter()
        .fold(Rational::one(), |acc, &s| acc * &table[s as usize].c);
    Ok(pow(&per_vertex, n as i64))
}

/// One graph transformation of a [`TransformPlan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TransformStep {
    /// Two pairwise non-adjacent copies of every vertex; moves the point
    /// from `y` to `(1 + y)^2 - 1` with factor 1.
    TwoClone,
    /// `k` pendant leaves on every vertex; moves the point from `y` to
    /// `y / (1 + y)^k` with factor `(1 + y)^{k |V|}`.
    Comb { k: u32 },
}

/// How to evaluate `I(G; target)` using only evaluations at `x`.
///
/// `steps` lists the point transformations in the order they act on the
/// evaluation point, starting from `x`. The graph transformations are
/// applied in the reverse order (see [`TransformPlan::transform`]), and
/// `I(transform(G); x) = factor(|V(G)|) * I(G; target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformPlan {
    pub x: Rational,
    pub steps: Vec<TransformStep>,
    /// The evaluation point after each step.
    pub intermediate_points: Vec<Rational>,
    pub target: Rational,
    /// The exact factor is `factor_base^(factor_exponent_per_vertex * n)`.
    pub factor_base: Rational,
    pub factor_exponent_per_vertex: u64,
}

impl TransformPlan {
    /// Applies the graph side of the plan.
    pub fn transform(&self, g: &Graph) -> Graph {
        let mut h = g.clone();
        for step in self.steps.iter().rev() {
            h = match *step {
                TransformStep::TwoClone => k_clone(&h, 2).expect("k = 2"),
                TransformStep::Comb { k } => comb(&h, k as usize),
            };
        }
        h
    }

    /// The exact factor for an original graph on `n` vertices.
    pub fn factor(&self, n: usize) -> Rational {
        pow(
            &self.factor_base,
            (self.factor_exponent_per_vertex * n as u64) as i64,
        )
    }

    /// Vertices of the transformed graph per original vertex.
    pub fn size_multiplier(&self) -> usize {
        self.steps.iter().fold(1, |acc, step| match *step {
            TransformStep::TwoClone => acc * 2,
            TransformStep::Comb { k } => acc * (k as usize + 1),
        })
    }
}

#[derive(Serialize)]
struct PlanRecord<'a> {
    x: RationalStr,
    steps: &'a [TransformStep],
    intermediate_points: Vec<RationalStr>,
    target: RationalStr,
    factor_base: RationalStr,
    factor_exponent_per_vertex: u64,
}

impl Serialize for TransformPlan {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        PlanRecord {
            x: RationalStr(self.x.clone()),
            steps: &self.steps,
            intermediate_points: self
                .intermediate_points
                .iter()
                .cloned()
                .map(RationalStr)
                .collect(),
            target: RationalStr(self.target.clone()),
            factor_base: RationalStr(self.factor_base.clone()),
            factor_exponent_per_vertex: self.factor_exponent_per_vertex,
        }
        .serialize(serializer)
    }
}

impl fmt::Display for TransformPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x = {}", format_rational(&self.x))?;
        for (step, point) in self.steps.iter().zip(&self.intermediate_points) {
            match step {
                TransformStep::TwoClone => {
                    write!(f, " -> two_clone -> {}", format_rational(point))?
                }
                TransformStep::Comb { k } => {
                    write!(f, " -> comb(k={k}) -> {}", format_rational(point))?
                }
            }
        }
        Ok(())
    }
}

/// Moves an arbitrary rational point (other than 0, -1, -2) to a point that
/// is nondegenerate for path reduction.
///
/// * nondegenerate `x`: nothing to do;
/// * `x < -2`: one 2-clone, target `(1 + x)^2 - 1 > 0`;
/// * `x` in `(-2, -1/4] \ {-1}`: a comb with the smallest even `k >= 2`
///   such that `y = x / (1 + x)^k < -2`, then a 2-clone, target
///   `(1 + y)^2 - 1`.
///
/// The comb exponent is found by exact search; it terminates because
/// `0 < |1 + x| < 1`.
pub fn normalize_point(x: &Rational) -> Result<TransformPlan> {
    let minus_two = Rational::from_integer((-2).into());
    let one = Rational::one();
    if x.is_zero() || *x == -&one || *x == minus_two {
        return Err(Error::UnsupportedPoint {
            point: format_rational(x),
            reason: "0, -1 and -2 need cycle gadgets, which are not implemented",
        });
    }
    let two_clone = |y: &Rational| {
        let s = &one + y;
        &s * &s - &one
    };
    let mut plan = TransformPlan {
        x: x.clone(),
        steps: Vec::new(),
        intermediate_points: Vec::new(),
        target: x.clone(),
        factor_base: one.clone(),
        factor_exponent_per_vertex: 0,
    };
    if is_nondegenerate(x) {
        return Ok(plan);
    }
    if x < &minus_two {
        let t = two_clone(x);
        plan.steps.push(TransformStep::TwoClone);
        plan.intermediate_points.push(t.clone());
        plan.target = t;
        return Ok(plan);
    }
    let base = &one + x;
    debug_assert!(base.abs() < one && !base.is_zero());
    let mut k = 2u32;
    let y = loop {
        let y = x / pow(&base, i64::from(k));
        if y < minus_two {
            break y;
        }
        k += 2;
    };
    let t = two_clone(&y);
    plan.steps = vec![TransformStep::Comb { k }, TransformStep::TwoClone];
    plan.intermediate_points = vec![y, t.clone()];
    plan.target = t;
    plan.factor_base = base;
    // the comb acts on the 2-clone, which has 2n vertices
    plan.factor_exponent_per_vertex = 2 * u64::from(k);
    Ok(plan)
}
