//! Recovering every coefficient of `I(G; X)` from evaluations at one fixed
//! nondegenerate point `x`.
//!
//! For `i = 0..=n` the clone set
//! `S_i = { s0 + delta * (2j + bit_j(i)) : 0 <= j <= floor(log2 n) }`
//! yields `I(G_{S_i}; x) = (prod C_s)^n * I(G; x(S_i))`. Once the points
//! `x(S_i)` are pairwise distinct, dividing out the factors and
//! interpolating through the `n + 1` samples gives the polynomial.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{format_rational, lambda_pair, QuadExt, Rational, RationalStr};
use crate::calculus::{check_nondegenerate, clone_factor, x_of_s};
use crate::error::{Error, Result};
use crate::graph::{s_clone, CloneSpec, Graph};
use crate::oracle::OracleHandle;
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaMode {
    /// The worst-case separation bound, with base-2 logarithms.
    PaperFormula,
    /// Start at 1 and double until the points are exactly distinct.
    VerifiedMinimal,
}

/// Smallest `s0 >= 1` such that for all `s >= s0`, `(l1/l2)^s` avoids both
/// `(l2/l1)^2` and `l2 (x + l2) / (l1 (x + l1))`.
///
/// Since `|l1/l2| > 1` the powers grow in magnitude, so only exponents below
/// the point where `|l1/l2|^s` exceeds both targets need an exact check.
pub fn compute_s0(x: &Rational) -> Result<u32> {
    let (l1, l2) = lambda_pair(x)?;
    let ratio = l1.try_div(&l2)?;
    let inverse = l2.try_div(&l1)?;
    let t1 = inverse.pow(2);
    let t2 = l2
        .try_mul(&l2.add_rational(x))?
        .try_div(&l1.try_mul(&l1.add_rational(x))?)?;
    let bound = match t1.abs().try_cmp(&t2.abs())? {
        Ordering::Less => t2.abs(),
        _ => t1.abs(),
    };
    let mut power = ratio.clone();
    let mut last_hit = 0;
    let mut s = 1;
    while power.abs().try_cmp(&bound)? != Ordering::Greater {
        if power == t1 || power == t2 {
            last_hit = s;
        }
        power = power.try_mul(&ratio)?;
        s += 1;
    }
    Ok(last_hit + 1)
}

/// Smallest (`Less`) or largest (`Greater`) absolute value, compared exactly.
fn extreme(values: Vec<QuadExt>, want: Ordering) -> Result<QuadExt> {
    let mut iter = values.into_iter().map(|v| v.abs());
    let mut best = iter.next().expect("nonempty");
    for v in iter {
        if v.try_cmp(&best)? == want {
            best = v;
        }
    }
    Ok(best)
}

/// Absolute margin added before rounding the separation bound up, to absorb
/// floating-point error in the logarithms.
pub const DELTA_MARGIN: f64 = 1e-9;

/// Spacing `delta` between consecutive path lengths of the clone sets.
///
/// In [`DeltaMode::PaperFormula`] this is the smallest integer strictly
/// above `7((L + 1) log(C2/C1) + 2L + 1) / log(l1/|l2|)` with `L = log2 n`,
/// `C1 = min{1, |l1|, |l2|, |x + l1|, |x|, |l1 - l2|}` and
/// `C2 = 2 max{1, |l1|, |l2|, |x + l1|, |x + l2|}`. The constants are chosen
/// by exact comparison; only the logarithms are floating point.
pub fn compute_delta(x: &Rational, n: usize, mode: DeltaMode) -> Result<u64> {
    check_nondegenerate(x)?;
    if n == 0 {
        return Err(Error::InvalidArgument("clone family needs n >= 1".into()));
    }
    if mode == DeltaMode::VerifiedMinimal {
        return Ok(1);
    }
    let (l1, l2) = lambda_pair(x)?;
    let d = l1.d.clone();
    let one = QuadExt::one(&d);
    let xq = QuadExt::from_rational(x.clone(), &d);
    let c1 = extreme(
        vec![
            one.clone(),
            l1.clone(),
            l2.clone(),
            l1.add_rational(x),
            xq,
            l1.try_sub(&l2)?,
        ],
        Ordering::Less,
    )?;
    let c2 = extreme(
        vec![
            one,
            l1.clone(),
            l2.clone(),
            l1.add_rational(x),
            l2.add_rational(x),
        ],
        Ordering::Greater,
    )?
    .scale(&Rational::from_integer(2.into()));
    let log_n = (n as f64).log2();
    let constant_ratio = c2.try_div(&c1)?.to_f64().log2();
    let growth = l1.try_div(&l2.abs())?.to_f64().log2();
    let bound = 7.0 * ((log_n + 1.0) * constant_ratio + 2.0 * log_n + 1.0) / growth;
    Ok((bound + DELTA_MARGIN).floor() as u64 + 1)
}

/// The clone sets `S_0..S_n` and their exactly distinct points `x(S_i)`.
#[derive(Debug, Clone)]
pub struct CloneFamily {
    pub x: Rational,
    pub n: usize,
    pub s0: u32,
    pub delta: u64,
    pub mode: DeltaMode,
    pub sets: Vec<CloneSpec>,
    pub points: Vec<Rational>,
}

fn family_sets(n: usize, s0: u32, delta: u64) -> Result<Vec<CloneSpec>> {
    let bits = n.ilog2();
    (0..=n)
        .map(|i| {
            let entries = (0..=bits)
                .map(|j| {
                    let b = (i >> j & 1) as u64;
                    u32::try_from(u64::from(s0) + delta * (2 * u64::from(j) + b)).map_err(|_| {
                        Error::Capacity {
                            what: "clone path length",
                            actual: usize::MAX,
                            limit: u32::MAX as usize,
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CloneSpec::new(entries))
        })
        .collect()
}

fn pairwise_distinct(points: &[Rational]) -> bool {
    let mut sorted: Vec<&Rational> = points.iter().collect();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

impl CloneFamily {
    /// `floor(log2 n) + 1`, the size of every set.
    pub fn set_size(&self) -> usize {
        self.n.ilog2() as usize + 1
    }

    /// Vertices of the S-clone of an `n`-vertex graph for set `i`.
    pub fn clone_vertices(&self, i: usize) -> usize {
        self.n * self.sets[i].block_size()
    }

    pub fn dump(&self) -> Vec<FamilyEntry> {
        self.sets
            .iter()
            .zip(&self.points)
            .enumerate()
            .map(|(i, (set, point))| FamilyEntry {
                i,
                set: set.entries().to_vec(),
                point: RationalStr(point.clone()),
                clone_vertices: self.clone_vertices(i),
            })
            .collect()
    }
}

/// One line of a family dump.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyEntry {
    pub i: usize,
    pub set: Vec<u32>,
    pub point: RationalStr,
    pub clone_vertices: usize,
}

pub fn build_clone_family(x: &Rational, n: usize, mode: DeltaMode) -> Result<CloneFamily> {
    check_nondegenerate(x)?;
    let ceiling = compute_delta(x, n, DeltaMode::PaperFormula)?;
    let s0 = compute_s0(x)?;
    let attempt = |delta: u64| -> Result<Option<(Vec<CloneSpec>, Vec<Rational>)>> {
        let sets = family_sets(n, s0, delta)?;
        let points = sets
            .iter()
            .map(|s| x_of_s(x, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(pairwise_distinct(&points).then_some((sets, points)))
    };
    let mut delta = match mode {
        DeltaMode::PaperFormula => ceiling,
        DeltaMode::VerifiedMinimal => 1,
    };
    loop {
        if let Some((sets, points)) = attempt(delta)? {
            return Ok(CloneFamily {
                x: x.clone(),
                n,
                s0,
                delta,
                mode,
                sets,
                points,
            });
        }
        if delta >= ceiling {
            return Err(Error::InvalidArgument(format!(
                "clone family points collide at x = {} even with delta = {delta}",
                format_rational(x)
            )));
        }
        delta = (delta * 2).min(ceiling);
    }
}

/// The unique polynomial of degree `< samples.len()` through the samples.
pub fn lagrange_interpolate(samples: &[(Rational, Rational)]) -> Result<Polynomial> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument(
            "interpolation needs at least one sample".into(),
        ));
    }
    let points: Vec<Rational> = samples.iter().map(|(p, _)| p.clone()).collect();
    if !pairwise_distinct(&points) {
        let mut sorted = points.clone();
        sorted.sort();
        let dup = sorted
            .windows(2)
            .find(|w| w[0] == w[1])
            .expect("duplicate exists");
        return Err(Error::DuplicatePoint(format_rational(&dup[0])));
    }
    let mut result = Polynomial::zero();
    for (i, (xi, yi)) in samples.iter().enumerate() {
        let mut basis = Polynomial::one();
        let mut denom = Rational::from_integer(1.into());
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Polynomial::new(vec![
                -xj.clone(),
                Rational::from_integer(1.into()),
            ]));
            denom *= xi - xj;
        }
        result = result.add(&basis.scale(&(yi / denom)));
    }
    Ok(result)
}

/// Everything the pipeline computed, for reporting.
#[derive(Debug, Clone)]
pub struct Interpolation {
    pub family: Option<CloneFamily>,
    /// Oracle answers `I(G_{S_i}; x)`.
    pub oracle_values: Vec<Rational>,
    /// Recovered `I(G; x(S_i))`.
    pub samples: Vec<(Rational, Rational)>,
    pub polynomial: Polynomial,
}

/// Coefficients of `I(G; X)` from oracle evaluations of S-clones of `G`
/// at the single point `x`.
pub fn interpolate_coeffs(
    g: &Graph,
    x: &Rational,
    oracle: &OracleHandle,
    mode: DeltaMode,
) -> Result<Polynomial> {
    interpolate(g, x, oracle, mode).map(|r| r.polynomial)
}

pub fn interpolate(
    g: &Graph,
    x: &Rational,
    oracle: &OracleHandle,
    mode: DeltaMode,
) -> Result<Interpolation> {
    check_nondegenerate(x)?;
    let n = g.vertex_count();
    if n == 0 {
        let value = oracle.evaluate(g, x, 0).map_err(|e| Error::Oracle {
            index: 0,
            source: Box::new(e),
        })?;
        return Ok(Interpolation {
            family: None,
            oracle_values: vec![value.clone()],
            samples: vec![(x.clone(), value.clone())],
            polynomial: Polynomial::constant(value),
        });
    }
    let family = build_clone_family(x, n, mode)?;
    let query = |i: usize| -> Result<(Rational, Rational)> {
        let wrap = |e: Error| Error::Oracle {
            index: i,
            source: Box::new(e),
        };
        let clone = s_clone(g, &family.sets[i]);
        let value = oracle.evaluate(&clone, x, i).map_err(wrap)?;
        let factor = clone_factor(x, &family.sets[i], n).map_err(wrap)?;
        Ok((value.clone(), value / factor))
    };
    let answers: Vec<(Rational, Rational)> = if oracle.is_reentrant() {
        (0..=n).into_par_iter().map(query).collect::<Result<_>>()?
    } else {
        (0..=n).map(query).collect::<Result<_>>()?
    };
    let samples: Vec<(Rational, Rational)> = family
        .points
        .iter()
        .cloned()
        .zip(answers.iter().map(|(_, s)| s.clone()))
        .collect();
    let polynomial = lagrange_interpolate(&samples)?;
    Ok(Interpolation {
        oracle_values: answers.into_iter().map(|(v, _)| v).collect(),
        family: Some(family),
        samples,
        polynomial,
    })
}
