//! Seeded property suites checking every identity against the definitional
//! evaluators. Each failure carries a self-contained input (a DIMACS CNF or
//! graph file) that reproduces it.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{format_rational, int, pow, rat, Rational};
use crate::calculus::{clone_factor, normalize_point, path_weights, x_of_s};
use crate::cnf::{count_sat, count_x3sat, CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::graph::{
    attach_path, comb, delete_vertex, graphs_up_to_isomorphism, k_clone, random_graph, s_clone,
    CloneSpec, Graph,
};
use crate::interp::{interpolate_coeffs, DeltaMode};
use crate::isp::{count_is_of_size, isp_coeffs, isp_eval, isp_multivariate, VertexWeights};
use crate::oracle::OracleHandle;
use crate::reduce::{sat_count_via_is, schaefer_gadget, schaefer_reduce, x3sat_to_graph};

pub const DEFAULT_SEED: u64 = 7;

pub const SUITES: &[&str] = &[
    "gadget",
    "reduction",
    "clone-identity",
    "path-identity",
    "comb-identity",
    "pipeline",
    "normalizer",
];

/// Evaluation points shared by the identity suites.
pub fn sample_points() -> Vec<Rational> {
    vec![int(2), int(1), rat(1, 2), rat(-1, 5)]
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub description: String,
    /// A DIMACS CNF or graph file that reproduces the failure.
    pub input: String,
    /// Size of the input, used to keep the smallest failures.
    #[serde(skip)]
    size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<Counterexample>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passed == self.cases
    }
}

/// Keeps the smallest few counterexamples.
const KEPT_FAILURES: usize = 3;

struct Tally {
    cases: usize,
    passed: usize,
    failures: Vec<Counterexample>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            passed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, size: usize, describe: impl FnOnce() -> (String, String)) {
        let case = self.cases;
        self.cases += 1;
        if ok {
            self.passed += 1;
            return;
        }
        let (description, input) = describe();
        self.failures.push(Counterexample {
            case,
            description,
            input,
            size,
        });
        self.failures.sort_by_key(|c| (c.size, c.case));
        self.failures.truncate(KEPT_FAILURES);
    }

    fn check_eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        lhs: Result<T>,
        rhs: Result<T>,
        size: usize,
        describe: impl FnOnce() -> (String, String),
    ) {
        match (&lhs, &rhs) {
            (Ok(a), Ok(b)) if a == b => self.check(true, size, describe),
            _ => self.check(false, size, || {
                let (d, input) = describe();
                (format!("{d}: {lhs:?} != {rhs:?}"), input)
            }),
        }
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tally = match name {
        "gadget" => gadget_suite(),
        "reduction" => reduction_suite(&mut rng),
        "clone-identity" => clone_identity_suite(&mut rng),
        "path-identity" => path_identity_suite(&mut rng),
        "comb-identity" => comb_identity_suite(),
        "pipeline" => pipeline_suite(&mut rng),
        "normalizer" => normalizer_suite(),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        cases: tally.cases,
        passed: tally.passed,
        failures: tally.failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `"all"` expands to every suite in [`SUITES`] order.
pub fn suite_names(name: &str) -> Result<Vec<&'static str>> {
    if name == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|&&s| s == name)
        .map(|&s| vec![s])
        .ok_or_else(|| {
            Error::InvalidArgument(format!(
                "unknown suite {name:?}; expected one of {} or all",
                SUITES.join(", ")
            ))
        })
}

fn graph_case(g: &Graph, params: String) -> (String, String) {
    (params, g.to_dimacs())
}

/// Exactly-one extensions of a gadget whose clause literals `a, b, c` are
/// the given variables (1-based) of `n` free variables.
pub fn gadget_extension_count(vars: [u32; 3], free: u32, assignment: u64) -> usize {
    let u: [Literal; 6] = std::array::from_fn(|j| Literal::pos(free + 1 + j as u32));
    let gadget = schaefer_gadget(
        Literal::pos(vars[0]),
        Literal::pos(vars[1]),
        Literal::pos(vars[2]),
        u,
    );
    (0..64u64)
        .filter(|ext| {
            let full = assignment | ext << free;
            gadget
                .iter()
                .all(|c| c.iter().filter(|l| l.eval(full)).count() == 1)
        })
        .count()
}

fn gadget_suite() -> Tally {
    let mut t = Tally::new();
    // distinct a, b, c, then the pluggings c := b and c := b := a
    for (vars, free) in [([1, 2, 3], 3u32), ([1, 2, 2], 2), ([1, 1, 1], 1)] {
        for assignment in 0..1u64 << free {
            let satisfied = vars.iter().any(|&v| assignment >> (v - 1) & 1 == 1);
            let got = gadget_extension_count(vars, free, assignment);
            t.check(got == usize::from(satisfied), free as usize, || {
                let f = CnfFormula::from_dimacs_clauses(free, &[&vars.map(i64::from)[..]])
                    .expect("valid clause");
                (
                    format!("gadget over {vars:?} at assignment {assignment:b}: {got} extensions"),
                    f.to_dimacs(),
                )
            });
        }
    }
    t
}

pub fn random_3cnf<R: Rng>(rng: &mut R, max_vars: u32, max_clauses: usize) -> CnfFormula {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let width = rng.gen_range(1..=3);
            (0..width)
                .map(|_| {
                    Literal::new(rng.gen_range(1..=n), rng.gen_bool(0.5)).expect("variable >= 1")
                })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).expect("valid random formula")
}

/// Random exactly-one instance: widths 2 or 3, distinct variables per
/// clause, total width at most `max_literals`.
pub fn random_x3sat<R: Rng>(rng: &mut R, max_vars: u32, max_literals: usize) -> CnfFormula {
    let n = rng.gen_range(3..=max_vars.max(3));
    let mut budget = rng.gen_range(0..=max_literals);
    let mut clauses = Vec::new();
    while budget >= 2 {
        let width = if budget >= 3 { rng.gen_range(2..=3) } else { 2 };
        let mut vars: Vec<u32> = Vec::new();
        while vars.len() < width {
            let v = rng.gen_range(1..=n);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        clauses.push(
            vars.into_iter()
                .map(|v| Literal::new(v, rng.gen_bool(0.5)).expect("variable >= 1"))
                .collect(),
        );
        budget -= width;
    }
    CnfFormula::new(n, clauses).expect("valid random instance")
}

fn reduction_suite(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new();
    for _ in 0..60 {
        let f = random_3cnf(rng, 5, 2);
        let direct = count_sat(&f);
        let size = f.literal_count();
        let via_x3 = schaefer_reduce(&f).and_then(|g| count_x3sat(&g));
        t.check_eq(reclone(&direct), via_x3, size, || {
            (
                "count_sat vs count_x3sat(schaefer)".to_string(),
                f.to_dimacs(),
            )
        });
        t.check_eq(direct, sat_count_via_is(&f), size, || {
            ("count_sat vs sat_count_via_is".to_string(), f.to_dimacs())
        });
        let x3 = schaefer_reduce(&f).expect("3-CNF");
        let laws = x3.clause_count() == 5 * f.clause_count()
            && x3.variable_count() as usize == f.variable_count() as usize + 6 * f.clause_count();
        t.check(laws, size, || {
            ("schaefer size laws".to_string(), f.to_dimacs())
        });
    }
    for _ in 0..60 {
        let f = random_x3sat(rng, 6, 15);
        let size = f.literal_count();
        let via_graph = x3sat_to_graph(&f).and_then(|r| {
            let vertices_ok = r.graph.vertex_count() == f.literal_count();
            let count = count_is_of_size(&r.graph, r.target_size)? * r.multiplier;
            Ok((count, vertices_ok))
        });
        let direct = count_x3sat(&f).map(|c| (c, true));
        t.check_eq(direct, via_graph, size, || {
            (
                "count_x3sat vs multiplier * #IS of size m".to_string(),
                f.to_dimacs(),
            )
        });
    }
    t
}

fn reclone<T: Clone>(r: &Result<T>) -> Result<T> {
    match r {
        Ok(v) => Ok(v.clone()),
        Err(e) => Err(Error::InvalidArgument(e.to_string())),
    }
}

fn random_spec<R: Rng>(rng: &mut R, max_len: usize, max_entry: u32) -> CloneSpec {
    let len = rng.gen_range(1..=max_len);
    CloneSpec::new((0..len).map(|_| rng.gen_range(0..=max_entry)).collect())
}

fn small_graphs(max_n: usize) -> Vec<Graph> {
    (0..=max_n).flat_map(graphs_up_to_isomorphism).collect()
}

/// `I(G_S; x) = clone_factor * I(G; x(S))`, both sides definitional.
pub fn check_master_identity(g: &Graph, spec: &CloneSpec, x: &Rational) -> Result<bool> {
    let lhs = isp_eval(&s_clone(g, spec), x)?;
    let rhs = clone_factor(x, spec, g.vertex_count())? * isp_eval(g, &x_of_s(x, spec)?)?;
    Ok(lhs == rhs)
}

fn clone_identity_suite(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new();
    let points = sample_points();
    for g in small_graphs(5) {
        let spec = random_spec(rng, 3, 4);
        for x in &points {
            let ok = check_master_identity(&g, &spec, x).unwrap_or(false);
            t.check(ok, g.vertex_count(), || {
                graph_case(
                    &g,
                    format!(
                        "S-clone identity with S = {spec}, x = {}",
                        format_rational(x)
                    ),
                )
            });
        }
        for k in 1..=3usize {
            for x in &points {
                let shifted = pow(&(int(1) + x), k as i64) - int(1);
                let lhs = k_clone(&g, k).and_then(|h| isp_eval(&h, x));
                t.check_eq(lhs, isp_eval(&g, &shifted), g.vertex_count(), || {
                    graph_case(
                        &g,
                        format!("k-clone identity with k = {k}, x = {}", format_rational(x)),
                    )
                });
            }
        }
        // contraction of two vertices with equal neighborhoods
        let adj = g.neighbors();
        for a in 0..g.vertex_count() {
            for b in a + 1..g.vertex_count() {
                if adj[a] != adj[b] {
                    continue;
                }
                let weights =
                    VertexWeights::new((0..g.vertex_count()).map(|_| random_weight(rng)).collect());
                let mut merged = weights.clone();
                merged.set(
                    a,
                    (int(1) + weights.get(a)) * (int(1) + weights.get(b)) - int(1),
                );
                let mut reduced: Vec<Rational> = merged.as_slice().to_vec();
                reduced.remove(b);
                let rhs = delete_vertex(&g, b)
                    .and_then(|h| isp_multivariate(&h, &VertexWeights::new(reduced)));
                t.check_eq(
                    isp_multivariate(&g, &weights),
                    rhs,
                    g.vertex_count(),
                    || graph_case(&g, format!("clone contraction of {a} and {b}")),
                );
            }
        }
    }
    t
}

/// Random rational in `[-3, 3]` avoiding `-1`.
pub fn random_weight<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let w = rat(rng.gen_range(-12..=12), rng.gen_range(1..=4));
        if w != int(-1) {
            return w;
        }
    }
}

/// `I(G + path of length k at v; x) = C_k * I(G; y)` with `y_v = B_k / C_k`.
pub fn check_path_identity(g: &Graph, v: usize, k: u32, x: &Rational) -> Result<bool> {
    let lhs = isp_eval(&attach_path(g, v, k as usize)?, x)?;
    let w = path_weights(x, k);
    if w.c == int(0) {
        return Ok(false);
    }
    let mut weights = VertexWeights::uniform(g.vertex_count(), x);
    weights.set(v, &w.b / &w.c);
    Ok(lhs == w.c * isp_multivariate(g, &weights)?)
}

fn path_identity_suite(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new();
    let points = sample_points();
    for g in small_graphs(4).into_iter().filter(|g| g.vertex_count() > 0) {
        for v in 0..g.vertex_count() {
            for k in 0..=4 {
                for x in &points {
                    let ok = check_path_identity(&g, v, k, x).unwrap_or(false);
                    t.check(ok, g.vertex_count(), || {
                        graph_case(
                            &g,
                            format!(
                                "path identity at vertex {v}, k = {k}, x = {}",
                                format_rational(x)
                            ),
                        )
                    });
                }
            }
        }
    }
    // single leaf contraction with independent weights
    for g in small_graphs(5) {
        let adj = g.neighbors();
        for (b, nb) in adj.iter().enumerate() {
            let [a] = nb[..] else { continue };
            let weights =
                VertexWeights::new((0..g.vertex_count()).map(|_| random_weight(rng)).collect());
            let xb = weights.get(b).clone();
            let mut reduced: Vec<Rational> = weights.as_slice().to_vec();
            reduced[a] = weights.get(a) / (int(1) + &xb);
            reduced.remove(b);
            let rhs = delete_vertex(&g, b)
                .and_then(|h| isp_multivariate(&h, &VertexWeights::new(reduced)))
                .map(|v| (int(1) + &xb) * v);
            t.check_eq(
                isp_multivariate(&g, &weights),
                rhs,
                g.vertex_count(),
                || graph_case(&g, format!("leaf contraction of {b} into {a}")),
            );
        }
    }
    t
}

/// `I(comb(G, k); x) = (1 + x)^{k n} I(G; x / (1 + x)^k)`.
pub fn check_comb_identity(g: &Graph, k: usize, x: &Rational) -> Result<bool> {
    let base = int(1) + x;
    let lhs = isp_eval(&comb(g, k), x)?;
    let y = x / pow(&base, k as i64);
    Ok(lhs == pow(&base, (k * g.vertex_count()) as i64) * isp_eval(g, &y)?)
}

fn comb_identity_suite() -> Tally {
    let mut t = Tally::new();
    let mut points = sample_points();
    points.extend([int(-3), rat(-1, 2), rat(-5, 4)]);
    for g in small_graphs(5) {
        for k in 0..=3 {
            for x in &points {
                let ok = check_comb_identity(&g, k, x).unwrap_or(false);
                t.check(ok, g.vertex_count(), || {
                    graph_case(
                        &g,
                        format!("comb identity with k = {k}, x = {}", format_rational(x)),
                    )
                });
            }
        }
    }
    t
}

fn pipeline_suite(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new();
    let oracle = OracleHandle::internal();
    for _ in 0..8 {
        let n = rng.gen_range(1..=5);
        let g = random_graph(rng, n, 0.5);
        for x in [int(2), rat(1, 2)] {
            let got = interpolate_coeffs(&g, &x, &oracle, DeltaMode::VerifiedMinimal);
            t.check_eq(got, isp_coeffs(&g), n, || {
                graph_case(&g, format!("interpolation at x = {}", format_rational(&x)))
            });
        }
    }
    t
}

/// Transformed graph at `x`, divided by the plan's factor, against
/// `I(G; target)`.
pub fn check_normalizer(g: &Graph, x: &Rational) -> Result<bool> {
    let plan = normalize_point(x)?;
    let lhs = isp_eval(&plan.transform(g), x)? / plan.factor(g.vertex_count());
    Ok(lhs == isp_eval(g, &plan.target)?)
}

fn normalizer_suite() -> Tally {
    let mut t = Tally::new();
    for g in small_graphs(4) {
        for x in [int(-3), rat(-1, 2), rat(-5, 4), rat(-1, 4), int(-7)] {
            let ok = check_normalizer(&g, &x).unwrap_or(false);
            t.check(ok, g.vertex_count(), || {
                graph_case(&g, format!("normalizer at x = {}", format_rational(&x)))
            });
        }
    }
    t
}
