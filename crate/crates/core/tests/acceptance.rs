//! The ten acceptance criteria, one pass/fail line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use indpoly::arith::{int, pow, rat, QuadExt, Rational};
use indpoly::calculus::{
    clone_factor, normalize_point, path_weights, path_weights_closed_form, x_of_s, TransformStep,
};
use indpoly::cnf::{count_sat, count_x3sat, CnfFormula, Literal};
use indpoly::graph::{
    attach_path, comb, delete_vertex, graphs_up_to_isomorphism, k_clone, random_graph, s_clone,
    CloneSpec, Graph,
};
use indpoly::interp::{build_clone_family, interpolate, DeltaMode};
use indpoly::isp::{count_is_of_size, isp_coeffs, isp_eval, isp_multivariate, VertexWeights};
use indpoly::oracle::OracleHandle;
use indpoly::reduce::{sat_count_via_is, schaefer_gadget, schaefer_reduce, x3sat_to_graph};
use indpoly::report::strip_timing;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_is_counts, brute_is_eval, brute_is_weighted, brute_models};

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn points() -> [Rational; 4] {
    [int(2), int(1), rat(1, 2), rat(-1, 5)]
}

fn graphs_up_to(n: usize) -> Vec<Graph> {
    (0..=n).flat_map(graphs_up_to_isomorphism).collect()
}

fn err(e: indpoly::Error) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    // (a, b, c) as variables 1..=free, u1..u6 after them
    for (vars, free) in [([1u32, 2, 3], 3u32), ([1, 2, 2], 2), ([1, 1, 1], 1)] {
        let u: [Literal; 6] = std::array::from_fn(|j| Literal::pos(free + 1 + j as u32));
        let gadget = schaefer_gadget(
            Literal::pos(vars[0]),
            Literal::pos(vars[1]),
            Literal::pos(vars[2]),
            u,
        );
        for corner in 0..1u64 << free {
            let extensions = (0..64u64)
                .filter(|ext| {
                    let a = corner | ext << free;
                    gadget
                        .iter()
                        .all(|c| c.iter().filter(|l| l.eval(a)).count() == 1)
                })
                .count();
            let holds = vars.iter().any(|&v| corner >> (v - 1) & 1 == 1);
            ensure(extensions == usize::from(holds), || {
                format!("gadget {vars:?} corner {corner:03b}: {extensions} extensions")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} corners (8 distinct, 4 with c:=b, 2 with c:=b:=a)"
    ))
}

fn all_clauses(n: u32) -> Vec<Vec<i64>> {
    let lits: Vec<i64> = (1..=n as i64).flat_map(|v| [v, -v]).collect();
    let mut out = Vec::new();
    for i in 0..lits.len() {
        out.push(vec![lits[i]]);
        for j in i + 1..lits.len() {
            out.push(vec![lits[i], lits[j]]);
            for k in j + 1..lits.len() {
                out.push(vec![lits[i], lits[j], lits[k]]);
            }
        }
    }
    out
}

fn check_chain(f: &CnfFormula) -> Result<(), String> {
    let expected = brute_models(f, false);
    let direct = count_sat(f).map_err(err)?;
    let x3 = schaefer_reduce(f).map_err(err)?;
    let via_x3 = count_x3sat(&x3).map_err(err)?;
    let via_is = sat_count_via_is(f).map_err(err)?;
    ensure(
        direct == expected.into() && via_x3 == expected.into() && via_is == expected.into(),
        || {
            format!(
                "{}: brute {expected}, sat {direct}, x3sat {via_x3}, is {via_is}",
                f.to_dimacs()
            )
        },
    )
}

fn criterion_2() -> Outcome {
    let mut formulas = 0;
    for n in 1..=3u32 {
        let clauses = all_clauses(n);
        check_chain(&CnfFormula::new(n, vec![]).map_err(err)?)?;
        for i in 0..clauses.len() {
            check_chain(&CnfFormula::from_dimacs_clauses(n, &[&clauses[i]]).map_err(err)?)?;
            for j in i..clauses.len() {
                check_chain(
                    &CnfFormula::from_dimacs_clauses(n, &[&clauses[i], &clauses[j]])
                        .map_err(err)?,
                )?;
                formulas += 1;
            }
            formulas += 1;
        }
        formulas += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5u32);
        let m = rng.gen_range(0..=2);
        let clauses: Vec<Vec<i64>> = (0..m)
            .map(|_| {
                (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let v = rng.gen_range(1..=n as i64);
                        if rng.gen_bool(0.5) {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
        check_chain(&CnfFormula::from_dimacs_clauses(n, &refs).map_err(err)?)?;
    }
    Ok(format!("{formulas} exhaustive + 200 random formulas"))
}

fn random_x3sat(rng: &mut ChaCha8Rng) -> CnfFormula {
    let n = rng.gen_range(3..=7u32);
    let mut budget = rng.gen_range(0..=15usize);
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    while budget >= 2 {
        let width = if budget >= 3 { rng.gen_range(2..=3) } else { 2 };
        let mut vars: Vec<i64> = Vec::new();
        while vars.len() < width {
            let v = rng.gen_range(1..=n as i64);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        clauses.push(
            vars.into_iter()
                .map(|v| if rng.gen_bool(0.5) { -v } else { v })
                .collect(),
        );
        budget -= width;
    }
    let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
    CnfFormula::from_dimacs_clauses(n, &refs).expect("valid instance")
}

/// Equal vertex and edge sets, ignoring literal labels.
fn same_structure(g: &Graph, h: &Graph) -> bool {
    g.vertex_count() == h.vertex_count() && g.edges() == h.edges()
}

fn criterion_3() -> Outcome {
    let single = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).map_err(err)?;
    let red = x3sat_to_graph(&single).map_err(err)?;
    ensure(same_structure(&red.graph, &Graph::complete(3)), || {
        "single clause is not K3".into()
    })?;
    ensure(
        count_is_of_size(&red.graph, 1).map_err(err)? == 3u32.into(),
        || "K3 size-1 sets".into(),
    )?;

    let pair = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, 2]]).map_err(err)?;
    let red = x3sat_to_graph(&pair).map_err(err)?;
    ensure(same_structure(&red.graph, &Graph::complete(4)), || {
        format!("expected K4, got\n{}", red.graph.to_dimacs())
    })?;
    ensure(
        count_is_of_size(&red.graph, 2).map_err(err)?.is_zero(),
        || "K4 size-2 sets".into(),
    )?;
    ensure(brute_models(&pair, true) == 0, || {
        "worked instance count".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nonzero = 0;
    for _ in 0..200 {
        let f = random_x3sat(&mut rng);
        let expected = brute_models(&f, true);
        let red = x3sat_to_graph(&f).map_err(err)?;
        let via_graph =
            count_is_of_size(&red.graph, red.target_size).map_err(err)? * &red.multiplier;
        let library = count_x3sat(&f).map_err(err)?;
        ensure(
            via_graph == expected.into() && library == expected.into(),
            || {
                format!(
                    "{}: brute {expected}, library {library}, graph {via_graph}",
                    f.to_dimacs()
                )
            },
        )?;
        nonzero += usize::from(expected > 0);
    }
    Ok(format!(
        "2 worked instances + 200 random ({nonzero} satisfiable)"
    ))
}

fn random_spec(rng: &mut ChaCha8Rng) -> CloneSpec {
    let len = rng.gen_range(1..=3);
    CloneSpec::new((0..len).map(|_| rng.gen_range(0..=4)).collect())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let f = {
            let n = rng.gen_range(1..=6u32);
            let clauses: Vec<Vec<i64>> = (0..rng.gen_range(0..=4))
                .map(|_| {
                    (0..rng.gen_range(1..=3))
                        .map(|_| rng.gen_range(1..=n as i64))
                        .collect()
                })
                .collect();
            let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
            CnfFormula::from_dimacs_clauses(n, &refs).map_err(err)?
        };
        let x3 = schaefer_reduce(&f).map_err(err)?;
        ensure(
            x3.clause_count() == 5 * f.clause_count()
                && x3.variable_count() as usize
                    == f.variable_count() as usize + 6 * f.clause_count(),
            || format!("Schaefer sizes for\n{}", f.to_dimacs()),
        )?;
        let inst = random_x3sat(&mut rng);
        let red = x3sat_to_graph(&inst).map_err(err)?;
        let widths: usize = inst.clauses().iter().map(Vec::len).sum();
        ensure(red.graph.vertex_count() == widths, || {
            format!("graph size for\n{}", inst.to_dimacs())
        })?;

        let n = rng.gen_range(0..=6);
        let g = random_graph(&mut rng, n, 0.5);
        let spec = random_spec(&mut rng);
        let expected = n * (spec.entries().iter().map(|&s| s as usize).sum::<usize>() + spec.len());
        ensure(s_clone(&g, &spec).vertex_count() == expected, || {
            format!("S-clone size, S = {spec}")
        })?;
    }
    Ok("100 formulas, 100 instances, 100 (G, S) pairs".into())
}

fn criterion_5() -> Outcome {
    let worked_lhs =
        isp_eval(&s_clone(&Graph::path(2), &CloneSpec::new(vec![1])), &int(2)).map_err(err)?;
    ensure(worked_lhs == int(21), || {
        format!("K2 S-clone gives {worked_lhs}")
    })?;
    ensure(
        worked_lhs == int(9) * brute_is_eval(&Graph::path(2), &rat(2, 3)),
        || "21 = 9 I(K2; 2/3)".into(),
    )?;

    let graphs = graphs_up_to(6);
    let mut cases = 0;
    for seed in [1u64, 2, 3] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in &graphs {
            let spec = random_spec(&mut rng);
            for x in points() {
                let lhs = isp_eval(&s_clone(g, &spec), &x).map_err(err)?;
                let factor = clone_factor(&x, &spec, g.vertex_count()).map_err(err)?;
                let rhs = factor * isp_eval(g, &x_of_s(&x, &spec).map_err(err)?).map_err(err)?;
                ensure(lhs == rhs, || {
                    format!("S = {spec}, x = {x}\n{}", g.to_dimacs())
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{} graphs x 3 seeds x 4 points = {cases} identities",
        graphs.len()
    ))
}

fn weight_patterns(n: usize) -> Vec<Vec<Rational>> {
    let p = points();
    (0..p.len())
        .map(|shift| (0..n).map(|v| p[(v + shift) % p.len()].clone()).collect())
        .collect()
}

fn criterion_6() -> Outcome {
    let graphs = graphs_up_to(6);
    let mut counts = [0usize; 5];
    for g in &graphs {
        let n = g.vertex_count();
        let adj = g.neighbors();
        for x in points() {
            let base = int(1) + &x;
            for k in 1..=3usize {
                let shifted = pow(&base, k as i64) - int(1);
                let lhs = isp_eval(&k_clone(g, k).map_err(err)?, &x).map_err(err)?;
                ensure(lhs == brute_is_eval(g, &shifted), || {
                    format!("k-clone k = {k}, x = {x}\n{}", g.to_dimacs())
                })?;
                counts[0] += 1;

                let lhs = isp_eval(&comb(g, k), &x).map_err(err)?;
                let rhs =
                    pow(&base, (k * n) as i64) * brute_is_eval(g, &(&x / pow(&base, k as i64)));
                ensure(lhs == rhs, || {
                    format!("comb k = {k}, x = {x}\n{}", g.to_dimacs())
                })?;
                counts[1] += 1;
            }
            for v in 0..n {
                for len in 0..=4u32 {
                    let lhs = brute_is_eval(&attach_path(g, v, len as usize).map_err(err)?, &x);
                    let w = path_weights(&x, len);
                    let mut weights = vec![x.clone(); n];
                    weights[v] = &w.b / &w.c;
                    let rhs = &w.c * brute_is_weighted(g, &weights);
                    ensure(lhs == rhs, || {
                        format!("path at {v}, k = {len}, x = {x}\n{}", g.to_dimacs())
                    })?;
                    counts[2] += 1;
                }
            }
        }
        for weights in weight_patterns(n) {
            let full = brute_is_weighted(g, &weights);
            let library = isp_multivariate(g, &VertexWeights::new(weights.clone())).map_err(err)?;
            ensure(full == library, || {
                format!("multivariate evaluator\n{}", g.to_dimacs())
            })?;
            for b in 0..n {
                if let [a] = adj[b][..] {
                    let mut reduced = weights.clone();
                    reduced[a] = &weights[a] / (int(1) + &weights[b]);
                    reduced.remove(b);
                    let h = delete_vertex(g, b).map_err(err)?;
                    let rhs = (int(1) + &weights[b]) * brute_is_weighted(&h, &reduced);
                    ensure(full == rhs, || {
                        format!("leaf {b} -> {a}\n{}", g.to_dimacs())
                    })?;
                    counts[3] += 1;
                }
                for a in 0..b {
                    if adj[a] == adj[b] {
                        let mut reduced = weights.clone();
                        reduced[a] = (int(1) + &weights[a]) * (int(1) + &weights[b]) - int(1);
                        reduced.remove(b);
                        let h = delete_vertex(g, b).map_err(err)?;
                        ensure(full == brute_is_weighted(&h, &reduced), || {
                            format!("clone contraction {a}, {b}\n{}", g.to_dimacs())
                        })?;
                        counts[4] += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "k-clone {}, comb {}, path {}, leaf {}, clone contraction {}",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

fn criterion_7() -> Outcome {
    let spots = [(0, 2, 1), (1, 2, 3), (2, 6, 5)];
    for (k, b, c) in spots {
        let w = path_weights(&int(2), k);
        ensure(w.b == int(b) && w.c == int(c), || {
            format!("spot k = {k}: ({}, {})", w.b, w.c)
        })?;
    }
    let mut checked = 0;
    for x in points() {
        let (mut b, mut c) = (x.clone(), int(1));
        for k in 0..=50u32 {
            let (cb, cc) = path_weights_closed_form(&x, k).map_err(err)?;
            let d = cb.d.clone();
            ensure(
                cb == QuadExt::from_rational(b.clone(), &d)
                    && cc == QuadExt::from_rational(c.clone(), &d),
                || format!("closed form at x = {x}, k = {k}"),
            )?;
            let lib = path_weights(&x, k);
            ensure(lib.b == b && lib.c == c, || {
                format!("recurrence at x = {x}, k = {k}")
            })?;
            (b, c) = (&x * &c, &b + &c);
            checked += 1;
        }
    }
    Ok(format!("3 spot values + {checked} closed-form checks"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let oracle = OracleHandle::internal();
    let mut runs = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let expected: Vec<Rational> = brute_is_counts(&g)
            .into_iter()
            .map(|c| int(c as i64))
            .collect();
        for x in [int(2), rat(1, 2)] {
            let family = build_clone_family(&x, n, DeltaMode::VerifiedMinimal).map_err(err)?;
            let mut pts = family.points.clone();
            pts.sort();
            pts.dedup();
            ensure(pts.len() == n + 1, || {
                format!("family points collide at x = {x}")
            })?;
            let result = interpolate(&g, &x, &oracle, DeltaMode::VerifiedMinimal).map_err(err)?;
            ensure(result.polynomial.coeffs() == expected.as_slice(), || {
                format!(
                    "x = {x}: {:?}\n{}",
                    result.polynomial.coeff_strings(),
                    g.to_dimacs()
                )
            })?;
            ensure(result.polynomial == isp_coeffs(&g).map_err(err)?, || {
                "against isp_coeffs".into()
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} interpolations"))
}

fn criterion_9() -> Outcome {
    let plan = normalize_point(&int(-3)).map_err(err)?;
    ensure(plan.target == int(3), || {
        format!("x = -3 target {}", plan.target)
    })?;
    let plan = normalize_point(&rat(-1, 2)).map_err(err)?;
    ensure(
        plan.steps.first() == Some(&TransformStep::Comb { k: 4 })
            && plan.intermediate_points.first() == Some(&int(-8))
            && plan.target == int(48),
        || format!("x = -1/2 plan {plan}"),
    )?;
    let mut cases = 0;
    for g in graphs_up_to(5) {
        for x in [int(-3), rat(-1, 2), rat(-5, 4)] {
            let plan = normalize_point(&x).map_err(err)?;
            let transformed = plan.transform(&g);
            let lhs = isp_eval(&transformed, &x).map_err(err)? / plan.factor(g.vertex_count());
            let rhs = brute_is_eval(&g, &plan.target);
            ensure(lhs == rhs, || format!("x = {x}\n{}", g.to_dimacs()))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (graph, point) pairs"))
}

fn verify_all() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_indpoly"))
        .args(["verify", "--suite", "all", "--seed", "7"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("verify exited with {}", out.status)
    })?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn without_timing(text: &str) -> Result<Vec<serde_json::Value>, String> {
    text.lines()
        .map(|line| {
            let mut v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
            strip_timing(&mut v);
            Ok(v)
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let first = verify_all()?;
    let second = verify_all()?;
    let (a, b) = (without_timing(&first)?, without_timing(&second)?);
    ensure(a == b, || "reports differ beyond timing".into())?;
    let mask = |s: &str| {
        s.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).expect("json line");
                strip_timing(&mut v);
                serde_json::to_string(&v).expect("json")
            })
            .collect::<Vec<_>>()
    };
    ensure(mask(&first) == mask(&second), || {
        "re-serialized reports differ".into()
    })?;
    Ok(format!(
        "{} suite records identical modulo elapsed_ms",
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("gadget parsimony", criterion_1, Duration::from_secs(1)),
        ("end-to-end #3SAT", criterion_2, Duration::from_secs(60)),
        (
            "graph reduction bijection",
            criterion_3,
            Duration::from_secs(60),
        ),
        ("size laws", criterion_4, Duration::MAX),
        (
            "master S-clone identity",
            criterion_5,
            Duration::from_secs(300),
        ),
        (
            "k-clone, comb, leaf, contraction, path identities",
            criterion_6,
            Duration::from_secs(300),
        ),
        ("path-weight closed forms", criterion_7, Duration::MAX),
        (
            "interpolation pipeline",
            criterion_8,
            Duration::from_secs(600),
        ),
        ("point normalizer", criterion_9, Duration::MAX),
        ("determinism", criterion_10, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > budget {
                Err(format!("{detail}; took {elapsed:?}, budget {budget:?}"))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS {name}: {detail} [{:.2?}]",
                i + 1,
                elapsed
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL {name}: {detail} [{:.2?}]",
                    i + 1,
                    elapsed
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
