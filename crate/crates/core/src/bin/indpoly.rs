use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use indpoly::arith::{format_rational, parse_rational, Rational};
use indpoly::calculus::{clone_factor, normalize_point, x_of_s};
use indpoly::cnf::{count_sat, count_x3sat, parse_dimacs, CnfFormula};
use indpoly::graph::{parse_graph, s_clone, CloneSpec, Graph};
use indpoly::interp::{interpolate, DeltaMode};
use indpoly::isp::{isp_coeffs, isp_eval, Limits};
use indpoly::oracle::{external_oracle, serve, OracleHandle};
use indpoly::reduce::{sat_count_via_is, schaefer_reduce, x3sat_to_graph, ReductionReport};
use indpoly::report::RunReport;
use indpoly::verify::{run_suite, suite_names, DEFAULT_SEED};
use indpoly::{Error, ErrorKind, Result};

/// Exact independent set polynomial toolkit.
#[derive(Parser)]
#[command(name = "indpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count satisfying assignments of a DIMACS CNF.
    CountSat { file: PathBuf },
    /// Count exactly-one assignments of a DIMACS CNF with clause widths 2 or 3.
    CountX3sat { file: PathBuf },
    /// Rewrite a 3-CNF as an exactly-one instance with the same count.
    ReduceX3sat { file: PathBuf },
    /// Rewrite a 3-CNF (or, with --x3sat, an exactly-one instance) as a graph.
    ReduceGraph {
        file: PathBuf,
        #[arg(long)]
        x3sat: bool,
    },
    /// Count satisfying assignments through independent sets.
    CountViaIs { file: PathBuf },
    /// Evaluate I(G; x) at a rational point.
    IspEval {
        graph: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        at: Rational,
    },
    /// All coefficients of I(G; X).
    IspCoeffs { graph: PathBuf },
    /// Build the S-clone of a graph, e.g. --s 0,2,3.
    Clone {
        graph: PathBuf,
        #[arg(long, value_parser = clone_spec_arg)]
        s: CloneSpec,
        /// Also report the shifted point and factor at this x.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        at: Option<Rational>,
    },
    /// Plan the transforms moving x into the nondegenerate range.
    NormalizePoint {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        at: Rational,
    },
    /// Recover I(G; X) from evaluations of S-clones at a single point.
    Interpolate {
        graph: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        at: Rational,
        /// Shell command speaking the oracle line protocol.
        #[arg(long)]
        oracle: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Verified)]
        mode: Mode,
    },
    /// Run seeded property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Answer oracle requests on stdin with the internal evaluator.
    OracleServe,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Verified,
    Paper,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn clone_spec_arg(s: &str) -> std::result::Result<CloneSpec, String> {
    s.parse::<CloneSpec>().map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn read_cnf(path: &Path) -> Result<CnfFormula> {
    parse_dimacs(&read(path)?)
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?)
}

fn cnf_input(path: &Path, f: &CnfFormula) -> Value {
    json!({"file": path, "n": f.variable_count(), "m": f.clause_count()})
}

fn graph_input(path: &Path, g: &Graph) -> Value {
    json!({"file": path, "vertices": g.vertex_count(), "edges": g.edge_count()})
}

fn emit(report: RunReport) -> Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    report.write_line(&mut lock)?;
    lock.flush()?;
    Ok(())
}

/// Returns whether every check passed.
fn run(cmd: Cmd) -> Result<bool> {
    let t = Instant::now();
    match cmd {
        Cmd::CountSat { file } => {
            let f = read_cnf(&file)?;
            let count = count_sat(&f)?;
            emit(RunReport::new(
                "count-sat",
                cnf_input(&file, &f),
                json!({"count": count.to_string()}),
                t,
            ))?;
        }
        Cmd::CountX3sat { file } => {
            let f = read_cnf(&file)?;
            let count = count_x3sat(&f)?;
            emit(RunReport::new(
                "count-x3sat",
                cnf_input(&file, &f),
                json!({"count": count.to_string()}),
                t,
            ))?;
        }
        Cmd::ReduceX3sat { file } => {
            let f = read_cnf(&file)?;
            let x3 = schaefer_reduce(&f)?;
            let output = json!({
                "clauses_out": x3.clause_count(),
                "vars_out": x3.variable_count(),
                "formula": x3.to_dimacs(),
            });
            emit(RunReport::new(
                "reduce-x3sat",
                cnf_input(&file, &f),
                output,
                t,
            ))?;
        }
        Cmd::ReduceGraph { file, x3sat } => {
            let f = read_cnf(&file)?;
            let (report, graph) = if x3sat {
                let red = x3sat_to_graph(&f)?;
                let report = json!({
                    "clauses_in": f.clause_count(),
                    "vertices": red.graph.vertex_count(),
                    "target_size": red.target_size,
                    "multiplier": red.multiplier.to_string(),
                });
                (report, red.graph)
            } else {
                let (report, _, red) = ReductionReport::for_formula(&f)?;
                (
                    serde_json::to_value(report).expect("report serialization"),
                    red.graph,
                )
            };
            let output = json!({"report": report, "graph": graph.to_dimacs()});
            emit(RunReport::new(
                "reduce-graph",
                cnf_input(&file, &f),
                output,
                t,
            ))?;
        }
        Cmd::CountViaIs { file } => {
            let f = read_cnf(&file)?;
            let count = sat_count_via_is(&f)?;
            emit(RunReport::new(
                "count-via-is",
                cnf_input(&file, &f),
                json!({"count": count.to_string()}),
                t,
            ))?;
        }
        Cmd::IspEval { graph, at } => {
            let g = read_graph(&graph)?;
            let value = isp_eval(&g, &at)?;
            let mut input = graph_input(&graph, &g);
            input["at"] = json!(format_rational(&at));
            emit(RunReport::new(
                "isp-eval",
                input,
                json!({"value": format_rational(&value)}),
                t,
            ))?;
        }
        Cmd::IspCoeffs { graph } => {
            let g = read_graph(&graph)?;
            let p = isp_coeffs(&g)?;
            emit(RunReport::new(
                "isp-coeffs",
                graph_input(&graph, &g),
                json!({"coeffs": p.coeff_strings()}),
                t,
            ))?;
        }
        Cmd::Clone { graph, s, at } => {
            let g = read_graph(&graph)?;
            let h = s_clone(&g, &s);
            let mut input = graph_input(&graph, &g);
            input["s"] = json!(s.to_string());
            let mut output = json!({
                "vertices": h.vertex_count(),
                "edges": h.edge_count(),
                "graph": h.to_dimacs(),
            });
            if let Some(x) = at {
                input["at"] = json!(format_rational(&x));
                output["point"] = json!(format_rational(&x_of_s(&x, &s)?));
                output["factor"] = json!(format_rational(&clone_factor(&x, &s, g.vertex_count())?));
            }
            emit(RunReport::new("clone", input, output, t))?;
        }
        Cmd::NormalizePoint { at } => {
            let plan = normalize_point(&at)?;
            let output = serde_json::to_value(&plan).expect("plan serialization");
            emit(RunReport::new(
                "normalize-point",
                json!({"at": format_rational(&at)}),
                output,
                t,
            ))?;
        }
        Cmd::Interpolate {
            graph,
            at,
            oracle,
            mode,
        } => {
            let g = read_graph(&graph)?;
            let handle = match &oracle {
                Some(command) => external_oracle(command),
                None => OracleHandle::internal(),
            };
            let mode = match mode {
                Mode::Verified => DeltaMode::VerifiedMinimal,
                Mode::Paper => DeltaMode::PaperFormula,
            };
            let result = interpolate(&g, &at, &handle, mode)?;
            let mut input = graph_input(&graph, &g);
            input["at"] = json!(format_rational(&at));
            input["oracle"] = json!(oracle.as_deref().unwrap_or("internal"));
            let family = result.family.as_ref().map(|f| {
                json!({
                    "s0": f.s0,
                    "delta": f.delta,
                    "mode": f.mode,
                    "sets": f.dump(),
                })
            });
            let output = json!({
                "coeffs": result.polynomial.coeff_strings(),
                "oracle_queries": result.oracle_values.len(),
                "family": family,
            });
            emit(RunReport::new("interpolate", input, output, t))?;
        }
        Cmd::Verify { suite, seed } => {
            let names = suite_names(&suite)?;
            let mut all_ok = true;
            for name in names {
                let started = Instant::now();
                let report = run_suite(name, seed)?;
                all_ok &= report.ok();
                let output = serde_json::to_value(&report).expect("suite serialization");
                emit(RunReport::new(
                    "verify",
                    json!({"suite": name, "seed": seed}),
                    output,
                    started,
                ))?;
            }
            return Ok(all_ok);
        }
        Cmd::OracleServe => {
            let stdin = io::stdin();
            serve(stdin.lock(), io::stdout(), &Limits::default())?;
        }
    }
    Ok(true)
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Domain => 1,
        ErrorKind::Capacity => 2,
        ErrorKind::Io => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("indpoly: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
