//! Counts the models of a small 3-CNF three ways: directly, after the
//! exactly-one rewrite, and as independent sets of a fixed size.
//!
//! cargo run --example sat_to_independent_sets [FILE.cnf]

use indpoly::cnf::{count_sat, count_x3sat, parse_dimacs};
use indpoly::isp::count_is_of_size;
use indpoly::reduce::ReductionReport;

const DEFAULT: &str = "p cnf 4 2\n1 -2 3 0\n-1 2 4 0\n";

fn main() -> indpoly::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let f = parse_dimacs(&text)?;
    let (report, x3, red) = ReductionReport::for_formula(&f)?;

    println!(
        "3-CNF: {} variables, {} clauses",
        f.variable_count(),
        f.clause_count()
    );
    println!(
        "exactly-one instance: {} variables, {} clauses",
        report.vars_out, report.clauses_out
    );
    println!(
        "graph: {} vertices, {} edges, target size {}, multiplier {}",
        report.vertices,
        red.graph.edge_count(),
        report.target_size,
        report.multiplier
    );

    let direct = count_sat(&f)?;
    let exactly_one = count_x3sat(&x3)?;
    let via_is = count_is_of_size(&red.graph, red.target_size)? * &red.multiplier;
    println!("#SAT = {direct}, #X3SAT = {exactly_one}, multiplier * #IS = {via_is}");
    assert!(direct == exactly_one && exactly_one == via_is);
    Ok(())
}
