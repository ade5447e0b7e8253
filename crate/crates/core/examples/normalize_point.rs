//! Moves points outside the nondegenerate range into it with 2-clones and
//! combs, then checks the plan on a small graph.
//!
//! cargo run --example normalize_point [x...]

use indpoly::arith::{format_rational, parse_rational};
use indpoly::calculus::normalize_point;
use indpoly::graph::Graph;
use indpoly::isp::isp_eval;

fn main() -> indpoly::Result<()> {
    let mut points: Vec<String> = std::env::args().skip(1).collect();
    if points.is_empty() {
        points = ["-3", "-1/2", "-5/4", "-1/4", "3"]
            .map(String::from)
            .to_vec();
    }
    let g = Graph::cycle(4);
    for p in points {
        let x = parse_rational(&p)?;
        let plan = match normalize_point(&x) {
            Ok(plan) => plan,
            Err(e) => {
                println!("{p}: {e}");
                continue;
            }
        };
        let transformed = plan.transform(&g);
        let recovered = isp_eval(&transformed, &x)? / plan.factor(g.vertex_count());
        let expected = isp_eval(&g, &plan.target)?;
        println!(
            "{plan}; C4 grows to {} vertices, I(C4; {}) = {} recovered exactly: {}",
            transformed.vertex_count(),
            format_rational(&plan.target),
            format_rational(&expected),
            recovered == expected
        );
    }
    Ok(())
}
