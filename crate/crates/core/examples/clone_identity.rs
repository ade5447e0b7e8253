//! The S-clone of a graph evaluated at x equals a known factor times the
//! original graph evaluated at the shifted point x(S).
//!
//! cargo run --example clone_identity [S] [x]

use indpoly::arith::{format_rational, parse_rational};
use indpoly::calculus::{clone_factor, x_of_s};
use indpoly::graph::{s_clone, CloneSpec, Graph};
use indpoly::isp::isp_eval;

fn main() -> indpoly::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec: CloneSpec = args.next().unwrap_or_else(|| "1".into()).parse()?;
    let x = parse_rational(&args.next().unwrap_or_else(|| "2".into()))?;

    for (name, g) in [
        ("K2", Graph::path(2)),
        ("P4", Graph::path(4)),
        ("C5", Graph::cycle(5)),
        ("K4", Graph::complete(4)),
    ] {
        let cloned = s_clone(&g, &spec);
        let lhs = isp_eval(&cloned, &x)?;
        let shifted = x_of_s(&x, &spec)?;
        let factor = clone_factor(&x, &spec, g.vertex_count())?;
        let rhs = &factor * isp_eval(&g, &shifted)?;
        println!(
            "{name} with S = {spec}: {} vertices, I = {}; factor {} * I({name}; {}) = {}",
            cloned.vertex_count(),
            format_rational(&lhs),
            format_rational(&factor),
            format_rational(&shifted),
            format_rational(&rhs)
        );
        assert_eq!(lhs, rhs);
    }
    Ok(())
}
