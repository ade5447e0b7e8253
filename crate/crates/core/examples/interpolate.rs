//! Recovers every coefficient of I(G; X) using only evaluations at a single
//! point, applied to S-clones of G.
//!
//! cargo run --example interpolate [x]

use indpoly::arith::{format_rational, parse_rational};
use indpoly::graph::Graph;
use indpoly::interp::{interpolate, DeltaMode};
use indpoly::isp::isp_coeffs;
use indpoly::oracle::OracleHandle;

fn main() -> indpoly::Result<()> {
    let x = parse_rational(&std::env::args().nth(1).unwrap_or_else(|| "2".into()))?;
    let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])?;
    let oracle = OracleHandle::internal();

    for mode in [DeltaMode::VerifiedMinimal, DeltaMode::PaperFormula] {
        let result = interpolate(&g, &x, &oracle, mode)?;
        let family = result.family.as_ref().expect("nonempty graph");
        println!("{mode:?}: s0 = {}, delta = {}", family.s0, family.delta);
        for entry in family.dump() {
            println!(
                "  S_{} = {:?}: {} vertices, x(S) = {}",
                entry.i,
                entry.set,
                entry.clone_vertices,
                format_rational(&entry.point.0)
            );
        }
        println!("  coefficients {:?}", result.polynomial.coeff_strings());
        assert_eq!(result.polynomial, isp_coeffs(&g)?);
    }
    Ok(())
}
