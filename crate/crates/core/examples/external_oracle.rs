//! Drives the interpolation pipeline through an external process speaking
//! the oracle line protocol. By default this is `indpoly oracle-serve` from
//! the same target directory (run `cargo build` first).
//!
//! cargo run --example external_oracle [ORACLE COMMAND]

use indpoly::arith::int;
use indpoly::graph::Graph;
use indpoly::interp::{interpolate_coeffs, DeltaMode};
use indpoly::isp::isp_coeffs;
use indpoly::oracle::external_oracle;

fn main() -> indpoly::Result<()> {
    let command = match std::env::args().nth(1) {
        Some(cmd) => cmd,
        None => {
            let exe = std::env::current_exe()?;
            let bin = exe
                .parent()
                .and_then(|examples| examples.parent())
                .map(|dir| dir.join("indpoly"))
                .filter(|p| p.exists())
                .expect("indpoly binary not found; run `cargo build` first or pass a command");
            format!("'{}' oracle-serve", bin.display())
        }
    };
    println!("oracle: {command}");
    let oracle = external_oracle(&command);
    for g in [Graph::path(3), Graph::cycle(5), Graph::complete(3)] {
        let coeffs = interpolate_coeffs(&g, &int(2), &oracle, DeltaMode::VerifiedMinimal)?;
        println!(
            "{} vertices: {:?}",
            g.vertex_count(),
            coeffs.coeff_strings()
        );
        assert_eq!(coeffs, isp_coeffs(&g)?);
    }
    Ok(())
}
