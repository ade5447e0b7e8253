//! The graph transforms side by side on a path with three vertices, printed
//! as DIMACS edge lists together with their polynomials.
//!
//! cargo run --example graph_transforms

use indpoly::graph::{attach_path, comb, k_clone, s_clone, CloneSpec, Graph};
use indpoly::isp::isp_coeffs;

fn show(name: &str, g: &Graph) -> indpoly::Result<()> {
    println!("{name}: I = {:?}", isp_coeffs(g)?.coeff_strings());
    print!("{}", g.to_dimacs());
    Ok(())
}

fn main() -> indpoly::Result<()> {
    let g = Graph::path(3);
    show("P3", &g)?;
    show(
        "S-clone with S = {0,2}",
        &s_clone(&g, &CloneSpec::new(vec![0, 2])),
    )?;
    show("2-clone", &k_clone(&g, 2)?)?;
    show("path of length 3 at vertex 1", &attach_path(&g, 1, 3)?)?;
    show("comb with 2 leaves per vertex", &comb(&g, 2))?;
    Ok(())
}
