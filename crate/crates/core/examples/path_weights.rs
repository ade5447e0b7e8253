//! Path weights from the transfer recurrence next to their closed forms in
//! the quadratic field Q(sqrt(1 + 4x)).
//!
//! cargo run --example path_weights [x] [max_k]

use indpoly::arith::{format_rational, lambda_pair, parse_rational, QuadExt};
use indpoly::calculus::{path_weight_table, path_weights_closed_form};

fn main() -> indpoly::Result<()> {
    let mut args = std::env::args().skip(1);
    let x = parse_rational(&args.next().unwrap_or_else(|| "2".into()))?;
    let max_k: u32 = args
        .next()
        .map_or(8, |s| s.parse().expect("max_k must be an integer"));

    let (l1, l2) = lambda_pair(&x)?;
    println!(
        "x = {}: lambda1 = {l1} (~{:.6}), lambda2 = {l2} (~{:.6})",
        format_rational(&x),
        l1.to_f64(),
        l2.to_f64()
    );

    for w in path_weight_table(&x, max_k) {
        let (b, c) = path_weights_closed_form(&x, w.k)?;
        let agree = b == QuadExt::from_rational(w.b.clone(), &b.d)
            && c == QuadExt::from_rational(w.c.clone(), &c.d);
        println!(
            "k = {:>2}: B = {:>12}  C = {:>12}  closed form {}",
            w.k,
            format_rational(&w.b),
            format_rational(&w.c),
            if agree { "agrees" } else { "DIFFERS" }
        );
    }
    Ok(())
}
