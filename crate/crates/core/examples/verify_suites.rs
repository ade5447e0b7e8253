//! Runs the seeded property suites and prints one line per suite.
//!
//! cargo run --release --example verify_suites [seed]

use indpoly::verify::{run_suite, DEFAULT_SEED, SUITES};

fn main() -> indpoly::Result<()> {
    let seed = std::env::args().nth(1).map_or(DEFAULT_SEED, |s| {
        s.parse().expect("seed must be an integer")
    });
    let mut failed = 0;
    for name in SUITES {
        let report = run_suite(name, seed)?;
        println!(
            "{:<15} {:>5}/{:<5} {} ms",
            report.suite, report.passed, report.cases, report.elapsed_ms
        );
        for c in &report.failures {
            println!("  case {}: {}\n{}", c.case, c.description, c.input);
        }
        failed += usize::from(!report.ok());
    }
    std::process::exit(i32::from(failed > 0));
}
