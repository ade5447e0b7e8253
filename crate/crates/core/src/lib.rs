//! Exact toolkit for the independent set polynomial
//! `I(G; X) = sum over independent sets A of X^|A|`.
//!
//! * [`cnf`] and [`reduce`]: DIMACS input, brute-force `#SAT`/`#X3SAT`
//!   counters and the parsimonious chain `#3SAT -> #X3SAT -> #IS`.
//! * [`graph`]: graphs and the S-clone, k-clone, path and comb transforms.
//! * [`isp`]: definitional evaluators (enumeration and branching).
//! * [`calculus`]: path weights, shifted points `x(S)` and the point
//!   normalizer.
//! * [`interp`] and [`oracle`]: coefficient recovery from evaluations at a
//!   single point.
//! * [`verify`]: seeded property suites over all of the above.
//! * [`report`]: the line-delimited records of the `indpoly` binary.

pub mod arith;
pub mod calculus;
pub mod cnf;
pub mod error;
pub mod graph;
pub mod interp;
pub mod isp;
pub mod oracle;
pub mod poly;
pub mod reduce;
pub mod report;
pub mod verify;

pub use error::{Error, ErrorKind, Result};
