//! The internal evaluator served over the line protocol by
//! `indpoly oracle-serve` must agree with the in-process oracle.

use indpoly::arith::{int, rat};
use indpoly::graph::random_graph;
use indpoly::interp::{interpolate, DeltaMode};
use indpoly::oracle::{external_oracle, OracleHandle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn served() -> OracleHandle {
    external_oracle(&format!("'{}' oracle-serve", env!("CARGO_BIN_EXE_indpoly")))
}

#[test]
fn served_and_internal_evaluations_agree() {
    let ext = served();
    let internal = OracleHandle::internal();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in 0..40 {
        let n = rng.gen_range(0..=12);
        let g = random_graph(&mut rng, n, 0.4);
        let x = rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        assert_eq!(
            ext.evaluate(&g, &x, id).unwrap(),
            internal.evaluate(&g, &x, id).unwrap()
        );
    }
}

#[test]
fn interpolation_through_served_oracle() {
    let ext = served();
    let internal = OracleHandle::internal();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5 {
        let n = rng.gen_range(1..=5);
        let g = random_graph(&mut rng, n, 0.5);
        for x in [int(2), rat(1, 2)] {
            let a = interpolate(&g, &x, &ext, DeltaMode::VerifiedMinimal).unwrap();
            let b = interpolate(&g, &x, &internal, DeltaMode::VerifiedMinimal).unwrap();
            assert_eq!(a.oracle_values, b.oracle_values);
            assert_eq!(a.polynomial, b.polynomial);
        }
    }
}

#[test]
fn failing_oracle_names_the_clone() {
    let broken =
        external_oracle(r#"read -r line; echo '{"value":"1"}'; read -r line; echo 'garbage'"#);
    let err = interpolate(
        &indpoly::graph::Graph::path(3),
        &int(2),
        &broken,
        DeltaMode::VerifiedMinimal,
    )
    .unwrap_err();
    assert!(
        matches!(err, indpoly::Error::Oracle { index: 1, .. }),
        "{err}"
    );
}
