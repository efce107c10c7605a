//! Generative invariants: round trips, adjoints, and smoothing bounds.

use poslp::csb::{CooMatrix, CsbMatrix, TileDims};
use poslp::graph::Graph;
use poslp::kernels;
use poslp::model::LinearOperator;
use poslp::ops::{IncidenceOp, InterweaveOp, PairOp};
use poslp::smooth;
use proptest::prelude::*;
use std::sync::Arc;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..40, any::<u64>()).prop_map(|(n, seed)| {
        let p = 3.0 / n as f64;
        poslp::gen::erdos_renyi(n, p, seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_market_round_trip(g in arb_graph()) {
        prop_assume!(g.edge_count() > 0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.mtx");
        g.write_matrix_market(&path).unwrap();
        let (back, _) = Graph::from_matrix_market(&path, Default::default()).unwrap();
        prop_assert_eq!(g.edges(), back.edges());
    }

    #[test]
    fn csb_round_trip_preserves_triplets(
        rows in 1usize..50,
        cols in 1usize..50,
        seed in any::<u64>(),
        tile in 1usize..17,
    ) {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let nnz = (rows * cols / 3).max(1);
        let mut seen = std::collections::HashSet::new();
        let mut triplets = Vec::new();
        for _ in 0..nnz {
            let r = rng.random_range(0..rows) as u32;
            let c = rng.random_range(0..cols) as u32;
            if seen.insert((r, c)) {
                triplets.push((r, c, rng.random_range(0.01..5.0)));
            }
        }
        let coo = CooMatrix::new(rows, cols, triplets).unwrap();
        let csb = CsbMatrix::from_coo(&coo, TileDims { r: tile, k: tile });
        prop_assert_eq!(coo.normalized_triplets(), csb.to_coo().normalized_triplets());
    }

    #[test]
    fn implicit_operators_are_adjoint(g in arb_graph(), seed in any::<u64>()) {
        prop_assume!(g.edge_count() > 0);
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = Arc::new(g);
        let ops: Vec<Box<dyn LinearOperator>> = vec![
            Box::new(IncidenceOp::new(g.clone())),
            Box::new(PairOp::new(g.clone())),
            Box::new(InterweaveOp::new(g.edge_count())),
        ];
        for op in &ops {
            let x: Vec<f64> = (0..op.cols()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let w: Vec<f64> = (0..op.rows()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut ax = vec![0.0; op.rows()];
            op.apply(&x, &mut ax);
            let mut atw = vec![0.0; op.cols()];
            op.apply_t(&w, &mut atw);
            let lhs = kernels::dot(&w, &ax);
            let rhs = kernels::dot(&atw, &x);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn smax_sandwich_and_shift(
        v in prop::collection::vec(-5.0f64..5.0, 1..120),
        eta in 0.5f64..400.0,
        shift in -3.0f64..3.0,
    ) {
        let n = v.len() as f64;
        let s = smooth::smax(&v, eta);
        let mx = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(s >= mx - 1e-12 && s <= mx + n.ln() / eta + 1e-12);

        // shifting every entry shifts the smoothed maximum exactly
        let moved: Vec<f64> = v.iter().map(|x| x + shift).collect();
        let s2 = smooth::smax(&moved, eta);
        prop_assert!((s2 - (s + shift)).abs() <= 1e-10);
    }
}
