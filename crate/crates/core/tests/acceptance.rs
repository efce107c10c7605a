//! Acceptance gate: one test per criterion, each printing a pass line
//! with its measured numbers (visible with `--nocapture`).
//!
//! Run with
//!   cargo test -p poslp --test acceptance -- --nocapture

use poslp::gen;
use poslp::graph::Graph;
use poslp::kernels;
use poslp::model::{CountingOperator, LinearOperator, MixedInstance, ObjBound};
use poslp::ops::{incidence_apply, IncidenceOp, IncidenceTransposeOp, InterweaveOp, PairOp};
use poslp::oracle;
use poslp::problems::{self, ProblemKind};
use poslp::search::{bang_for_buck, SearchInputs};
use poslp::smooth;
use poslp::solver::{
    solve_feasibility, solve_pure_covering, solve_pure_packing, SolveStatus, Solver, SolverConfig,
    StepMode, StepOutcome, RESYNC_INTERVAL,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::Instant;

fn csb_instance(coo_p: poslp::csb::CooMatrix, coo_c: poslp::csb::CooMatrix) -> MixedInstance {
    MixedInstance::new(
        Arc::new(poslp::csb::CsbMatrix::from_coo(&coo_p, Default::default())),
        Arc::new(poslp::csb::CsbMatrix::from_coo(&coo_c, Default::default())),
    )
    .unwrap()
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
}

#[test]
fn criterion_01_approximation_contract() {
    let start = Instant::now();
    let cfg = SolverConfig::default(); // eps = 0.1
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC01);
    let mut worst_pack = 0.0f64;
    let mut worst_cover = f64::INFINITY;
    for trial in 0..100 {
        let n = rng.random_range(2..=200);
        let mp = rng.random_range(1..=200);
        let mc = rng.random_range(1..=200);
        let inst = gen::planted_feasible_instance(n, mp, mc, 10_000 + trial);
        let res = solve_feasibility(&inst, cfg).unwrap();
        assert_ne!(
            res.status,
            SolveStatus::Infeasible,
            "trial {trial} (n={n}, mp={mp}, mc={mc}): planted-feasible instance declared infeasible"
        );
        assert_eq!(
            res.status,
            SolveStatus::Feasible,
            "trial {trial} (n={n}, mp={mp}, mc={mc}) did not finish"
        );
        assert!(
            res.max_packing <= 1.1 + 1e-9,
            "trial {trial}: max packing {}",
            res.max_packing
        );
        assert!(
            res.min_covering >= 1.0 - 1e-9,
            "trial {trial}: min covering {}",
            res.min_covering
        );
        worst_pack = worst_pack.max(res.max_packing);
        worst_cover = worst_cover.min(res.min_covering);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "criterion 1 took {elapsed:.1}s, budget 60s");
    println!(
        "criterion 1 (approximation contract): PASS - 100/100 feasible, \
         worst max(Px) {worst_pack:.6}, worst min(Cx) {worst_cover:.6}, {elapsed:.1}s"
    );
}

#[test]
fn criterion_02_bipartite_matching_integrality() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC02);
    let mut checked = 0;
    let mut worst_lo = f64::INFINITY;
    let mut worst_hi = 0.0f64;
    while checked < 20 {
        let nl = rng.random_range(2..=100);
        let nr = rng.random_range(2..=(200 - nl).min(100));
        let p = rng.random_range(0.02..0.3);
        let g = Arc::new(gen::random_bipartite(nl, nr, p, 20_000 + checked));
        if g.edge_count() == 0 {
            continue;
        }
        checked += 1;
        let hk = oracle::hopcroft_karp(&g).unwrap() as f64;
        let inst = problems::build_bipartite_matching(g).unwrap();
        let res = solve_pure_packing(inst.packing().clone(), cfg).unwrap();
        assert!(
            res.value >= 0.9 * hk - 1e-9,
            "graph {checked}: value {} below 0.9 * HK ({hk})",
            res.value
        );
        assert!(
            res.value <= 1.1 * hk + 1e-9,
            "graph {checked}: value {} above 1.1 * HK ({hk})",
            res.value
        );
        worst_lo = worst_lo.min(res.value / hk);
        worst_hi = worst_hi.max(res.value / hk);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "criterion 2 took {elapsed:.1}s, budget 60s");
    println!(
        "criterion 2 (bipartite matching vs Hopcroft-Karp): PASS - 20 graphs, \
         value/HK in [{worst_lo:.4}, {worst_hi:.4}], {elapsed:.1}s"
    );
}

#[test]
fn criterion_03_vertex_cover_vs_exact_lp() {
    let start = Instant::now();
    let cfg = SolverConfig::default();

    // cross-oracle agreement: exhaustive through n = 6, seeded samples at 7 and 8
    let mut cross_checked = 0;
    for n in 2..=6 {
        for g in oracle::connected_graphs(n).unwrap() {
            let hi = oracle::half_integral_vcover(&g).unwrap();
            let lp = oracle::lp_vertex_enumeration(&oracle::vcover_lp(&g)).unwrap();
            assert!(
                (hi - lp).abs() < 1e-9,
                "cross-oracle mismatch on n={n}: half-integral {hi} vs vertex enumeration {lp}"
            );
            cross_checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC03);
    for n in [7usize, 8] {
        let classes = oracle::connected_graphs(n).unwrap();
        for _ in 0..10 {
            let g = &classes[rng.random_range(0..classes.len())];
            let hi = oracle::half_integral_vcover(g).unwrap();
            let lp = oracle::lp_vertex_enumeration(&oracle::vcover_lp(g)).unwrap();
            assert!((hi - lp).abs() < 1e-9, "cross-oracle mismatch at n={n}");
            cross_checked += 1;
        }
    }

    // MWU against the half-integral optimum on every connected graph
    let mut solved = 0;
    let mut worst_ratio = 0.0f64;
    for n in 2..=8 {
        let graphs = oracle::connected_graphs(n).unwrap();
        let results: Vec<(f64, f64)> = graphs
            .iter()
            .map(|g| {
                let opt = oracle::half_integral_vcover(g).unwrap();
                let g = Arc::new(g.clone());
                let inst = problems::build_vertex_cover(g).unwrap();
                let res = solve_pure_covering(inst.covering().clone(), cfg).unwrap();
                let mut rows = vec![0.0; inst.covering().rows()];
                inst.covering().apply(&res.x, &mut rows);
                assert!(
                    kernels::min(&rows) >= 1.0 - 1e-9,
                    "returned cover is not covering-feasible (n={n})"
                );
                (res.value, opt)
            })
            .collect();
        for (value, opt) in results {
            assert!(
                value <= 1.1 * opt + 1e-9,
                "n={n}: cover value {value} above 1.1 x optimum {opt}"
            );
            worst_ratio = worst_ratio.max(value / opt);
            solved += 1;
        }
    }
    // plus 10 random graphs up to n = 14
    let mut extra = 0;
    while extra < 10 {
        let n = rng.random_range(9..=14);
        let g = gen::erdos_renyi(n, 0.35, 30_000 + extra);
        if g.edge_count() == 0 {
            continue;
        }
        extra += 1;
        let opt = oracle::half_integral_vcover(&g).unwrap();
        let inst = problems::build_vertex_cover(Arc::new(g)).unwrap();
        let res = solve_pure_covering(inst.covering().clone(), cfg).unwrap();
        let mut rows = vec![0.0; inst.covering().rows()];
        inst.covering().apply(&res.x, &mut rows);
        assert!(kernels::min(&rows) >= 1.0 - 1e-9);
        assert!(res.value <= 1.1 * opt + 1e-9);
        worst_ratio = worst_ratio.max(res.value / opt);
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 3 (vertex cover vs exact LP): PASS - {solved} connected + 10 random graphs, \
         worst value/optimum {worst_ratio:.4}, cross-oracle agreed on {cross_checked} graphs, {elapsed:.1}s"
    );
}

#[test]
fn criterion_04_dominating_set_vs_exact_lp() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut solved = 0;
    let mut worst_ratio = 0.0f64;
    for n in 1..=8 {
        let graphs = oracle::connected_graphs(n).unwrap();
        use rayon::prelude::*;
        let results: Vec<(f64, f64)> = graphs
            .par_iter()
            .map(|g| {
                let opt = oracle::lp_vertex_enumeration(&oracle::domset_lp(g)).unwrap();
                let inst = problems::build_dominating_set(Arc::new(g.clone())).unwrap();
                let res = solve_pure_covering(inst.covering().clone(), cfg).unwrap();
                (res.value, opt)
            })
            .collect();
        for (value, opt) in results {
            assert!(
                value <= 1.1 * opt + 1e-9,
                "n={n}: dominating value {value} above 1.1 x optimum {opt}"
            );
            worst_ratio = worst_ratio.max(value / opt);
            solved += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 4 (dominating set vs exact LP): PASS - {solved} graphs, \
         worst value/optimum {worst_ratio:.4}, {elapsed:.1}s"
    );
}

#[test]
fn criterion_05_densest_subgraph() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC05);
    let mut solved = 0;
    let mut worst_ratio = 0.0f64;
    // fixed shapes plus random graphs up to n = 12
    let mut graphs: Vec<Graph> = vec![
        Graph::from_edges(2, &[(0, 1)]).unwrap(),
        Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap(),
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
    ];
    while graphs.len() < 25 {
        let n = rng.random_range(4..=12);
        let g = gen::erdos_renyi(n, rng.random_range(0.2..0.7), 50_000 + graphs.len() as u64);
        if g.edge_count() > 0 {
            graphs.push(g);
        }
    }
    for g in graphs {
        let brute = oracle::brute_densest(&g).unwrap();
        let res = problems::solve_densest(Arc::new(g), cfg).unwrap();
        assert!(
            res.d_star <= 1.1 * brute + 1e-9,
            "density bound {} above 1.1 x brute force {brute}",
            res.d_star
        );
        assert!(
            res.d_star >= brute - 1e-6,
            "density bound {} below brute force {brute}",
            res.d_star
        );
        worst_ratio = worst_ratio.max(res.d_star / brute);
        solved += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 5 (densest subgraph): PASS - {solved} graphs, \
         worst bound/brute {worst_ratio:.4}, {elapsed:.1}s"
    );
}

#[test]
fn criterion_06_step_size_search_effectiveness() {
    let start = Instant::now();
    // seeded random geometric graph with ~4000 vertices
    let n = 4096;
    let radius = (12.0 / (std::f64::consts::PI * n as f64)).sqrt();
    let g = Arc::new(gen::random_geometric(n, radius, 0xAC06));
    assert!(
        g.edge_count() > 10_000,
        "rgg too sparse: {}",
        g.edge_count()
    );

    // One representative feasibility LP per problem, with the embedded
    // bound fixed from a preliminary default-mode solve and shaded half
    // an epsilon to the feasible side; the three step modes then run on
    // the identical instance. The standard step is truncated at 20k
    // iterations, which only lowers its measured count, so a passing
    // ratio implies the untruncated one passes too.
    let prelim = SolverConfig::default();
    let eps = prelim.epsilon;
    let value_of = |kind: &ProblemKind| {
        problems::solve_problem(kind, g.clone(), prelim)
            .unwrap()
            .value
            .unwrap()
    };
    let vmatch = value_of(&ProblemKind::Match);
    let vvcover = value_of(&ProblemKind::VCover);
    let vdomset = value_of(&ProblemKind::DomSet);
    let dstar = value_of(&ProblemKind::DenseSub);

    let instances: Vec<(&str, MixedInstance)> = vec![
        (
            "match",
            MixedInstance::embed_packing(
                problems::build_matching(g.clone())
                    .unwrap()
                    .packing()
                    .clone(),
                ObjBound::new((1.0 - 0.5 * eps) * vmatch).unwrap(),
            )
            .unwrap(),
        ),
        (
            "vcover",
            MixedInstance::embed_covering(
                problems::build_vertex_cover(g.clone())
                    .unwrap()
                    .covering()
                    .clone(),
                ObjBound::new((1.0 + 0.5 * eps) * vvcover).unwrap(),
            )
            .unwrap(),
        ),
        (
            "domset",
            MixedInstance::embed_covering(
                problems::build_dominating_set(g.clone())
                    .unwrap()
                    .covering()
                    .clone(),
                ObjBound::new((1.0 + 0.5 * eps) * vdomset).unwrap(),
            )
            .unwrap(),
        ),
        (
            "densesub",
            problems::build_densest_feasibility(g.clone(), (1.0 + 0.5 * eps) * dstar).unwrap(),
        ),
    ];

    let mut lines = Vec::new();
    for (name, inst) in &instances {
        let run = |mode: StepMode, cap: u64| {
            let cfg = SolverConfig {
                step_mode: mode,
                max_iter: cap,
                ..Default::default()
            };
            solve_feasibility(inst, cfg).unwrap()
        };
        let std_res = run(StepMode::Standard, 20_000);
        let bin_res = run(StepMode::BinarySearch, 5000);
        let nwt_res = run(StepMode::Newton, 5000);
        assert_eq!(
            bin_res.status,
            SolveStatus::Feasible,
            "{name}: binary search did not converge"
        );
        assert_eq!(
            nwt_res.status,
            SolveStatus::Feasible,
            "{name}: newton did not converge"
        );
        let std_iters = std_res.iterations;
        let bin_iters = bin_res.iterations;
        let nwt_iters = nwt_res.iterations;
        assert!(
            bin_iters * 10 <= std_iters,
            "{name}: binary-search iterations {bin_iters} not 10x under standard {std_iters}"
        );
        assert!(
            nwt_iters * 10 <= std_iters,
            "{name}: newton iterations {nwt_iters} not 10x under standard {std_iters}"
        );
        let capped = if std_res.status == SolveStatus::Feasible {
            ""
        } else {
            "+"
        };
        lines.push(format!(
            "{name} std/bin/nwt = {std_iters}{capped}/{bin_iters}/{nwt_iters}"
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < 300.0,
        "criterion 6 took {elapsed:.1}s, budget 300s"
    );
    println!(
        "criterion 6 (step-size search effectiveness, rgg n={n} m={}): PASS - {}; {elapsed:.1}s",
        g.edge_count(),
        lines.join("; ")
    );
}

#[test]
fn criterion_07_infeasibility_detection() {
    let start = Instant::now();
    let cfg = SolverConfig::default();

    // P = [[2]], C = [[1]]: needs x <= 1/2 and x >= 1
    let inst = csb_instance(
        poslp::csb::CooMatrix::new(1, 1, vec![(0, 0, 2.0)]).unwrap(),
        poslp::csb::CooMatrix::new(1, 1, vec![(0, 0, 1.0)]).unwrap(),
    );
    let res = solve_feasibility(&inst, cfg).unwrap();
    assert_eq!(res.status, SolveStatus::Infeasible);
    assert!(res.iterations <= cfg.max_iter);

    // five infeasible generalized matchings (two trivially, three via the solver)
    let mut detected = 1;
    let path3 = Arc::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
    let star3 = Arc::new(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
    let single = Arc::new(Graph::from_edges(2, &[(0, 1)]).unwrap());
    // C4 as 0-1, 0-2, 1-3, 2-3: demands at 0 and 3 sum to 4, caps at 1
    // and 2 allow only 2
    let c4 = Arc::new(Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
    let cases: Vec<(Arc<Graph>, Vec<f64>, Vec<f64>)> = vec![
        // endpoints of a path must both match, but the middle takes one edge
        (path3, vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 1.0]),
        // all three leaves demand matches, center allows two
        (
            star3.clone(),
            vec![0.0, 1.0, 1.0, 1.0],
            vec![2.0, 1.0, 1.0, 1.0],
        ),
        // counting conflict across the C4 bipartition
        (c4, vec![2.0, 0.0, 0.0, 2.0], vec![2.0, 1.0, 1.0, 2.0]),
        // degree-infeasible lower bounds, rejected at build
        (single.clone(), vec![2.0, 0.0], vec![2.0, 2.0]),
        (star3, vec![4.0, 0.0, 0.0, 0.0], vec![4.0, 1.0, 1.0, 1.0]),
    ];
    for (i, (g, lb, ub)) in cases.into_iter().enumerate() {
        let kind = ProblemKind::GenMatch { lb, ub };
        let out = problems::solve_problem(&kind, g, cfg).unwrap();
        assert_eq!(
            out.status,
            SolveStatus::Infeasible,
            "generalized matching case {i} not reported infeasible"
        );
        assert!(out.iterations <= cfg.max_iter);
        detected += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 7 (infeasibility detection): PASS - {detected}/6 instances reported \
         infeasible within the iteration cap, {elapsed:.1}s"
    );
}

#[test]
fn criterion_08_implicit_operator_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC08);
    let one = pool(1);
    let eight = pool(8);
    let mut checked = 0;
    for trial in 0..50u64 {
        // sizes spread up to 1e5 edges
        let target_m = (10.0 * (10f64).powf(trial as f64 / 12.0)) as usize;
        let n = (target_m / 4).clamp(4, 60_000);
        let p = (2.0 * target_m as f64 / (n as f64 * (n - 1) as f64)).min(1.0);
        let g = Arc::new(gen::erdos_renyi(n, p, 80_000 + trial));
        let m = g.edge_count();
        if m == 0 {
            continue;
        }
        checked += 1;
        let ops: Vec<Box<dyn LinearOperator>> = vec![
            Box::new(IncidenceOp::new(g.clone())),
            Box::new(PairOp::new(g.clone())),
            Box::new(InterweaveOp::new(m)),
        ];
        for op in &ops {
            let explicit = poslp::csb::CsbMatrix::from_coo(&op.to_coo(), Default::default());
            let x: Vec<f64> = (0..op.cols()).map(|_| rng.random_range(0.0..1.0)).collect();
            let xt: Vec<f64> = (0..op.rows()).map(|_| rng.random_range(0.0..1.0)).collect();

            let run = |p: &rayon::ThreadPool| {
                p.install(|| {
                    let mut y = vec![0.0; op.rows()];
                    op.apply(&x, &mut y);
                    let mut yt = vec![0.0; op.cols()];
                    op.apply_t(&xt, &mut yt);
                    (y, yt)
                })
            };
            let (y1, yt1) = run(&one);
            let (y8, yt8) = run(&eight);
            // bit-identical across worker counts
            assert!(y1.iter().zip(&y8).all(|(a, b)| a.to_bits() == b.to_bits()));
            assert!(yt1
                .iter()
                .zip(&yt8)
                .all(|(a, b)| a.to_bits() == b.to_bits()));

            // matches the explicit product within 1e-12 relative error
            let mut ey = vec![0.0; op.rows()];
            explicit.spmv(&x, &mut ey);
            for (a, b) in y1.iter().zip(&ey) {
                assert!(
                    (a - b).abs() <= 1e-12 * b.abs().max(1.0),
                    "forward mismatch on trial {trial}"
                );
            }
            let mut eyt = vec![0.0; op.cols()];
            explicit.spmv_t(&xt, &mut eyt);
            for (a, b) in yt1.iter().zip(&eyt) {
                assert!(
                    (a - b).abs() <= 1e-12 * b.abs().max(1.0),
                    "transpose mismatch on trial {trial}"
                );
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(checked >= 48, "only {checked} graphs generated edges");
    println!(
        "criterion 8 (implicit operator equivalence): PASS - {checked} graphs, \
         forward/transpose within 1e-12 and bit-identical across 1 and 8 workers, {elapsed:.1}s"
    );
}

#[test]
fn criterion_09_property_suites() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC09);

    // gradient normalization and sandwich bounds
    for _ in 0..200 {
        let len = rng.random_range(1..400);
        let v: Vec<f64> = (0..len).map(|_| rng.random_range(-2.0..2.0)).collect();
        let eta = rng.random_range(1.0..500.0);
        let mut grad = vec![0.0; len];
        let s = smooth::smax_with_grad(&v, eta, &mut grad);
        assert!((grad.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        let mx = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!(s >= mx - 1e-12 && s <= mx + (len as f64).ln() / eta + 1e-12);
        let sn = smooth::smin_with_grad(&v, eta, &mut grad, None);
        assert!((grad.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        let mn = v.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(sn <= mn + 1e-12 && sn >= mn - (len as f64).ln() / eta - 1e-12);
    }

    // bang-for-buck monotonicity on 1000 random inputs
    let mut tested = 0;
    while tested < 1000 {
        let mp = rng.random_range(1..30);
        let mc = rng.random_range(1..30);
        let y: Vec<f64> = (0..mp).map(|_| rng.random_range(0.0..1.0)).collect();
        let dy: Vec<f64> = (0..mp).map(|_| rng.random_range(0.0..0.05)).collect();
        let z: Vec<f64> = (0..mc).map(|_| rng.random_range(0.0..1.0)).collect();
        let dz: Vec<f64> = (0..mc).map(|_| rng.random_range(0.0..0.05)).collect();
        let si = SearchInputs {
            packing_vals: &y,
            packing_dir: &dy,
            covering_vals: &z,
            covering_dir: &dz,
            active: None,
            eta: rng.random_range(5.0..300.0),
            epsilon: 0.1,
        };
        let a1 = rng.random_range(1e-3..30.0);
        let a2 = a1 * rng.random_range(1.0..10.0);
        let f1 = bang_for_buck(&si, a1);
        let f2 = bang_for_buck(&si, a2);
        if f1.is_finite() && f2.is_finite() {
            assert!(
                f1 >= f2 - 1e-10,
                "monotonicity violated: f({a1})={f1} < f({a2})={f2}"
            );
            tested += 1;
        }
    }

    // potential monotonicity, monotone x, and the operator budget
    // (the budget equality proves the step search applied no operators)
    for trial in 0..6 {
        let inst = gen::planted_feasible_instance(30, 20, 20, 90_000 + trial);
        for mode in [StepMode::Standard, StepMode::BinarySearch, StepMode::Newton] {
            let p = CountingOperator::new(inst.packing().clone());
            let c = CountingOperator::new(inst.covering().clone());
            let counted = MixedInstance::new(p.clone(), c.clone()).unwrap();
            let cfg = SolverConfig {
                step_mode: mode,
                max_iter: 40_000,
                ..Default::default()
            };
            let mut solver = Solver::new(&counted, cfg).unwrap();
            let mut prev_pot = solver.potential();
            let mut prev_x = solver.x().to_vec();
            loop {
                if solver.terminated() || solver.iterations() >= cfg.max_iter {
                    break;
                }
                assert_eq!(solver.step(), StepOutcome::Progressed);
                let pot = solver.potential();
                assert!(pot <= prev_pot + 1e-9, "potential rose in mode {mode:?}");
                prev_pot = pot;
                for (a, b) in solver.x().iter().zip(&prev_x) {
                    assert!(a >= b, "x decreased in mode {mode:?}");
                }
                prev_x = solver.x().to_vec();
            }
            assert!(
                solver.terminated(),
                "trial {trial} mode {mode:?} did not converge"
            );
            let iters = solver.iterations();
            let resyncs = iters / RESYNC_INTERVAL;
            assert_eq!(p.forward_count(), 1 + iters + resyncs);
            assert_eq!(c.forward_count(), 1 + iters + resyncs);
            assert_eq!(p.transpose_count(), iters);
            assert_eq!(c.transpose_count(), iters);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 9 (property suites): PASS - gradients, sandwich bounds, 1000 \
         monotonicity samples, potential/iterate monotonicity and operator budget, {elapsed:.1}s"
    );
}

#[test]
fn criterion_10_parallel_sanity_soft() {
    let start = Instant::now();
    // a graph with at least 1e6 edges
    let n = 1 << 16;
    let radius = (32.0 / (std::f64::consts::PI * n as f64)).sqrt();
    let g = Arc::new(gen::random_geometric(n, radius, 0xAC10));
    let m = g.edge_count();
    assert!(m >= 1_000_000, "graph has {m} edges, wanted at least 1e6");

    let x: Vec<f64> = (0..m).map(|e| (e as f64 * 0.37).sin().abs()).collect();
    let time_with = |threads: usize| {
        let mut y = vec![0.0; n];
        let p = pool(threads);
        p.install(|| {
            // warm up, then time a few repetitions
            incidence_apply(&g, &x, &mut y);
            let t = Instant::now();
            for _ in 0..10 {
                incidence_apply(&g, &x, &mut y);
            }
            t.elapsed().as_secs_f64() / 10.0
        })
    };
    let t1 = time_with(1);
    let t4 = time_with(4);
    let ratio = t4 / t1;
    let cores = std::thread::available_parallelism()
        .map(|v| v.get())
        .unwrap_or(1);
    let verdict = if ratio <= 0.6 { "met" } else { "not met" };
    let elapsed = start.elapsed().as_secs_f64();
    // informational only: machine-dependent, recorded rather than gated
    println!(
        "criterion 10 (parallel sanity, soft): PASS (informational) - matvec on {m} edges: \
         1 worker {:.1}ms, 4 workers {:.1}ms, ratio {ratio:.2} (0.6 target {verdict}; \
         {cores} cores available), {elapsed:.1}s",
        t1 * 1e3,
        t4 * 1e3
    );
}

#[test]
fn acceptance_support_connected_graph_counts() {
    // the enumeration backing criteria 3 and 4 matches the known counts
    let want: [(usize, usize); 8] = [
        (1, 1),
        (2, 1),
        (3, 2),
        (4, 6),
        (5, 21),
        (6, 112),
        (7, 853),
        (8, 11117),
    ];
    for (n, count) in want {
        assert_eq!(
            oracle::connected_graph_masks(n).unwrap().len(),
            count,
            "connected graph classes on {n} vertices"
        );
    }
    println!("acceptance support: connected-graph enumeration counts verified through n = 8");
}

#[test]
fn acceptance_support_pure_solvers_on_boundary_instances() {
    // the feasibility boundary case that motivates the degenerate-step
    // rescue: a unique feasible point
    let inst = csb_instance(
        poslp::csb::CooMatrix::new(1, 1, vec![(0, 0, 1.0)]).unwrap(),
        poslp::csb::CooMatrix::new(1, 1, vec![(0, 0, 1.0)]).unwrap(),
    );
    let res = solve_feasibility(&inst, SolverConfig::default()).unwrap();
    assert_eq!(res.status, SolveStatus::Feasible);
    assert!(res.x[0] >= 1.0 - 1e-9 && res.x[0] <= 1.1 + 1e-9);

    // embedded covering probe at the exact optimum (vertex cover, one edge)
    let g = Arc::new(Graph::from_edges(2, &[(0, 1)]).unwrap());
    let cover: Arc<dyn LinearOperator> = Arc::new(IncidenceTransposeOp::new(g));
    let inst = MixedInstance::embed_covering(cover, ObjBound::new(1.0).unwrap()).unwrap();
    let res = solve_feasibility(&inst, SolverConfig::default()).unwrap();
    assert_eq!(res.status, SolveStatus::Feasible);
    println!("acceptance support: boundary-feasible instances solve cleanly");
}
