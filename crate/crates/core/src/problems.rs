//! Graph-problem frontends: each builder normalizes one of the LP
//! relaxations into the `Px <= 1, Cx >= 1` form over implicit operators,
//! and the drivers run the outer searches (objective bound for the pure
//! problems, density bound for densest subgraph).

use crate::csb::{CooMatrix, CsbMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels;
use crate::model::{LinearOperator, MixedInstance, ObjBound};
use crate::ops::{IncidenceOp, IncidenceTransposeOp, InterweaveOp, PairOp, RowScaledIncidenceOp};
use crate::solver::{
    solve_feasibility, solve_pure_covering, solve_pure_packing, PhaseTimings, SolveStatus,
    SolverConfig,
};
use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemKind {
    Match,
    BMatch,
    DomSet,
    VCover,
    DenseSub,
    GenMatch { lb: Vec<f64>, ub: Vec<f64> },
}

/// Maximum matching relaxation: `max <1, x> s.t. Mx <= 1` over edge
/// variables. The returned instance embeds the objective at its a
/// priori upper bound; the driver re-embeds as it searches.
pub fn build_matching(g: Arc<Graph>) -> Result<MixedInstance> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph("matching needs at least one edge".into()));
    }
    let p: Arc<dyn LinearOperator> = Arc::new(IncidenceOp::new(g));
    let bound = crate::model::objective_upper_bound(p.as_ref())?;
    MixedInstance::embed_packing(p, ObjBound::new(bound)?)
}

/// Matching over a graph read as a biadjacency matrix.
pub fn build_bipartite_matching(g: Arc<Graph>) -> Result<MixedInstance> {
    if g.bipartition().is_none() {
        return Err(Error::Graph(
            "bipartite matching expects a biadjacency-read graph".into(),
        ));
    }
    build_matching(g)
}

/// Closed-neighborhood matrix `I + A` as explicit CSB storage.
pub fn closed_neighborhood_csb(g: &Graph) -> CsbMatrix {
    let n = g.vertex_count();
    let mut triplets = Vec::with_capacity(n + 2 * g.edge_count());
    for v in 0..n as u32 {
        triplets.push((v, v, 1.0));
    }
    for &(r, c) in g.edges() {
        triplets.push((r, c, 1.0));
        triplets.push((c, r, 1.0));
    }
    CsbMatrix::from_coo(
        &CooMatrix::new(n, n, triplets).expect("clean adjacency triplets"),
        Default::default(),
    )
}

/// Dominating set relaxation: `min <1, x> s.t. (I + A) x >= 1`.
pub fn build_dominating_set(g: Arc<Graph>) -> Result<MixedInstance> {
    let c: Arc<dyn LinearOperator> = Arc::new(closed_neighborhood_csb(&g));
    // all-ones x is always a cover, so n bounds the optimum
    let bound = g.vertex_count() as f64;
    MixedInstance::embed_covering(c, ObjBound::new(bound)?)
}

/// Vertex cover relaxation: `min <1, x> s.t. M'x >= 1`, the covering
/// operator being the transpose view of the incidence operator.
pub fn build_vertex_cover(g: Arc<Graph>) -> Result<MixedInstance> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph(
            "vertex cover needs at least one edge".into(),
        ));
    }
    let bound = g.vertex_count() as f64;
    let c: Arc<dyn LinearOperator> = Arc::new(IncidenceTransposeOp::new(g));
    MixedInstance::embed_covering(c, ObjBound::new(bound)?)
}

/// Densest-subgraph dual feasibility at density bound `d`:
/// `Wz >= 1, (1/d) Oz <= 1` over the vertex-edge pair variables. The
/// density scaling folds into the packing operator so the right-hand
/// side stays at one.
pub fn build_densest_feasibility(g: Arc<Graph>, d: f64) -> Result<MixedInstance> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph("densest subgraph needs edges".into()));
    }
    if d <= 0.0 {
        return Err(Error::Config(format!(
            "density bound must be positive, got {d}"
        )));
    }
    let m = g.edge_count();
    let p: Arc<dyn LinearOperator> = Arc::new(PairOp::scaled(g, 1.0 / d));
    let c: Arc<dyn LinearOperator> = Arc::new(InterweaveOp::new(m));
    MixedInstance::new(p, c)
}

/// Generalized matching feasibility `lb <= Mx <= ub` in normal form:
/// packing rows `diag(1/ub) M`, covering rows `diag(1/lb) M` restricted
/// to vertices with a positive lower bound.
pub fn build_generalized_matching(g: Arc<Graph>, lb: &[f64], ub: &[f64]) -> Result<MixedInstance> {
    let n = g.vertex_count();
    if lb.len() != n || ub.len() != n {
        return Err(Error::Dimension(format!(
            "bounds must have one entry per vertex ({n})"
        )));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph("generalized matching needs edges".into()));
    }
    for v in 0..n {
        if lb[v] < 0.0 {
            return Err(Error::InvalidBounds(format!(
                "lb({v}) = {} is negative",
                lb[v]
            )));
        }
        if ub[v] < 1.0 {
            return Err(Error::InvalidBounds(format!(
                "ub({v}) = {} must be at least 1",
                ub[v]
            )));
        }
        if lb[v] > ub[v] {
            return Err(Error::InvalidBounds(format!(
                "lb({v}) = {} exceeds ub({v}) = {}",
                lb[v], ub[v]
            )));
        }
        if lb[v] > g.degree(v) as f64 {
            return Err(Error::TriviallyInfeasible(format!(
                "lb({v}) = {} exceeds degree {}",
                lb[v],
                g.degree(v)
            )));
        }
    }
    let pack_scale: Vec<f64> = ub.iter().map(|&u| 1.0 / u).collect();
    let cover_scale: Vec<f64> = lb
        .iter()
        .map(|&l| if l > 0.0 { 1.0 / l } else { 0.0 })
        .collect();
    let p: Arc<dyn LinearOperator> = Arc::new(RowScaledIncidenceOp::new(g.clone(), pack_scale));
    let c: Arc<dyn LinearOperator> = Arc::new(RowScaledIncidenceOp::new(g, cover_scale));
    MixedInstance::new(p, c)
}

#[derive(Debug, Clone, Serialize)]
pub struct DensestResult {
    pub d_star: f64,
    /// Witness over the 2m vertex-edge pair variables.
    pub z: Vec<f64>,
    /// Probed density bounds and whether each verdict was feasible.
    pub bracket_history: Vec<(f64, bool)>,
    pub iterations: u64,
    pub search_evals: u64,
    pub wall: f64,
    pub phases: PhaseTimings,
}

/// Minimize the density bound by exponential search up from the
/// whole-graph density (a valid lower bound) followed by bisection; the
/// maximum degree is always feasible and caps the search. The reported
/// `d_star` is the witness's exact achieved bound `max(Oz)`, so it never
/// undershoots the true optimum.
pub fn solve_densest(g: Arc<Graph>, cfg: SolverConfig) -> Result<DensestResult> {
    let start = Instant::now();
    let m = g.edge_count();
    let n = g.vertex_count();
    if m == 0 {
        return Err(Error::EmptyGraph("densest subgraph needs edges".into()));
    }
    // witness bound <= (1 + wall) * probe and the bracket adds
    // (1 + eps/2); the wall takes what remains of (1 + eps)
    let wall = (1.0 + cfg.epsilon) / (1.0 + 0.5 * cfg.epsilon) - 1.0;
    let mut inner_cfg = cfg;
    inner_cfg.epsilon = 0.7 * wall;
    inner_cfg.packing_slack = Some(wall);

    let pair = PairOp::new(g.clone());
    let witness_bound = |z: &[f64]| -> f64 {
        let mut rows = vec![0.0; pair.rows()];
        pair.apply(z, &mut rows);
        kernels::max(&rows)
    };

    let density_floor = m as f64 / n as f64;
    let degree_cap = g.max_degree() as f64;

    // all-ones witness: Wz = 2 and Oz = deg, so the degree cap is
    // exactly feasible without solving anything
    let mut best_z = vec![1.0; 2 * m];
    let mut best_bound = degree_cap;

    let mut history: Vec<(f64, bool)> = Vec::new();
    let mut iterations = 0;
    let mut search_evals = 0;
    let mut phases = PhaseTimings::default();

    let probe = |d: f64,
                 history: &mut Vec<(f64, bool)>,
                 iterations: &mut u64,
                 search_evals: &mut u64,
                 phases: &mut PhaseTimings,
                 best_z: &mut Vec<f64>,
                 best_bound: &mut f64|
     -> Result<bool> {
        let inst = build_densest_feasibility(g.clone(), d)?;
        let res = solve_feasibility(&inst, inner_cfg)?;
        *iterations += res.iterations;
        *search_evals += res.search_evals;
        phases.accumulate(&res.phases);
        let feasible = res.status == SolveStatus::Feasible;
        history.push((d, feasible));
        if feasible {
            let achieved = witness_bound(&res.x);
            if achieved < *best_bound {
                *best_bound = achieved;
                *best_z = res.x;
            }
        }
        Ok(feasible)
    };

    // exponential phase up from the density floor
    let mut lo = density_floor;
    let mut hi = degree_cap;
    let mut d = density_floor;
    let mut have_bracket = false;
    while d < degree_cap {
        if probe(
            d,
            &mut history,
            &mut iterations,
            &mut search_evals,
            &mut phases,
            &mut best_z,
            &mut best_bound,
        )? {
            hi = d;
            have_bracket = true;
            break;
        }
        lo = d;
        d = (d * 2.0).min(degree_cap);
    }
    if !have_bracket {
        // every probe below the cap was infeasible; the bracket is
        // [last infeasible, degree cap]
        hi = degree_cap;
    }

    // bisection to relative width eps/2
    let mut guard = 0;
    while hi > lo * (1.0 + 0.5 * cfg.epsilon) && guard < 64 {
        guard += 1;
        let mid = (lo * hi).sqrt();
        if probe(
            mid,
            &mut history,
            &mut iterations,
            &mut search_evals,
            &mut phases,
            &mut best_z,
            &mut best_bound,
        )? {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    Ok(DensestResult {
        d_star: best_bound,
        z: best_z,
        bracket_history: history,
        iterations,
        search_evals,
        wall: start.elapsed().as_secs_f64(),
        phases,
    })
}

/// Uniform result shape for the CLI and benchmarks.
#[derive(Debug, Clone, Serialize)]
pub struct ProblemOutcome {
    pub status: SolveStatus,
    pub value: Option<f64>,
    pub x: Vec<f64>,
    pub iterations: u64,
    pub search_evals: u64,
    pub probes: u64,
    pub max_packing: f64,
    pub min_covering: f64,
    pub wall: f64,
    pub phases: PhaseTimings,
}

/// Build and solve one graph problem end to end.
pub fn solve_problem(
    kind: &ProblemKind,
    g: Arc<Graph>,
    cfg: SolverConfig,
) -> Result<ProblemOutcome> {
    match kind {
        ProblemKind::Match | ProblemKind::BMatch => {
            let inst = match kind {
                ProblemKind::Match => build_matching(g)?,
                _ => build_bipartite_matching(g)?,
            };
            let packing = inst.packing().clone();
            let res = solve_pure_packing(packing.clone(), cfg)?;
            let mut rows = vec![0.0; packing.rows()];
            packing.apply(&res.x, &mut rows);
            Ok(ProblemOutcome {
                status: SolveStatus::Feasible,
                value: Some(res.value),
                max_packing: kernels::max(&rows),
                min_covering: f64::INFINITY,
                x: res.x,
                iterations: res.iterations,
                search_evals: res.search_evals,
                probes: res.probes.len() as u64,
                wall: res.wall,
                phases: res.phases,
            })
        }
        ProblemKind::VCover | ProblemKind::DomSet => {
            let inst = match kind {
                ProblemKind::VCover => build_vertex_cover(g)?,
                _ => build_dominating_set(g)?,
            };
            let covering = inst.covering().clone();
            let res = solve_pure_covering(covering.clone(), cfg)?;
            let mut rows = vec![0.0; covering.rows()];
            covering.apply(&res.x, &mut rows);
            Ok(ProblemOutcome {
                status: SolveStatus::Feasible,
                value: Some(res.value),
                max_packing: 0.0,
                min_covering: kernels::min(&rows),
                x: res.x,
                iterations: res.iterations,
                search_evals: res.search_evals,
                probes: res.probes.len() as u64,
                wall: res.wall,
                phases: res.phases,
            })
        }
        ProblemKind::DenseSub => {
            let m = g.edge_count();
            let res = solve_densest(g.clone(), cfg)?;
            let pair = PairOp::new(g);
            let weave = InterweaveOp::new(m);
            let mut orows = vec![0.0; pair.rows()];
            pair.apply(&res.z, &mut orows);
            let mut wrows = vec![0.0; m];
            weave.apply(&res.z, &mut wrows);
            Ok(ProblemOutcome {
                status: SolveStatus::Feasible,
                value: Some(res.d_star),
                max_packing: kernels::max(&orows) / res.d_star,
                min_covering: kernels::min(&wrows),
                x: res.z,
                iterations: res.iterations,
                search_evals: res.search_evals,
                probes: res.bracket_history.len() as u64,
                wall: res.wall,
                phases: res.phases,
            })
        }
        ProblemKind::GenMatch { lb, ub } => {
            let inst = match build_generalized_matching(g, lb, ub) {
                Ok(inst) => inst,
                Err(Error::TriviallyInfeasible(_)) => {
                    return Ok(ProblemOutcome {
                        status: SolveStatus::Infeasible,
                        value: None,
                        x: vec![],
                        iterations: 0,
                        search_evals: 0,
                        probes: 0,
                        max_packing: 0.0,
                        min_covering: 0.0,
                        wall: 0.0,
                        phases: PhaseTimings::default(),
                    })
                }
                Err(e) => return Err(e),
            };
            let res = solve_feasibility(&inst, cfg)?;
            Ok(ProblemOutcome {
                status: res.status,
                value: None,
                max_packing: res.max_packing,
                min_covering: res.min_covering,
                x: res.x,
                iterations: res.iterations,
                search_evals: res.search_evals,
                probes: 1,
                wall: res.wall,
                phases: res.phases,
            })
        }
    }
}
