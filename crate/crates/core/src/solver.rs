//! Multiplicative-weight-update feasibility solver with step-size
//! search, plus the pure packing/covering optimization drivers that
//! binary-search the embedded objective bound.
//!
//! Per iteration the solver performs exactly two transpose products
//! (the gradient pullbacks) and two forward products (on the step
//! direction); the step-size search runs entirely on cached vectors.
//! Caches are rebuilt from scratch every [`RESYNC_INTERVAL`] iterations
//! to bound floating-point drift.

use crate::error::{Error, Result};
use crate::kernels;
use crate::model::{objective_upper_bound, LinearOperator, MixedInstance, ObjBound, SolveMode};
use crate::search::{self, SearchInputs};
use crate::smooth;
use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;

pub const RESYNC_INTERVAL: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    /// Fixed unit step, as the convergence analysis prescribes.
    Standard,
    /// Exponential doubling plus bisection on the bang-for-buck value.
    BinarySearch,
    /// Warm-started Newton iteration with multiplicative backoff.
    Newton,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub epsilon: f64,
    pub max_iter: u64,
    pub step_mode: StepMode,
    /// Keep covering constraints once satisfied (default). Disabling
    /// drops them from the smoothed minimum, mirroring the textbook
    /// statement of the method.
    pub keep_satisfied_constraints: bool,
    /// The smoothing parameter is `eta_factor * ln(m) / epsilon`.
    pub eta_factor: f64,
    /// Recorded for reproducibility bookkeeping; every kernel in this
    /// crate already uses a fixed reduction order, so results are
    /// bit-identical across worker counts either way.
    pub deterministic: bool,
    /// Relaxed-packing acceptance bound: termination and the step wall
    /// use `max(Px) <= 1 + packing_slack`. Defaults to `epsilon`; the
    /// outer searches pin it to whatever their error composition leaves
    /// for the witness, independently of the smoothing tolerance.
    pub packing_slack: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            epsilon: 0.1,
            max_iter: 5000,
            step_mode: StepMode::Newton,
            keep_satisfied_constraints: true,
            eta_factor: 10.0,
            deterministic: false,
            packing_slack: None,
        }
    }
}

impl SolverConfig {
    fn check(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Config(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if self.eta_factor <= 0.0 {
            return Err(Error::Config("eta_factor must be positive".into()));
        }
        if let Some(slack) = self.packing_slack {
            if !(slack > 0.0 && slack < 1.0) {
                return Err(Error::Config(format!(
                    "packing_slack must lie in (0, 1), got {slack}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Feasible,
    Infeasible,
    IterLimit,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct PhaseTimings {
    /// Seconds in operator products.
    pub matvec: f64,
    /// Seconds in step-size search.
    pub search: f64,
    /// Seconds in the remaining vector work.
    pub vec: f64,
}

impl PhaseTimings {
    pub fn accumulate(&mut self, other: &PhaseTimings) {
        self.matvec += other.matvec;
        self.search += other.search;
        self.vec += other.vec;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub x: Vec<f64>,
    pub max_packing: f64,
    pub min_covering: f64,
    /// Raw objective `<1, x>` for pure-mode instances.
    pub objective: Option<f64>,
    pub iterations: u64,
    pub search_evals: u64,
    pub wall: f64,
    pub phases: PhaseTimings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Progressed,
    /// Certified: the exact LP admits no solution.
    Infeasible,
    /// No certified progress direction; the driver reports IterLimit.
    Stalled,
}

/// Initialization `x_i = eps / (n * ||P_{:,i}||_inf)`, which keeps every
/// packing row at most `eps`.
pub fn init_x(packing: &dyn LinearOperator, eps: f64) -> Result<Vec<f64>> {
    let norms = packing.col_inf_norms();
    let n = norms.len();
    let mut x = vec![0.0; n];
    for (i, &nm) in norms.iter().enumerate() {
        if nm <= 0.0 {
            return Err(Error::ZeroColumn { col: i });
        }
        x[i] = eps / (n as f64 * nm);
    }
    Ok(x)
}

/// Mixed-mode potential `(smax(y) - smin(z)) / eta` on raw vectors.
pub fn potential(y: &[f64], z: &[f64], eta: f64) -> f64 {
    (smooth::smax(y, eta) - smooth::smin(z, eta, None)) / eta
}

pub struct Solver {
    inst: MixedInstance,
    cfg: SolverConfig,
    eta: f64,
    /// Step-direction scale: 1/(2 eta) mixed, 1/eta pure.
    dir_scale: f64,
    /// Acceptance bound on packing rows, `1 + accept_eps`.
    accept_eps: f64,

    x: Vec<f64>,
    packing_vals: Vec<f64>,     // y = Px
    covering_vals: Vec<f64>,    // z = Cx
    direction: Vec<f64>,        // d
    dir_packing: Vec<f64>,      // Pd
    dir_covering: Vec<f64>,     // Cd
    grad_packing: Vec<f64>,     // P' w_p
    grad_covering: Vec<f64>,    // C' w_c
    packing_weights: Vec<f64>,  // grad smax(y)
    covering_weights: Vec<f64>, // grad smin(z)
    /// Active covering rows; all true when satisfied rows are kept.
    active: Vec<bool>,
    active_count: usize,
    objective: f64, // <1, x>

    iterations: u64,
    search_evals: u64,
    prev_alpha: Option<f64>,
    stall_count: u32,
    last_drift: f64,
    phases: PhaseTimings,
}

impl Solver {
    pub fn new(inst: &MixedInstance, cfg: SolverConfig) -> Result<Solver> {
        cfg.check()?;
        let m_p = inst.packing_rows();
        let m_c = inst.covering_rows();
        let m = (m_p + m_c).max(2);
        let eta = cfg.eta_factor * (m as f64).ln() / cfg.epsilon;
        let dir_scale = match inst.mode() {
            SolveMode::Mixed => 1.0 / (2.0 * eta),
            // a singleton exact side permits doubling the step scale
            SolveMode::PurePacking | SolveMode::PureCovering => 1.0 / eta,
        };
        let x = init_x(inst.packing().as_ref(), cfg.epsilon)?;
        let n = x.len();
        let accept_eps = cfg.packing_slack.unwrap_or(cfg.epsilon);
        let mut solver = Solver {
            inst: inst.clone(),
            cfg,
            eta,
            dir_scale,
            accept_eps,
            x,
            packing_vals: vec![0.0; m_p],
            covering_vals: vec![0.0; m_c],
            direction: vec![0.0; n],
            dir_packing: vec![0.0; m_p],
            dir_covering: vec![0.0; m_c],
            grad_packing: vec![0.0; n],
            grad_covering: vec![0.0; n],
            packing_weights: vec![0.0; m_p],
            covering_weights: vec![0.0; m_c],
            active: vec![true; m_c],
            active_count: m_c,
            objective: 0.0,
            iterations: 0,
            search_evals: 0,
            prev_alpha: None,
            stall_count: 0,
            last_drift: 0.0,
            phases: PhaseTimings::default(),
        };
        solver.resync();
        debug_assert!(
            kernels::max(&solver.packing_vals) <= solver.cfg.epsilon + 1e-12,
            "initialization must keep packing rows at most epsilon"
        );
        Ok(solver)
    }

    fn resync(&mut self) {
        let t = Instant::now();
        self.inst.packing().apply(&self.x, &mut self.packing_vals);
        self.inst.covering().apply(&self.x, &mut self.covering_vals);
        self.phases.matvec += t.elapsed().as_secs_f64();
        self.objective = kernels::sum(&self.x);
        if !self.cfg.keep_satisfied_constraints {
            self.refresh_active();
        }
    }

    fn refresh_active(&mut self) {
        let mut count = 0;
        for (a, &z) in self.active.iter_mut().zip(&self.covering_vals) {
            if *a && z >= 1.0 {
                *a = false;
            }
            count += *a as usize;
        }
        self.active_count = count;
    }

    fn active_mask(&self) -> Option<&[bool]> {
        if self.cfg.keep_satisfied_constraints {
            None
        } else {
            Some(&self.active)
        }
    }

    fn covering_satisfied(&self) -> bool {
        if self.inst.covering_rows() == 0 {
            return true;
        }
        if self.cfg.keep_satisfied_constraints {
            kernels::min(&self.covering_vals) >= 1.0
        } else {
            self.active_count == 0
        }
    }

    /// Termination test on the cached rows: covering fully satisfied
    /// and packing within the acceptance bound.
    pub fn terminated(&self) -> bool {
        self.covering_satisfied()
            && (self.inst.packing_rows() == 0
                || kernels::max(&self.packing_vals) <= 1.0 + self.accept_eps)
    }

    /// One MWU iteration: gradients, direction, step size, update.
    pub fn step(&mut self) -> StepOutcome {
        let eps = self.cfg.epsilon;

        let keep = self.cfg.keep_satisfied_constraints;
        let t = Instant::now();
        smooth::smax_with_grad(&self.packing_vals, self.eta, &mut self.packing_weights);
        smooth::smin_with_grad(
            &self.covering_vals,
            self.eta,
            &mut self.covering_weights,
            if keep { None } else { Some(&self.active) },
        );
        self.phases.vec += t.elapsed().as_secs_f64();

        let t = Instant::now();
        self.inst
            .packing()
            .apply_t(&self.packing_weights, &mut self.grad_packing);
        self.inst
            .covering()
            .apply_t(&self.covering_weights, &mut self.grad_covering);
        self.phases.matvec += t.elapsed().as_secs_f64();

        let t = Instant::now();
        let (max_d, mut dir_sum) = kernels::step_direction(
            &mut self.direction,
            &self.grad_packing,
            &self.grad_covering,
            &self.x,
            self.dir_scale,
            1.0,
        );
        let mut degenerate = false;
        if max_d == 0.0 {
            if self.certified_infeasible() {
                self.phases.vec += t.elapsed().as_secs_f64();
                return StepOutcome::Infeasible;
            }
            // Ratios tie without an infeasibility certificate (the LP
            // sits on the feasibility boundary). Take the slackened
            // direction; the invariant check below decides if it is
            // usable.
            degenerate = true;
            let (slack_max, slack_sum) = kernels::step_direction(
                &mut self.direction,
                &self.grad_packing,
                &self.grad_covering,
                &self.x,
                self.dir_scale,
                1.0 + 0.5 * eps,
            );
            if slack_max == 0.0 {
                self.phases.vec += t.elapsed().as_secs_f64();
                return StepOutcome::Stalled;
            }
            dir_sum = slack_sum;
            // With every surviving ratio near one the raw magnitudes are
            // vanishing; renormalize so the largest relative step is the
            // usual dir_scale. The invariant check still gates the step.
            let ratio = kernels::max_ratio(&self.direction, &self.x);
            if ratio > 0.0 && ratio < self.dir_scale {
                let boost = self.dir_scale / ratio;
                kernels::scale(&mut self.direction, boost);
                dir_sum *= boost;
            }
        }
        self.phases.vec += t.elapsed().as_secs_f64();

        let t = Instant::now();
        self.inst
            .packing()
            .apply(&self.direction, &mut self.dir_packing);
        self.inst
            .covering()
            .apply(&self.direction, &mut self.dir_covering);
        self.phases.matvec += t.elapsed().as_secs_f64();

        let t = Instant::now();
        let (accepted, evals) = {
            let si = SearchInputs {
                packing_vals: &self.packing_vals,
                packing_dir: &self.dir_packing,
                covering_vals: &self.covering_vals,
                covering_dir: &self.dir_covering,
                active: if keep { None } else { Some(&self.active) },
                eta: self.eta,
                epsilon: eps,
            };
            match self.cfg.step_mode {
                StepMode::Standard => {
                    if degenerate {
                        // standard steps have no search; verify the unit
                        // step keeps the potential monotone before taking it
                        if search::bang_for_buck(&si, 1.0) < 1.0 - search::F_TOLERANCE {
                            (None, 1u64)
                        } else {
                            (Some(1.0), 1u64)
                        }
                    } else {
                        (Some(1.0), 0u64)
                    }
                }
                StepMode::BinarySearch => {
                    let res = search::binary_search_step(&si);
                    let ok = res.alpha >= 1.0;
                    (ok.then_some(res.alpha), u64::from(res.evals))
                }
                StepMode::Newton => {
                    let res = search::newton_step(&si, self.prev_alpha);
                    let ok = res.alpha >= 1.0;
                    (ok.then_some(res.alpha), u64::from(res.evals))
                }
            }
        };
        self.search_evals += evals;
        self.phases.search += t.elapsed().as_secs_f64();
        let Some(raw_alpha) = accepted else {
            // a step below 1 signals infeasibility, except on degenerate
            // boundary iterations where it only means no certified step
            return if degenerate {
                StepOutcome::Stalled
            } else {
                StepOutcome::Infeasible
            };
        };

        let t = Instant::now();
        // Trim the accepted step: never overshoot past exact covering
        // satisfaction, and never push a packing row past the acceptance
        // bound. A step that cannot finish the covering side spends at
        // most half the remaining packing headroom, so aggressive
        // searched steps approach the boundary geometrically instead of
        // slamming into it while the weights still point at it. Every
        // trim shrinks alpha, so the bang-for-buck invariant keeps
        // holding.
        let fin =
            kernels::finishing_step(&self.covering_vals, &self.dir_covering, self.active_mask());
        let headroom =
            kernels::cap_step(&self.packing_vals, &self.dir_packing, 1.0 + self.accept_eps);
        let mut alpha = raw_alpha;
        if let Some(f) = fin {
            alpha = alpha.min(f);
        }
        let finishing = fin.is_some_and(|f| alpha >= f);
        if finishing {
            alpha = alpha.min(headroom);
        } else {
            alpha = alpha.min(0.5 * headroom);
        }

        self.prev_alpha = Some(raw_alpha);
        self.iterations += 1;
        if alpha <= 0.0 {
            self.stall_count += 1;
            self.phases.vec += t.elapsed().as_secs_f64();
            if self.stall_count >= 25 {
                return StepOutcome::Stalled;
            }
            return StepOutcome::Progressed;
        }
        self.stall_count = 0;

        kernels::axpy(&mut self.x, alpha, &self.direction);
        kernels::axpy(&mut self.packing_vals, alpha, &self.dir_packing);
        kernels::axpy(&mut self.covering_vals, alpha, &self.dir_covering);
        self.objective += alpha * dir_sum;
        if !self.cfg.keep_satisfied_constraints {
            self.refresh_active();
        }
        self.phases.vec += t.elapsed().as_secs_f64();

        if self.iterations.is_multiple_of(RESYNC_INTERVAL) {
            let cached_y = std::mem::take(&mut self.packing_vals);
            let cached_z = std::mem::take(&mut self.covering_vals);
            self.packing_vals = vec![0.0; cached_y.len()];
            self.covering_vals = vec![0.0; cached_z.len()];
            self.resync();
            let dy = kernels::rel_drift(&cached_y, &self.packing_vals);
            let dz = kernels::rel_drift(&cached_z, &self.covering_vals);
            self.last_drift = dy.max(dz);
        }

        StepOutcome::Progressed
    }

    /// With the strict direction everywhere zero, infeasibility is
    /// certified once every ratio clears `1 + eps/2`: any exact-feasible
    /// point would force `<g, x*> <= 1 <= <h, x*>`, contradicting
    /// `g >= (1 + eps/2) h` coordinatewise.
    fn certified_infeasible(&self) -> bool {
        let margin = 1.0 + 0.5 * self.cfg.epsilon;
        self.grad_packing
            .iter()
            .zip(&self.grad_covering)
            .all(|(&g, &h)| g >= margin * h)
    }

    pub fn run(&mut self) -> SolveResult {
        let start = Instant::now();
        let status = loop {
            if self.terminated() {
                break SolveStatus::Feasible;
            }
            if self.iterations >= self.cfg.max_iter {
                break SolveStatus::IterLimit;
            }
            match self.step() {
                StepOutcome::Progressed => {}
                StepOutcome::Infeasible => break SolveStatus::Infeasible,
                StepOutcome::Stalled => break SolveStatus::IterLimit,
            }
        };
        self.finish(status, start)
    }

    fn finish(&mut self, status: SolveStatus, start: Instant) -> SolveResult {
        // report from fresh products, not the caches
        let t = Instant::now();
        let mut y = vec![0.0; self.inst.packing_rows()];
        let mut z = vec![0.0; self.inst.covering_rows()];
        self.inst.packing().apply(&self.x, &mut y);
        self.inst.covering().apply(&self.x, &mut z);
        self.phases.matvec += t.elapsed().as_secs_f64();
        let objective = match self.inst.mode() {
            SolveMode::Mixed => None,
            _ => Some(kernels::sum(&self.x)),
        };
        SolveResult {
            status,
            x: self.x.clone(),
            max_packing: if y.is_empty() { 0.0 } else { kernels::max(&y) },
            min_covering: if z.is_empty() {
                f64::INFINITY
            } else {
                kernels::min(&z)
            },
            objective,
            iterations: self.iterations,
            search_evals: self.search_evals,
            wall: start.elapsed().as_secs_f64(),
            phases: self.phases,
        }
    }

    /// Potential `(smax(y) - smin(z)) / eta`, nonincreasing across
    /// accepted steps. In the pure reductions the embedded objective row
    /// is a singleton, so its smoothed term is already the exact
    /// normalized objective.
    pub fn potential(&self) -> f64 {
        if !self.cfg.keep_satisfied_constraints && self.active_count == 0 {
            return f64::NEG_INFINITY;
        }
        (smooth::smax(&self.packing_vals, self.eta)
            - smooth::smin(&self.covering_vals, self.eta, self.active_mask()))
            / self.eta
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn packing_vals(&self) -> &[f64] {
        &self.packing_vals
    }

    pub fn covering_vals(&self) -> &[f64] {
        &self.covering_vals
    }

    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    pub fn dir_packing(&self) -> &[f64] {
        &self.dir_packing
    }

    pub fn dir_covering(&self) -> &[f64] {
        &self.dir_covering
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn search_evals(&self) -> u64 {
        self.search_evals
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    pub fn last_resync_drift(&self) -> f64 {
        self.last_drift
    }

    pub fn phases(&self) -> &PhaseTimings {
        &self.phases
    }
}

/// Solve the mixed feasibility problem `Px <= 1, Cx >= 1, x >= 0`.
pub fn solve_feasibility(inst: &MixedInstance, cfg: SolverConfig) -> Result<SolveResult> {
    Ok(Solver::new(inst, cfg)?.run())
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeRecord {
    pub bound: f64,
    pub status: SolveStatus,
    pub iterations: u64,
}

/// Outcome of a pure packing/covering optimization: the best witness and
/// the bound bracket that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct OptResult {
    pub value: f64,
    pub x: Vec<f64>,
    pub bracket: (f64, f64),
    pub probes: Vec<ProbeRecord>,
    pub iterations: u64,
    pub search_evals: u64,
    pub wall: f64,
    pub phases: PhaseTimings,
}

/// Inner tolerance so that the inner solve composed with a bracket of
/// relative width `bracket_frac * eps` still lands within `1 + eps`.
fn inner_epsilon(eps: f64, bracket_frac: f64) -> f64 {
    (1.0 + eps) / (1.0 + bracket_frac * eps) - 1.0
}

const MAX_PROBES: usize = 64;

/// `max <1, x> s.t. Px <= 1, x >= 0` via binary search over the embedded
/// objective bound. Returns a certificate `x` with
/// `Px <= (1 + eps) 1` and `<1, x> = value`.
pub fn solve_pure_packing(
    packing: Arc<dyn LinearOperator>,
    cfg: SolverConfig,
) -> Result<OptResult> {
    cfg.check()?;
    let start = Instant::now();
    let mut phases = PhaseTimings::default();
    let n = packing.cols();
    if n == 0 {
        return Err(Error::Dimension("packing operator has no columns".into()));
    }
    let mut hi = objective_upper_bound(packing.as_ref())?;

    // trivial witness: uniform x scaled to touch the tightest row
    let t = Instant::now();
    let ones = vec![1.0; n];
    let mut rows = vec![0.0; packing.rows()];
    packing.apply(&ones, &mut rows);
    phases.matvec += t.elapsed().as_secs_f64();
    let peak = kernels::max(&rows);
    if peak <= 0.0 {
        return Err(Error::ZeroColumn { col: 0 });
    }
    let mut best_x: Vec<f64> = ones.iter().map(|&v| v / peak).collect();
    let mut best_value = n as f64 / peak;
    let mut lo = best_value;

    // The packing witness bound composes as (1 + wall) * opt regardless
    // of the bracket width, so the wall sits at the full eps while the
    // smoothing runs tighter, leaving headroom for near-critical probes.
    let mut inner_cfg = cfg;
    inner_cfg.epsilon = inner_epsilon(cfg.epsilon, 0.25);
    inner_cfg.packing_slack = Some(cfg.epsilon);

    let mut probes = Vec::new();
    let mut iterations = 0;
    let mut search_evals = 0;
    while hi > lo * (1.0 + 0.25 * cfg.epsilon) && probes.len() < MAX_PROBES {
        let mid = (lo * hi).sqrt();
        let inst = MixedInstance::embed_packing(packing.clone(), ObjBound::new(mid)?)?;
        let res = solve_feasibility(&inst, inner_cfg)?;
        iterations += res.iterations;
        search_evals += res.search_evals;
        phases.accumulate(&res.phases);
        probes.push(ProbeRecord {
            bound: mid,
            status: res.status,
            iterations: res.iterations,
        });
        match res.status {
            SolveStatus::Feasible => {
                let value = res.objective.expect("pure mode reports the objective");
                lo = lo.max(mid).max(value);
                if value > best_value {
                    best_value = value;
                    best_x = res.x;
                }
            }
            // an iteration-limited probe is treated as not feasible
            _ => hi = mid,
        }
    }

    Ok(OptResult {
        value: best_value,
        x: best_x,
        bracket: (lo, hi),
        probes,
        iterations,
        search_evals,
        wall: start.elapsed().as_secs_f64(),
        phases,
    })
}

/// `min <1, x> s.t. Cx >= 1, x >= 0` via binary search over the embedded
/// objective bound. Returns a covering-feasible certificate.
pub fn solve_pure_covering(
    covering: Arc<dyn LinearOperator>,
    cfg: SolverConfig,
) -> Result<OptResult> {
    cfg.check()?;
    let start = Instant::now();
    let mut phases = PhaseTimings::default();
    let n = covering.cols();
    let m_c = covering.rows();
    if n == 0 || m_c == 0 {
        return Err(Error::Dimension("covering operator is empty".into()));
    }

    let t = Instant::now();
    let ones = vec![1.0; n];
    let mut row_sums = vec![0.0; m_c];
    covering.apply(&ones, &mut row_sums);
    let min_row = kernels::min(&row_sums);
    if min_row <= 0.0 {
        return Err(Error::TriviallyInfeasible(
            "a covering row has no positive entry".into(),
        ));
    }
    // uniform witness and a counting lower bound from the column sums
    let mut col_sums = vec![0.0; n];
    covering.apply_t(&vec![1.0; m_c], &mut col_sums);
    phases.matvec += t.elapsed().as_secs_f64();
    let mut best_x: Vec<f64> = ones.iter().map(|&v| v / min_row).collect();
    let mut best_value = n as f64 / min_row;
    let mut hi = best_value;
    let mut lo = m_c as f64 / kernels::max(&col_sums);

    // Witness cost <= (1 + wall) * bound is enforced by the step wall on
    // the embedded objective row, and the bound bracket contributes
    // (1 + eps/4); the wall absorbs exactly the rest. The objective row
    // is a singleton with no smoothing error, so the smoothing tolerance
    // stays at the full eps and only the wall is tightened.
    let wall = inner_epsilon(cfg.epsilon, 0.25);
    let mut inner_cfg = cfg;
    inner_cfg.packing_slack = Some(wall);

    let mut probes = Vec::new();
    let mut iterations = 0;
    let mut search_evals = 0;
    while hi > lo * (1.0 + 0.25 * cfg.epsilon) && probes.len() < MAX_PROBES {
        let mid = (lo * hi).sqrt();
        let inst = MixedInstance::embed_covering(covering.clone(), ObjBound::new(mid)?)?;
        let res = solve_feasibility(&inst, inner_cfg)?;
        iterations += res.iterations;
        search_evals += res.search_evals;
        phases.accumulate(&res.phases);
        probes.push(ProbeRecord {
            bound: mid,
            status: res.status,
            iterations: res.iterations,
        });
        match res.status {
            SolveStatus::Feasible => {
                let value = res.objective.expect("pure mode reports the objective");
                hi = mid;
                if value < best_value {
                    best_value = value;
                    best_x = res.x;
                }
            }
            // infeasible at mid certifies the optimum exceeds mid
            _ => lo = mid,
        }
    }

    Ok(OptResult {
        value: best_value,
        x: best_x,
        bracket: (lo, hi),
        probes,
        iterations,
        search_evals,
        wall: start.elapsed().as_secs_f64(),
        phases,
    })
}
