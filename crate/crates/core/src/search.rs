//! Step-size search on cached constraint vectors.
//!
//! Both strategies maximize the step subject to the bang-for-buck
//! invariant `f(alpha) = covering_gain(alpha) / packing_cost(alpha) >= 1`,
//! where
//!
//!   covering_gain(a) = smin(z + a*dz) - smin(z)
//!   packing_cost(a)  = smax(y + a*dy) - smax(y)
//!
//! are evaluated on the cached vectors `y = Px`, `z = Cx`, `dy = Pd`,
//! `dz = Cd`. In the pure packing/covering reductions the embedded
//! objective row is a singleton, so its smoothed term is exactly the
//! linear objective gain and the same formula specializes with one side
//! exact. No operator is reachable from [`SearchInputs`], so a search
//! performs zero operator applications by construction. `f` is monotone
//! decreasing in the step, which is what exponential doubling plus
//! bisection and the warm-started Newton iteration both exploit.

use crate::smooth;

/// Everything a step-size search may look at.
#[derive(Clone, Copy)]
pub struct SearchInputs<'a> {
    /// Cached packing row values y = Px.
    pub packing_vals: &'a [f64],
    /// Cached packing image of the direction, dy = Pd (nonnegative).
    pub packing_dir: &'a [f64],
    /// Cached covering row values z = Cx.
    pub covering_vals: &'a [f64],
    /// Cached covering image of the direction, dz = Cd (nonnegative).
    pub covering_dir: &'a [f64],
    /// Active covering rows when satisfied constraints are dropped.
    pub active: Option<&'a [bool]>,
    pub eta: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct StepResult {
    pub alpha: f64,
    /// Number of f evaluations spent.
    pub evals: u32,
    /// The covering side is fully satisfied at `alpha`.
    pub early_finish: bool,
}

/// Evaluation caps; past them the search returns its best verified step.
const BINARY_EVAL_CAP: u32 = 200;
const NEWTON_ITER_CAP: u32 = 100;
const BACKOFF_CAP: u32 = 200;

/// Floating-point slack on the invariant: `f(alpha) - 1` is a quotient
/// of differences, so exact-tie cases land an ulp on either side of 1.
pub const F_TOLERANCE: f64 = 1e-12;
const F_ACCEPT: f64 = 1.0 - F_TOLERANCE;

/// Packing cost at step `alpha` (convex, zero at zero).
pub fn packing_cost(si: &SearchInputs, alpha: f64) -> f64 {
    debug_assert!(alpha >= 0.0);
    let base = smooth::smax(si.packing_vals, si.eta);
    let moved = smooth::smax_affine(si.packing_vals, Some(si.packing_dir), alpha, si.eta);
    (moved.value - base).max(0.0)
}

/// Covering gain at step `alpha` (concave, zero at zero).
pub fn covering_gain(si: &SearchInputs, alpha: f64) -> f64 {
    debug_assert!(alpha >= 0.0);
    let base = smooth::smin(si.covering_vals, si.eta, si.active);
    let moved = smooth::smin_affine(
        si.covering_vals,
        Some(si.covering_dir),
        alpha,
        si.eta,
        si.active,
    );
    moved.value - base
}

/// Bang-for-buck value; the invariant requires `>= 1`. A zero
/// denominator yields `+inf`.
pub fn bang_for_buck(si: &SearchInputs, alpha: f64) -> f64 {
    Evaluator::new(si).probe(alpha).f
}

/// One evaluation of f (and friends) at a fixed step.
struct Probe {
    f: f64,
    /// df/dalpha, from the softmax-weighted directional derivatives.
    df: f64,
    /// True minimum of z + alpha*dz over active rows.
    min_covering: f64,
}

/// Caches the step-independent smax/smin base values for a search call.
struct Evaluator<'s, 'a> {
    si: &'s SearchInputs<'a>,
    base_cost: f64,
    base_gain: f64,
}

impl<'s, 'a> Evaluator<'s, 'a> {
    fn new(si: &'s SearchInputs<'a>) -> Self {
        Evaluator {
            si,
            base_cost: smooth::smax(si.packing_vals, si.eta),
            base_gain: smooth::smin(si.covering_vals, si.eta, si.active),
        }
    }

    fn probe(&self, alpha: f64) -> Probe {
        let si = self.si;
        let zray = smooth::smin_affine(
            si.covering_vals,
            Some(si.covering_dir),
            alpha,
            si.eta,
            si.active,
        );
        let gain = zray.value - self.base_gain;
        let dgain = zray.deriv;
        let yray = smooth::smax_affine(si.packing_vals, Some(si.packing_dir), alpha, si.eta);
        let cost = (yray.value - self.base_cost).max(0.0);
        let dcost = yray.deriv;
        if cost <= 0.0 {
            return Probe {
                f: f64::INFINITY,
                df: 0.0,
                min_covering: zray.extreme,
            };
        }
        Probe {
            f: gain / cost,
            df: (dgain * cost - gain * dcost) / (cost * cost),
            min_covering: zray.extreme,
        }
    }
}

/// Exponential doubling from 1 followed by bisection. When `f(1) < 1`
/// the returned step is below 1, which the solver reads as the
/// infeasibility signal.
pub fn binary_search_step(si: &SearchInputs) -> StepResult {
    let ev = Evaluator::new(si);
    let mut alpha = 1.0f64;
    let mut evals = 0u32;
    loop {
        let p = ev.probe(alpha);
        evals += 1;
        if p.f < F_ACCEPT {
            break;
        }
        if p.min_covering >= 1.0 {
            return StepResult {
                alpha,
                evals,
                early_finish: true,
            };
        }
        if evals >= BINARY_EVAL_CAP {
            return StepResult {
                alpha,
                evals,
                early_finish: false,
            };
        }
        alpha *= 2.0;
    }
    // bisect to an epsilon-relative bracket; the returned lower end is
    // then within (1 - eps) of the largest invariant-satisfying step
    let (mut lb, mut ub) = (alpha / 2.0, alpha);
    while ub - lb > si.epsilon * lb && evals < BINARY_EVAL_CAP {
        let beta = 0.5 * (lb + ub);
        let p = ev.probe(beta);
        evals += 1;
        if p.f >= F_ACCEPT {
            lb = beta;
        } else {
            ub = beta;
        }
    }
    StepResult {
        alpha: lb,
        evals,
        early_finish: false,
    }
}

/// Newton iteration on `f(alpha) - 1` warm-started from the previous
/// step, with a `(1 - eps)^p` backoff until the invariant holds.
/// Without a warm start, or on divergence, falls back to the
/// exponential/bisection search.
pub fn newton_step(si: &SearchInputs, warm: Option<f64>) -> StepResult {
    let Some(start) = warm else {
        return binary_search_step(si);
    };
    if !(start.is_finite() && start > 0.0) {
        return binary_search_step(si);
    }

    let ev = Evaluator::new(si);
    let mut alpha = start;
    let mut evals = 0u32;
    for _ in 0..NEWTON_ITER_CAP {
        let p = ev.probe(alpha);
        evals += 1;
        let g = p.f - 1.0;
        if !g.is_finite() || !p.df.is_finite() || p.df.abs() < 1e-300 {
            // flat or degenerate; let doubling handle it
            let mut fb = binary_search_step(si);
            fb.evals += evals;
            return fb;
        }
        if g.abs() <= 1e-12 * p.f.abs().max(1.0) {
            break;
        }
        let next = alpha - g / p.df;
        if !next.is_finite() || next <= 0.0 {
            let mut fb = binary_search_step(si);
            fb.evals += evals;
            return fb;
        }
        let done = (next - alpha).abs() <= 1e-12 * alpha;
        alpha = next;
        if done {
            break;
        }
    }

    // Newton lands near the root; pull back multiplicatively until the
    // invariant is satisfied (p is typically 0 or 1).
    for _ in 0..=BACKOFF_CAP {
        let p = ev.probe(alpha);
        evals += 1;
        if p.f >= F_ACCEPT {
            return StepResult {
                alpha,
                evals,
                early_finish: p.min_covering >= 1.0,
            };
        }
        alpha *= 1.0 - si.epsilon;
    }
    let mut fb = binary_search_step(si);
    fb.evals += evals;
    fb
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn single_row<'a>(
        y: &'a [f64; 1],
        dy: &'a [f64; 1],
        z: &'a [f64; 1],
        dz: &'a [f64; 1],
    ) -> SearchInputs<'a> {
        SearchInputs {
            packing_vals: y,
            packing_dir: dy,
            covering_vals: z,
            covering_dir: dz,
            active: None,
            eta: 69.0,
            epsilon: 0.1,
        }
    }

    struct Owned {
        y: Vec<f64>,
        dy: Vec<f64>,
        z: Vec<f64>,
        dz: Vec<f64>,
        eta: f64,
    }

    impl Owned {
        fn random(seed: u64) -> Owned {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mp = rng.random_range(1..40);
            let mc = rng.random_range(1..40);
            Owned {
                y: (0..mp).map(|_| rng.random_range(0.0..0.9)).collect(),
                dy: (0..mp).map(|_| rng.random_range(0.0..0.02)).collect(),
                z: (0..mc).map(|_| rng.random_range(0.0..0.9)).collect(),
                dz: (0..mc).map(|_| rng.random_range(0.0..0.02)).collect(),
                eta: rng.random_range(5.0..200.0),
            }
        }

        fn inputs(&self) -> SearchInputs<'_> {
            SearchInputs {
                packing_vals: &self.y,
                packing_dir: &self.dy,
                covering_vals: &self.z,
                covering_dir: &self.dz,
                active: None,
                eta: self.eta,
                epsilon: 0.1,
            }
        }
    }

    #[test]
    fn zero_step_has_zero_gain_and_cost() {
        let o = Owned::random(1);
        let si = o.inputs();
        assert_eq!(packing_cost(&si, 0.0), 0.0);
        assert!(covering_gain(&si, 0.0).abs() < 1e-15);
    }

    #[test]
    fn singleton_cost_is_exactly_linear() {
        let y = [0.3];
        let dy = [0.07];
        let z = [0.2];
        let dz = [0.0];
        let si = single_row(&y, &dy, &z, &dz);
        for &a in &[0.5, 1.0, 3.25, 10.0] {
            assert!((packing_cost(&si, a) - a * 0.07).abs() < 1e-13);
        }
    }

    #[test]
    fn singleton_pair_has_constant_bang_for_buck() {
        let y = [0.1];
        let dy = [1.0];
        let z = [0.2];
        let dz = [1.0];
        let si = single_row(&y, &dy, &z, &dz);
        for &a in &[0.25, 1.0, 7.0, 64.0] {
            assert!((bang_for_buck(&si, a) - 1.0).abs() < 1e-12);
        }
        // doubling runs until the covering row is satisfied
        let res = binary_search_step(&si);
        assert!(res.early_finish);
        assert!(res.alpha >= 0.8, "needs z + a*dz >= 1");
        assert!(z[0] + res.alpha * dz[0] >= 1.0);
    }

    #[test]
    fn infeasible_signal_when_f_below_one_at_unit_step() {
        // covering gain hopeless vs packing cost
        let y = [0.5];
        let dy = [1.0];
        let z = [0.1];
        let dz = [1e-6];
        let si = single_row(&y, &dy, &z, &dz);
        assert!(bang_for_buck(&si, 1.0) < 1.0);
        let res = binary_search_step(&si);
        assert!(res.alpha < 1.0);
        let nres = newton_step(&si, Some(1.0));
        assert!(nres.alpha < 1.0);
    }

    #[test]
    fn monotone_decreasing_bang_for_buck() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for seed in 0..200 {
            let o = Owned::random(seed);
            let si = o.inputs();
            let a1 = rng.random_range(0.01..50.0);
            let a2 = a1 * rng.random_range(1.01..8.0);
            let f1 = bang_for_buck(&si, a1);
            let f2 = bang_for_buck(&si, a2);
            if f1.is_finite() && f2.is_finite() {
                assert!(f1 >= f2 - 1e-10, "seed {seed}: f({a1})={f1} < f({a2})={f2}");
            }
        }
    }

    #[test]
    fn both_strategies_verify_invariant_when_unit_step_valid() {
        let mut count = 0;
        for seed in 0..400 {
            let o = Owned::random(seed);
            let si = o.inputs();
            if bang_for_buck(&si, 1.0) < 1.0 {
                continue;
            }
            count += 1;
            let b = binary_search_step(&si);
            assert!(
                b.early_finish || bang_for_buck(&si, b.alpha) >= 1.0 - 1e-10,
                "seed {seed} binary alpha {}",
                b.alpha
            );
            assert!(b.alpha >= 1.0);
            let n = newton_step(&si, Some(b.alpha * 1.7));
            assert!(
                n.early_finish || bang_for_buck(&si, n.alpha) >= 1.0 - 1e-10,
                "seed {seed} newton alpha {}",
                n.alpha
            );
            // newton's accepted step is competitive with bisection's
            assert!(n.alpha >= (1.0 - si.epsilon) * b.alpha / 2.0, "seed {seed}");
        }
        assert!(count > 50, "filter kept too few feasible cases: {count}");
    }

    #[test]
    fn newton_with_exact_warm_root_converges_immediately() {
        let y = [0.3];
        let dy = [0.05];
        // one covering row cannot move, so no early finish and the
        // bang-for-buck root is finite
        let z = [0.4, 0.9];
        let dz = [0.06, 0.0];
        let si = SearchInputs {
            packing_vals: &y,
            packing_dir: &dy,
            covering_vals: &z,
            covering_dir: &dz,
            active: None,
            eta: 40.0,
            epsilon: 0.1,
        };
        let b = binary_search_step(&si);
        // locate the true root tightly via bisection on f - 1
        let (mut lo, mut hi) = (b.alpha, b.alpha * 4.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if bang_for_buck(&si, mid) >= 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let n = newton_step(&si, Some(lo));
        assert!(
            n.evals <= 3,
            "warm start at root should settle fast, used {}",
            n.evals
        );
        assert!(bang_for_buck(&si, n.alpha) >= 1.0 - 1e-10);
    }

    #[test]
    fn early_finish_flag_certifies_covering() {
        for seed in 500..560 {
            let o = Owned::random(seed);
            let si = o.inputs();
            let res = binary_search_step(&si);
            if res.early_finish {
                let moved: Vec<f64> =
                    o.z.iter()
                        .zip(&o.dz)
                        .map(|(z, d)| z + res.alpha * d)
                        .collect();
                let min = moved.iter().copied().fold(f64::INFINITY, f64::min);
                assert!(min >= 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn singleton_covering_side_is_exactly_linear() {
        // the embedded objective row of a pure packing reduction is a
        // singleton, so its gain is the exact linear objective term
        let y = [0.2, 0.1];
        let dy = [0.04, 0.01];
        let z = [0.5];
        let dz = [0.02];
        let si = SearchInputs {
            packing_vals: &y,
            packing_dir: &dy,
            covering_vals: &z,
            covering_dir: &dz,
            active: None,
            eta: 80.0,
            epsilon: 0.1,
        };
        let a = 2.0;
        assert!((covering_gain(&si, a) - a * 0.02).abs() < 1e-14);
        let expect = a * 0.02 / packing_cost(&si, a);
        assert!((bang_for_buck(&si, a) - expect).abs() < 1e-12 * expect.abs());
    }
}
