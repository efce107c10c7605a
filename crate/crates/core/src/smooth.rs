//! Smoothed maximum and minimum (scaled log-sum-exp) with gradients.
//!
//! `smax_eta(v) = log(sum exp(eta*v_i)) / eta` approximates `max(v)` from
//! above within `log(len)/eta`; `smin` is the mirror image. All
//! evaluations shift by the extreme element first so that `eta` in the
//! hundreds cannot overflow the exponentials.

use crate::kernels;
use rayon::prelude::*;

const CHUNK: usize = 8192;

/// Smoothed maximum together with its gradient (softmax weights).
/// The gradient entries are nonnegative and sum to one.
pub fn smax_with_grad(v: &[f64], eta: f64, grad: &mut [f64]) -> f64 {
    assert!(!v.is_empty(), "smax of empty vector");
    assert!(eta > 0.0, "smoothing parameter must be positive");
    assert_eq!(v.len(), grad.len());
    let shift = kernels::max(v);
    grad.par_chunks_mut(CHUNK)
        .zip(v.par_chunks(CHUNK))
        .for_each(|(gs, vs)| {
            for (g, &x) in gs.iter_mut().zip(vs) {
                *g = (eta * (x - shift)).exp();
            }
        });
    let total = kernels::sum(grad);
    grad.par_chunks_mut(CHUNK).for_each(|gs| {
        for g in gs {
            *g /= total;
        }
    });
    shift + total.ln() / eta
}

/// Smoothed minimum with gradient; `mask` (when given) restricts both the
/// value and the weights to active rows, leaving zero weight elsewhere.
pub fn smin_with_grad(v: &[f64], eta: f64, grad: &mut [f64], mask: Option<&[bool]>) -> f64 {
    assert!(eta > 0.0, "smoothing parameter must be positive");
    assert_eq!(v.len(), grad.len());
    let shift = match mask {
        None => kernels::min(v),
        Some(m) => kernels::min_masked(v, m),
    };
    assert!(
        shift.is_finite(),
        "smin over empty (or fully inactive) vector"
    );
    grad.par_chunks_mut(CHUNK).enumerate().for_each(|(ci, gs)| {
        let lo = ci * CHUNK;
        for (k, g) in gs.iter_mut().enumerate() {
            let i = lo + k;
            let active = mask.is_none_or(|m| m[i]);
            *g = if active {
                (-eta * (v[i] - shift)).exp()
            } else {
                0.0
            };
        }
    });
    let total = kernels::sum(grad);
    grad.par_chunks_mut(CHUNK).for_each(|gs| {
        for g in gs {
            *g /= total;
        }
    });
    shift - total.ln() / eta
}

/// Plain smoothed maximum (no gradient).
pub fn smax(v: &[f64], eta: f64) -> f64 {
    smax_affine(v, None, 0.0, eta).value
}

/// Plain smoothed minimum over active rows.
pub fn smin(v: &[f64], eta: f64, mask: Option<&[bool]>) -> f64 {
    smin_affine(v, None, 0.0, eta, mask).value
}

/// Result of a fused evaluation along a ray `v + t*dir`.
#[derive(Debug, Clone, Copy)]
pub struct RayEval {
    /// smax or smin at the evaluation point.
    pub value: f64,
    /// Directional derivative `<softmax weights, dir>`.
    pub deriv: f64,
    /// Extreme entry (max for smax, min for smin) at the evaluation point.
    pub extreme: f64,
}

/// Fused `smax(v + t*dir)` with directional derivative, no temporaries.
pub fn smax_affine(v: &[f64], dir: Option<&[f64]>, t: f64, eta: f64) -> RayEval {
    assert!(!v.is_empty());
    let at = |i: usize| v[i] + t * dir.map_or(0.0, |d| d[i]);
    let shift = chunk_fold(v.len(), f64::NEG_INFINITY, f64::max, |lo, hi| {
        let mut m = f64::NEG_INFINITY;
        for i in lo..hi {
            m = m.max(at(i));
        }
        m
    });
    let (s0, s1) = chunk_fold(
        v.len(),
        (0.0, 0.0),
        |(a0, a1), (b0, b1)| (a0 + b0, a1 + b1),
        |lo, hi| {
            let mut s0 = 0.0;
            let mut s1 = 0.0;
            for i in lo..hi {
                let w = (eta * (at(i) - shift)).exp();
                s0 += w;
                s1 += w * dir.map_or(0.0, |d| d[i]);
            }
            (s0, s1)
        },
    );
    RayEval {
        value: shift + s0.ln() / eta,
        deriv: s1 / s0,
        extreme: shift,
    }
}

/// Fused `smin(v + t*dir)` with directional derivative and the true
/// minimum entry (used for the early covering-satisfaction exit).
pub fn smin_affine(
    v: &[f64],
    dir: Option<&[f64]>,
    t: f64,
    eta: f64,
    mask: Option<&[bool]>,
) -> RayEval {
    let at = |i: usize| v[i] + t * dir.map_or(0.0, |d| d[i]);
    let active = |i: usize| mask.is_none_or(|m| m[i]);
    let shift = chunk_fold(v.len(), f64::INFINITY, f64::min, |lo, hi| {
        let mut m = f64::INFINITY;
        for i in lo..hi {
            if active(i) {
                m = m.min(at(i));
            }
        }
        m
    });
    assert!(shift.is_finite(), "smin over empty active set");
    let (s0, s1) = chunk_fold(
        v.len(),
        (0.0, 0.0),
        |(a0, a1), (b0, b1)| (a0 + b0, a1 + b1),
        |lo, hi| {
            let mut s0 = 0.0;
            let mut s1 = 0.0;
            for i in lo..hi {
                if active(i) {
                    let w = (-eta * (at(i) - shift)).exp();
                    s0 += w;
                    s1 += w * dir.map_or(0.0, |d| d[i]);
                }
            }
            (s0, s1)
        },
    );
    RayEval {
        value: shift - s0.ln() / eta,
        deriv: s1 / s0,
        extreme: shift,
    }
}

fn chunk_fold<T, F, G>(len: usize, identity: T, combine: G, eval: F) -> T
where
    T: Send + Copy,
    F: Fn(usize, usize) -> T + Sync,
    G: Fn(T, T) -> T,
{
    let nchunks = len.div_ceil(CHUNK).max(1);
    let partials: Vec<T> = (0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * CHUNK;
            let hi = (lo + CHUNK).min(len);
            eval(lo, hi)
        })
        .collect();
    partials.into_iter().fold(identity, combine)
}
