//! Data-parallel vector kernels with a fixed reduction order.
//!
//! Reductions split the input into fixed-size chunks, reduce each chunk
//! sequentially, and fold the partials in index order. The result is
//! bit-identical for any worker count, which the reproducibility tests
//! rely on.

use rayon::prelude::*;

/// Chunk length for deterministic reductions. Independent of the thread
/// count so the combine tree never changes shape.
const CHUNK: usize = 8192;

fn chunk_partials<F>(len: usize, eval: F) -> Vec<f64>
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    let nchunks = len.div_ceil(CHUNK).max(1);
    (0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * CHUNK;
            let hi = (lo + CHUNK).min(len);
            eval(lo, hi)
        })
        .collect()
}

pub fn sum(v: &[f64]) -> f64 {
    chunk_partials(v.len(), |lo, hi| v[lo..hi].iter().sum::<f64>())
        .iter()
        .sum()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    chunk_partials(a.len(), |lo, hi| {
        a[lo..hi].iter().zip(&b[lo..hi]).map(|(x, y)| x * y).sum()
    })
    .iter()
    .sum()
}

/// Maximum entry; `-inf` for an empty slice.
pub fn max(v: &[f64]) -> f64 {
    chunk_partials(v.len(), |lo, hi| {
        v[lo..hi].iter().copied().fold(f64::NEG_INFINITY, f64::max)
    })
    .into_iter()
    .fold(f64::NEG_INFINITY, f64::max)
}

/// Minimum entry; `+inf` for an empty slice.
pub fn min(v: &[f64]) -> f64 {
    chunk_partials(v.len(), |lo, hi| {
        v[lo..hi].iter().copied().fold(f64::INFINITY, f64::min)
    })
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// Minimum over entries where `mask` is set; `+inf` if none.
pub fn min_masked(v: &[f64], mask: &[bool]) -> f64 {
    chunk_partials(v.len(), |lo, hi| {
        let mut m = f64::INFINITY;
        for i in lo..hi {
            if mask[i] && v[i] < m {
                m = v[i];
            }
        }
        m
    })
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// `x += alpha * d`, elementwise.
pub fn axpy(x: &mut [f64], alpha: f64, d: &[f64]) {
    assert_eq!(x.len(), d.len(), "axpy: length mismatch");
    x.par_chunks_mut(CHUNK)
        .zip(d.par_chunks(CHUNK))
        .for_each(|(xs, ds)| {
            for (xi, di) in xs.iter_mut().zip(ds) {
                *xi += alpha * di;
            }
        });
}

pub fn fill(v: &mut [f64], c: f64) {
    v.par_chunks_mut(CHUNK).for_each(|vs| vs.fill(c));
}

/// Relative infinity-norm drift between a cached vector and its fresh
/// recomputation, normalized by `max(1, ||fresh||_inf)`.
pub fn rel_drift(cached: &[f64], fresh: &[f64]) -> f64 {
    let diff = chunk_partials(cached.len(), |lo, hi| {
        let mut m = 0.0f64;
        for i in lo..hi {
            m = m.max((cached[i] - fresh[i]).abs());
        }
        m
    })
    .into_iter()
    .fold(0.0, f64::max);
    let scale = max(fresh).abs().max(1.0);
    diff / scale
}

/// MWU step direction `d_i = scale * max(0, 1 - g_i / (ratio_slack * h_i)) * x_i`
/// written into `d`; `h_i = 0` yields `d_i = 0`. Returns `(max(d), sum(d))`.
///
/// `ratio_slack` is 1 for the standard direction; the solver passes
/// `1 + eps/2` only on degenerate iterations where the strict direction
/// vanished without an infeasibility certificate.
pub fn step_direction(
    d: &mut [f64],
    g: &[f64],
    h: &[f64],
    x: &[f64],
    scale: f64,
    ratio_slack: f64,
) -> (f64, f64) {
    let n = d.len();
    assert!(g.len() == n && h.len() == n && x.len() == n);
    let partials: Vec<(f64, f64)> = d
        .par_chunks_mut(CHUNK)
        .enumerate()
        .map(|(ci, ds)| {
            let lo = ci * CHUNK;
            let mut mx = 0.0f64;
            let mut sm = 0.0f64;
            for (k, di) in ds.iter_mut().enumerate() {
                let i = lo + k;
                let v = if h[i] > 0.0 {
                    let r = 1.0 - g[i] / (ratio_slack * h[i]);
                    if r > 0.0 {
                        scale * r * x[i]
                    } else {
                        0.0
                    }
                } else {
                    0.0
                };
                *di = v;
                if v > mx {
                    mx = v;
                }
                sm += v;
            }
            (mx, sm)
        })
        .collect();
    let mut mx = 0.0;
    let mut sm = 0.0;
    for (m, s) in partials {
        mx = f64::max(mx, m);
        sm += s;
    }
    (mx, sm)
}

pub fn scale(v: &mut [f64], c: f64) {
    v.par_chunks_mut(CHUNK).for_each(|vs| {
        for x in vs {
            *x *= c;
        }
    });
}

/// max over i of d[i] / x[i], skipping zero denominators.
pub fn max_ratio(d: &[f64], x: &[f64]) -> f64 {
    assert_eq!(d.len(), x.len());
    chunk_partials(d.len(), |lo, hi| {
        let mut m = 0.0f64;
        for i in lo..hi {
            if x[i] > 0.0 {
                m = m.max(d[i] / x[i]);
            }
        }
        m
    })
    .into_iter()
    .fold(0.0, f64::max)
}

/// Largest step `a` with `y + a*dy <= limit` elementwise; `+inf` when no
/// coordinate of `dy` is positive. Clamped below at 0.
pub fn cap_step(y: &[f64], dy: &[f64], limit: f64) -> f64 {
    chunk_partials(y.len(), |lo, hi| {
        let mut cap = f64::INFINITY;
        for i in lo..hi {
            if dy[i] > 0.0 {
                cap = cap.min((limit - y[i]) / dy[i]);
            }
        }
        cap
    })
    .into_iter()
    .fold(f64::INFINITY, f64::min)
    .max(0.0)
}

/// Smallest step `a` with `z + a*dz >= 1` on every (active) row, or `None`
/// when some unsatisfied row has a zero direction entry.
pub fn finishing_step(z: &[f64], dz: &[f64], mask: Option<&[bool]>) -> Option<f64> {
    let res = chunk_partials(z.len(), |lo, hi| {
        let mut need = 0.0f64;
        for i in lo..hi {
            if let Some(m) = mask {
                if !m[i] {
                    continue;
                }
            }
            if z[i] < 1.0 {
                if dz[i] <= 0.0 {
                    return f64::INFINITY;
                }
                need = need.max((1.0 - z[i]) / dz[i]);
            }
        }
        need
    })
    .into_iter()
    .fold(0.0, f64::max);
    if res.is_finite() {
        Some(res)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions_match_sequential() {
        let v: Vec<f64> = (0..50_000).map(|i| (i as f64 * 0.37).sin()).collect();
        let seq: f64 = v.iter().sum();
        assert!((sum(&v) - seq).abs() < 1e-9 * seq.abs().max(1.0));
        assert_eq!(max(&v), v.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        assert_eq!(min(&v), v.iter().copied().fold(f64::INFINITY, f64::min));
    }

    #[test]
    fn reductions_bit_identical_across_pools() {
        let v: Vec<f64> = (0..100_000).map(|i| (i as f64 * 0.61).cos()).collect();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| sum(&v));
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| sum(&v));
        assert_eq!(one.to_bits(), four.to_bits());
    }

    #[test]
    fn step_direction_examples() {
        // n=1, g=0.5, h=1, x=2, eta=10, mixed scale 1/(2*eta)
        let mut d = [0.0];
        let (mx, sm) = step_direction(&mut d, &[0.5], &[1.0], &[2.0], 1.0 / 20.0, 1.0);
        assert!((d[0] - 0.05).abs() < 1e-15);
        assert_eq!(mx, 0.05);
        assert_eq!(sm, 0.05);

        // g = h everywhere -> zero direction
        let mut d = [0.0; 3];
        let (mx, _) = step_direction(
            &mut d,
            &[1.0, 2.0, 3.0],
            &[1.0, 2.0, 3.0],
            &[1.0; 3],
            0.05,
            1.0,
        );
        assert_eq!(mx, 0.0);
        assert!(d.iter().all(|&v| v == 0.0));

        // h = 0 convention
        let mut d = [0.0];
        let (mx, _) = step_direction(&mut d, &[0.0], &[0.0], &[5.0], 0.05, 1.0);
        assert_eq!(mx, 0.0);

        // g = 0 with positive h takes the full multiplicative step x/(2 eta)
        let eta = 10.0;
        let mut d = [0.0; 2];
        step_direction(&mut d, &[0.0; 2], &[1.0, 3.0], &[2.0, 6.0], 1.0 / (2.0 * eta), 1.0);
        assert!((d[0] - 2.0 / (2.0 * eta)).abs() < 1e-15);
        assert!((d[1] - 6.0 / (2.0 * eta)).abs() < 1e-15);
    }

    #[test]
    fn cap_and_finishing_steps() {
        let cap = cap_step(&[0.5, 1.0], &[0.5, 0.0], 1.1);
        assert!((cap - 1.2).abs() < 1e-15);
        assert_eq!(cap_step(&[0.5], &[0.0], 1.1), f64::INFINITY);

        let fin = finishing_step(&[0.2, 0.9], &[0.4, 1.0], None).unwrap();
        assert!((fin - 2.0).abs() < 1e-15);
        assert!(finishing_step(&[0.2, 0.9], &[0.0, 1.0], None).is_none());
        // already satisfied rows need nothing
        assert_eq!(finishing_step(&[1.0, 2.0], &[0.0, 0.0], None), Some(0.0));
    }
}
