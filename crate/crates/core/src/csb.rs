//! Explicit sparse storage: COO triplets and the tiled CSB format.
//!
//! CSB splits the matrix into r x k tiles stored in row-major tile
//! order; within a tile the nonzeros sit in column-major order as
//! coordinate tuples with tile-local offsets. `y = Ax` parallelizes
//! over row-blocks and `y = A'x` over column-blocks, so each worker
//! owns a disjoint output slice and no accumulation races exist. The
//! per-element accumulation order is fixed by the tile layout, which
//! makes both products bit-reproducible for any worker count.

use crate::error::{Error, Result};
use rayon::prelude::*;

/// Default tile side: a 2048-wide input slice plus output slice at 8
/// bytes per scalar fills a 32 KB L1 budget, and tile-local offsets fit
/// in 16 bits.
pub const DEFAULT_TILE: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TileDims {
    pub r: usize,
    pub k: usize,
}

impl Default for TileDims {
    fn default() -> Self {
        TileDims {
            r: DEFAULT_TILE,
            k: DEFAULT_TILE,
        }
    }
}

/// Coordinate-form nonnegative sparse matrix; the oracle-facing escape
/// hatch and the interchange form for instance dumps.
#[derive(Debug, Clone, PartialEq)]
pub struct CooMatrix {
    rows: usize,
    cols: usize,
    triplets: Vec<(u32, u32, f64)>,
}

impl CooMatrix {
    pub fn new(rows: usize, cols: usize, triplets: Vec<(u32, u32, f64)>) -> Result<CooMatrix> {
        for &(r, c, v) in &triplets {
            if r as usize >= rows || c as usize >= cols {
                return Err(Error::Dimension(format!(
                    "triplet ({r}, {c}) outside {rows} x {cols}"
                )));
            }
            if v < 0.0 {
                return Err(Error::NegativeEntry {
                    row: r as usize,
                    col: c as usize,
                    value: v,
                });
            }
        }
        Ok(CooMatrix {
            rows,
            cols,
            triplets,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.triplets.len()
    }

    pub fn triplets(&self) -> &[(u32, u32, f64)] {
        &self.triplets
    }

    /// Sequential reference product, used as the oracle for the kernels.
    pub fn apply_dense(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "apply_dense: dimension mismatch");
        let mut y = vec![0.0; self.rows];
        for &(r, c, v) in &self.triplets {
            y[r as usize] += v * x[c as usize];
        }
        y
    }

    pub fn transpose(&self) -> CooMatrix {
        CooMatrix {
            rows: self.cols,
            cols: self.rows,
            triplets: self.triplets.iter().map(|&(r, c, v)| (c, r, v)).collect(),
        }
    }

    /// Dense row-major image, for tiny test matrices only.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.cols]; self.rows];
        for &(r, c, v) in &self.triplets {
            d[r as usize][c as usize] += v;
        }
        d
    }

    /// Canonically sorted triplets with duplicates summed.
    pub fn normalized_triplets(&self) -> Vec<(u32, u32, f64)> {
        let mut t = self.triplets.clone();
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut out: Vec<(u32, u32, f64)> = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            match out.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => out.push((r, c, v)),
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
enum LocalIdx {
    U16(Vec<u16>, Vec<u16>),
    U32(Vec<u32>, Vec<u32>),
}

impl LocalIdx {
    fn len(&self) -> usize {
        match self {
            LocalIdx::U16(r, _) => r.len(),
            LocalIdx::U32(r, _) => r.len(),
        }
    }
}

/// Cache-blocked sparse matrix.
#[derive(Debug, Clone)]
pub struct CsbMatrix {
    rows: usize,
    cols: usize,
    tile: TileDims,
    /// Number of tile columns (row-major tile grid is nbr x nbc).
    nbc: usize,
    nbr: usize,
    /// Offsets into the nonzero arrays per tile, length nbr*nbc + 1.
    tile_ptr: Vec<usize>,
    local: LocalIdx,
    vals: Vec<f64>,
    col_inf_norms: Vec<f64>,
}

impl CsbMatrix {
    pub fn from_coo(coo: &CooMatrix, tile: TileDims) -> CsbMatrix {
        assert!(tile.r >= 1 && tile.k >= 1, "tile dims must be at least 1");
        let rows = coo.rows();
        let cols = coo.cols();
        let nbr = rows.div_ceil(tile.r).max(1);
        let nbc = cols.div_ceil(tile.k).max(1);
        let ntiles = nbr * nbc;

        // tile id plus column-major-in-tile sort key per nonzero
        let mut order: Vec<(usize, u32, u32, f64)> = coo
            .triplets()
            .iter()
            .map(|&(r, c, v)| {
                let (r, c) = (r as usize, c as usize);
                let t = (r / tile.r) * nbc + c / tile.k;
                ((t), (c % tile.k) as u32, (r % tile.r) as u32, v)
            })
            .collect();
        order.sort_unstable_by_key(|&(t, lc, lr, _)| (t, lc, lr));

        let mut tile_ptr = vec![0usize; ntiles + 1];
        for &(t, _, _, _) in &order {
            tile_ptr[t + 1] += 1;
        }
        for t in 0..ntiles {
            tile_ptr[t + 1] += tile_ptr[t];
        }

        let vals: Vec<f64> = order.iter().map(|&(_, _, _, v)| v).collect();
        let local = if tile.r <= u16::MAX as usize + 1 && tile.k <= u16::MAX as usize + 1 {
            LocalIdx::U16(
                order.iter().map(|&(_, _, lr, _)| lr as u16).collect(),
                order.iter().map(|&(_, lc, _, _)| lc as u16).collect(),
            )
        } else {
            LocalIdx::U32(
                order.iter().map(|&(_, _, lr, _)| lr).collect(),
                order.iter().map(|&(_, lc, _, _)| lc).collect(),
            )
        };

        // duplicates denote summed entries, so normalize before taking
        // per-column maxima
        let mut col_inf_norms = vec![0.0f64; cols];
        for (_, c, v) in coo.normalized_triplets() {
            let c = c as usize;
            if v > col_inf_norms[c] {
                col_inf_norms[c] = v;
            }
        }

        CsbMatrix {
            rows,
            cols,
            tile,
            nbc,
            nbr,
            tile_ptr,
            local,
            vals,
            col_inf_norms,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.local.len()
    }

    pub fn tile_dims(&self) -> TileDims {
        self.tile
    }

    pub fn col_inf_norms(&self) -> &[f64] {
        &self.col_inf_norms
    }

    pub fn to_coo(&self) -> CooMatrix {
        let mut triplets = Vec::with_capacity(self.nnz());
        for t in 0..self.nbr * self.nbc {
            let (br, bc) = (t / self.nbc, t % self.nbc);
            for idx in self.tile_ptr[t]..self.tile_ptr[t + 1] {
                let (lr, lc) = self.local_at(idx);
                triplets.push((
                    (br * self.tile.r + lr) as u32,
                    (bc * self.tile.k + lc) as u32,
                    self.vals[idx],
                ));
            }
        }
        CooMatrix::new(self.rows, self.cols, triplets).expect("csb holds valid triplets")
    }

    #[inline]
    fn local_at(&self, idx: usize) -> (usize, usize) {
        match &self.local {
            LocalIdx::U16(r, c) => (r[idx] as usize, c[idx] as usize),
            LocalIdx::U32(r, c) => (r[idx] as usize, c[idx] as usize),
        }
    }

    /// y = Ax, parallel over row-blocks.
    pub fn spmv(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.cols, "spmv: x dimension mismatch");
        assert_eq!(y.len(), self.rows, "spmv: y dimension mismatch");
        let nbc = self.nbc;
        y.par_chunks_mut(self.tile.r)
            .enumerate()
            .for_each(|(br, ys)| {
                ys.fill(0.0);
                for bc in 0..nbc {
                    let t = br * nbc + bc;
                    let base_c = bc * self.tile.k;
                    for idx in self.tile_ptr[t]..self.tile_ptr[t + 1] {
                        let (lr, lc) = self.local_at(idx);
                        ys[lr] += self.vals[idx] * x[base_c + lc];
                    }
                }
            });
    }

    /// y = A'x, parallel over column-blocks.
    pub fn spmv_t(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.rows, "spmv_t: x dimension mismatch");
        assert_eq!(y.len(), self.cols, "spmv_t: y dimension mismatch");
        let nbc = self.nbc;
        y.par_chunks_mut(self.tile.k)
            .enumerate()
            .for_each(|(bc, ys)| {
                ys.fill(0.0);
                for br in 0..self.nbr {
                    let t = br * nbc + bc;
                    let base_r = br * self.tile.r;
                    for idx in self.tile_ptr[t]..self.tile_ptr[t + 1] {
                        let (lr, lc) = self.local_at(idx);
                        ys[lc] += self.vals[idx] * x[base_r + lr];
                    }
                }
            });
    }
}
