//! Matrix-free operators over a graph's (r, c, e) triplets.
//!
//! The vertex-edge incidence matrix, the vertex-edge pair matrix and
//! the interweaved identity are never stored; their products are
//! computed straight off the adjacency structure. Forward products
//! accumulate per output vertex by combining that vertex's row-major
//! and column-major edge groups, so each output element has exactly one
//! writer and a fixed summation order: race-free and bit-reproducible
//! for any worker count. Transpose products write each output element
//! once or twice from a single edge and parallelize trivially.

use crate::csb::CooMatrix;
use crate::graph::Graph;
use crate::model::LinearOperator;
use rayon::prelude::*;
use std::sync::Arc;

const PAR_MIN: usize = 1024;

/// y[v] = sum of x[e] over edges incident to v.
pub fn incidence_apply(g: &Graph, x: &[f64], y: &mut [f64]) {
    assert_eq!(x.len(), g.edge_count(), "incidence_apply: |x| must be m");
    assert_eq!(y.len(), g.vertex_count(), "incidence_apply: |y| must be n");
    let row_ptr = g.row_ptr();
    let col_ptr = g.col_ptr();
    let col_order = g.col_order();
    y.par_iter_mut()
        .with_min_len(PAR_MIN)
        .enumerate()
        .for_each(|(v, yv)| {
            let mut acc = 0.0;
            for e in row_ptr[v] as usize..row_ptr[v + 1] as usize {
                acc += x[e];
            }
            for &e in &col_order[col_ptr[v] as usize..col_ptr[v + 1] as usize] {
                acc += x[e as usize];
            }
            *yv = acc;
        });
}

/// y[e] = x[r] + x[c] for each edge e = (r, c).
pub fn incidence_apply_t(g: &Graph, x: &[f64], y: &mut [f64]) {
    assert_eq!(
        x.len(),
        g.vertex_count(),
        "incidence_apply_t: |x| must be n"
    );
    assert_eq!(y.len(), g.edge_count(), "incidence_apply_t: |y| must be m");
    let edges = g.edges();
    y.par_iter_mut()
        .with_min_len(PAR_MIN)
        .enumerate()
        .for_each(|(e, ye)| {
            let (r, c) = edges[e];
            *ye = x[r as usize] + x[c as usize];
        });
}

/// y[r] += x[2e], y[c] += x[2e+1] for each edge e = (r, c).
pub fn pair_apply(g: &Graph, x: &[f64], y: &mut [f64]) {
    assert_eq!(x.len(), 2 * g.edge_count(), "pair_apply: |x| must be 2m");
    assert_eq!(y.len(), g.vertex_count(), "pair_apply: |y| must be n");
    let row_ptr = g.row_ptr();
    let col_ptr = g.col_ptr();
    let col_order = g.col_order();
    y.par_iter_mut()
        .with_min_len(PAR_MIN)
        .enumerate()
        .for_each(|(v, yv)| {
            let mut acc = 0.0;
            for e in row_ptr[v] as usize..row_ptr[v + 1] as usize {
                acc += x[2 * e];
            }
            for &e in &col_order[col_ptr[v] as usize..col_ptr[v + 1] as usize] {
                acc += x[2 * e as usize + 1];
            }
            *yv = acc;
        });
}

/// y[2e] = x[r], y[2e+1] = x[c] for each edge e = (r, c).
pub fn pair_apply_t(g: &Graph, x: &[f64], y: &mut [f64]) {
    assert_eq!(x.len(), g.vertex_count(), "pair_apply_t: |x| must be n");
    assert_eq!(y.len(), 2 * g.edge_count(), "pair_apply_t: |y| must be 2m");
    let edges = g.edges();
    y.par_chunks_mut(2)
        .with_min_len(PAR_MIN)
        .enumerate()
        .for_each(|(e, pair)| {
            let (r, c) = edges[e];
            pair[0] = x[r as usize];
            pair[1] = x[c as usize];
        });
}

/// y[e] = x[2e] + x[2e+1].
pub fn interweave_apply(x: &[f64], y: &mut [f64]) {
    assert_eq!(x.len(), 2 * y.len(), "interweave_apply: |x| must be 2|y|");
    y.par_iter_mut()
        .with_min_len(PAR_MIN)
        .enumerate()
        .for_each(|(e, ye)| *ye = x[2 * e] + x[2 * e + 1]);
}

/// y[2e] = y[2e+1] = x[e].
pub fn interweave_apply_t(x: &[f64], y: &mut [f64]) {
    assert_eq!(y.len(), 2 * x.len(), "interweave_apply_t: |y| must be 2|x|");
    y.par_chunks_mut(2)
        .with_min_len(PAR_MIN)
        .enumerate()
        .for_each(|(e, pair)| {
            pair[0] = x[e];
            pair[1] = x[e];
        });
}

/// Vertex-edge incidence matrix role, shape n x m.
#[derive(Clone)]
pub struct IncidenceOp {
    graph: Arc<Graph>,
}

impl IncidenceOp {
    pub fn new(graph: Arc<Graph>) -> IncidenceOp {
        IncidenceOp { graph }
    }
}

impl LinearOperator for IncidenceOp {
    fn rows(&self) -> usize {
        self.graph.vertex_count()
    }

    fn cols(&self) -> usize {
        self.graph.edge_count()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        incidence_apply(&self.graph, x, y);
    }

    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        incidence_apply_t(&self.graph, x, y);
    }

    // 0/1 matrix and every edge column has two ones
    fn col_inf_norms(&self) -> Vec<f64> {
        vec![1.0; self.graph.edge_count()]
    }

    fn to_coo(&self) -> CooMatrix {
        let mut t = Vec::with_capacity(2 * self.cols());
        for (e, &(r, c)) in self.graph.edges().iter().enumerate() {
            t.push((r, e as u32, 1.0));
            t.push((c, e as u32, 1.0));
        }
        CooMatrix::new(self.rows(), self.cols(), t).unwrap()
    }
}

/// Transposed incidence view, shape m x n: one covering row per edge.
#[derive(Clone)]
pub struct IncidenceTransposeOp {
    graph: Arc<Graph>,
}

impl IncidenceTransposeOp {
    pub fn new(graph: Arc<Graph>) -> IncidenceTransposeOp {
        IncidenceTransposeOp { graph }
    }
}

impl LinearOperator for IncidenceTransposeOp {
    fn rows(&self) -> usize {
        self.graph.edge_count()
    }

    fn cols(&self) -> usize {
        self.graph.vertex_count()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        incidence_apply_t(&self.graph, x, y);
    }

    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        incidence_apply(&self.graph, x, y);
    }

    fn col_inf_norms(&self) -> Vec<f64> {
        (0..self.graph.vertex_count())
            .map(|v| if self.graph.degree(v) > 0 { 1.0 } else { 0.0 })
            .collect()
    }

    fn to_coo(&self) -> CooMatrix {
        let mut t = Vec::with_capacity(2 * self.rows());
        for (e, &(r, c)) in self.graph.edges().iter().enumerate() {
            t.push((e as u32, r, 1.0));
            t.push((e as u32, c, 1.0));
        }
        CooMatrix::new(self.rows(), self.cols(), t).unwrap()
    }
}

/// Vertex-edge pair matrix scaled by a constant, shape n_kept x 2m.
/// Zero-degree vertices contribute all-zero rows and are dropped.
#[derive(Clone)]
pub struct PairOp {
    graph: Arc<Graph>,
    kept: Arc<Vec<u32>>,
    scale: f64,
}

impl PairOp {
    pub fn new(graph: Arc<Graph>) -> PairOp {
        Self::scaled(graph, 1.0)
    }

    pub fn scaled(graph: Arc<Graph>, scale: f64) -> PairOp {
        assert!(scale > 0.0);
        let kept: Vec<u32> = (0..graph.vertex_count() as u32)
            .filter(|&v| graph.degree(v as usize) > 0)
            .collect();
        PairOp {
            graph,
            kept: Arc::new(kept),
            scale,
        }
    }

    /// Row index -> vertex id mapping.
    pub fn kept_vertices(&self) -> &[u32] {
        &self.kept
    }
}

impl LinearOperator for PairOp {
    fn rows(&self) -> usize {
        self.kept.len()
    }

    fn cols(&self) -> usize {
        2 * self.graph.edge_count()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.cols(), "pair apply: dimension mismatch");
        assert_eq!(y.len(), self.rows(), "pair apply: dimension mismatch");
        let g = &self.graph;
        let (row_ptr, col_ptr, col_order) = (g.row_ptr(), g.col_ptr(), g.col_order());
        let scale = self.scale;
        let kept = &self.kept;
        y.par_iter_mut()
            .with_min_len(PAR_MIN)
            .enumerate()
            .for_each(|(k, yk)| {
                let v = kept[k] as usize;
                let mut acc = 0.0;
                for e in row_ptr[v] as usize..row_ptr[v + 1] as usize {
                    acc += x[2 * e];
                }
                for &e in &col_order[col_ptr[v] as usize..col_ptr[v + 1] as usize] {
                    acc += x[2 * e as usize + 1];
                }
                *yk = scale * acc;
            });
    }

    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.rows(), "pair apply_t: dimension mismatch");
        assert_eq!(y.len(), self.cols(), "pair apply_t: dimension mismatch");
        // scatter kept-row values to a full vertex vector once
        let mut full = vec![0.0; self.graph.vertex_count()];
        for (k, &v) in self.kept.iter().enumerate() {
            full[v as usize] = self.scale * x[k];
        }
        let edges = self.graph.edges();
        y.par_chunks_mut(2)
            .with_min_len(PAR_MIN)
            .enumerate()
            .for_each(|(e, pair)| {
                let (r, c) = edges[e];
                pair[0] = full[r as usize];
                pair[1] = full[c as usize];
            });
    }

    fn col_inf_norms(&self) -> Vec<f64> {
        vec![self.scale; self.cols()]
    }

    fn to_coo(&self) -> CooMatrix {
        let mut inv = vec![u32::MAX; self.graph.vertex_count()];
        for (k, &v) in self.kept.iter().enumerate() {
            inv[v as usize] = k as u32;
        }
        let mut t = Vec::with_capacity(self.cols());
        for (e, &(r, c)) in self.graph.edges().iter().enumerate() {
            t.push((inv[r as usize], 2 * e as u32, self.scale));
            t.push((inv[c as usize], 2 * e as u32 + 1, self.scale));
        }
        CooMatrix::new(self.rows(), self.cols(), t).unwrap()
    }
}

/// Interweaved identity, shape m x 2m: row e has ones at columns 2e and
/// 2e+1.
#[derive(Clone)]
pub struct InterweaveOp {
    m: usize,
}

impl InterweaveOp {
    pub fn new(m: usize) -> InterweaveOp {
        InterweaveOp { m }
    }
}

impl LinearOperator for InterweaveOp {
    fn rows(&self) -> usize {
        self.m
    }

    fn cols(&self) -> usize {
        2 * self.m
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(y.len(), self.m);
        interweave_apply(x, y);
    }

    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.m);
        interweave_apply_t(x, y);
    }

    fn col_inf_norms(&self) -> Vec<f64> {
        vec![1.0; 2 * self.m]
    }

    fn to_coo(&self) -> CooMatrix {
        let mut t = Vec::with_capacity(2 * self.m);
        for e in 0..self.m as u32 {
            t.push((e, 2 * e, 1.0));
            t.push((e, 2 * e + 1, 1.0));
        }
        CooMatrix::new(self.m, 2 * self.m, t).unwrap()
    }
}

/// Row-scaled incidence restricted to a vertex subset: row k is
/// `scale[k]` times the incidence row of vertex `kept[k]`. Backs the
/// generalized-matching normalizations `diag(1/ub) M` and
/// `diag(1/lb) M` (rows with a zero bound dropped).
#[derive(Clone)]
pub struct RowScaledIncidenceOp {
    graph: Arc<Graph>,
    kept: Arc<Vec<u32>>,
    /// Full-length per-vertex scale; zero for dropped vertices.
    full_scale: Arc<Vec<f64>>,
    /// Per-kept-row scale, aligned with `kept`.
    row_scale: Arc<Vec<f64>>,
}

impl RowScaledIncidenceOp {
    /// Keep the vertices where `scale` is positive.
    pub fn new(graph: Arc<Graph>, scale: Vec<f64>) -> RowScaledIncidenceOp {
        assert_eq!(scale.len(), graph.vertex_count());
        let kept: Vec<u32> = (0..graph.vertex_count() as u32)
            .filter(|&v| scale[v as usize] > 0.0)
            .collect();
        let row_scale: Vec<f64> = kept.iter().map(|&v| scale[v as usize]).collect();
        RowScaledIncidenceOp {
            graph,
            kept: Arc::new(kept),
            full_scale: Arc::new(scale),
            row_scale: Arc::new(row_scale),
        }
    }

    pub fn kept_vertices(&self) -> &[u32] {
        &self.kept
    }
}

impl LinearOperator for RowScaledIncidenceOp {
    fn rows(&self) -> usize {
        self.kept.len()
    }

    fn cols(&self) -> usize {
        self.graph.edge_count()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.cols());
        assert_eq!(y.len(), self.rows());
        let g = &self.graph;
        let (row_ptr, col_ptr, col_order) = (g.row_ptr(), g.col_ptr(), g.col_order());
        let (kept, row_scale) = (&self.kept, &self.row_scale);
        y.par_iter_mut()
            .with_min_len(PAR_MIN)
            .enumerate()
            .for_each(|(k, yk)| {
                let v = kept[k] as usize;
                let mut acc = 0.0;
                for e in row_ptr[v] as usize..row_ptr[v + 1] as usize {
                    acc += x[e];
                }
                for &e in &col_order[col_ptr[v] as usize..col_ptr[v + 1] as usize] {
                    acc += x[e as usize];
                }
                *yk = row_scale[k] * acc;
            });
    }

    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.rows());
        assert_eq!(y.len(), self.cols());
        let mut full = vec![0.0; self.graph.vertex_count()];
        for (k, &v) in self.kept.iter().enumerate() {
            full[v as usize] = self.row_scale[k] * x[k];
        }
        let edges = self.graph.edges();
        y.par_iter_mut()
            .with_min_len(PAR_MIN)
            .enumerate()
            .for_each(|(e, ye)| {
                let (r, c) = edges[e];
                *ye = full[r as usize] + full[c as usize];
            });
    }

    fn col_inf_norms(&self) -> Vec<f64> {
        self.graph
            .edges()
            .iter()
            .map(|&(r, c)| f64::max(self.full_scale[r as usize], self.full_scale[c as usize]))
            .collect()
    }

    fn to_coo(&self) -> CooMatrix {
        let mut inv = vec![u32::MAX; self.graph.vertex_count()];
        for (k, &v) in self.kept.iter().enumerate() {
            inv[v as usize] = k as u32;
        }
        let mut t = Vec::new();
        for (e, &(r, c)) in self.graph.edges().iter().enumerate() {
            for v in [r, c] {
                let k = inv[v as usize];
                if k != u32::MAX {
                    t.push((k, e as u32, self.row_scale[k as usize]));
                }
            }
        }
        CooMatrix::new(self.rows(), self.cols(), t).unwrap()
    }
}
