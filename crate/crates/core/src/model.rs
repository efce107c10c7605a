//! Positive-LP data model: the operator contract shared by explicit CSB
//! matrices and the implicit graph operators, plus the mixed
//! packing/covering instance the solver consumes.

use crate::csb::{CooMatrix, CsbMatrix};
use crate::error::{Error, Result};
use crate::kernels;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

/// Nonnegative constraint-matrix role: forward and transpose products
/// plus per-column infinity norms, which initialization and the
/// objective bound need.
pub trait LinearOperator: Send + Sync {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;

    /// y = Ax. Panics on dimension mismatch.
    fn apply(&self, x: &[f64], y: &mut [f64]);

    /// y = A'x. Panics on dimension mismatch.
    fn apply_t(&self, x: &[f64], y: &mut [f64]);

    /// Per-column maximum entry.
    fn col_inf_norms(&self) -> Vec<f64>;

    /// Explicit coordinate form, for oracles and debugging. The default
    /// probes unit vectors and is only meant for desk-scale operators.
    fn to_coo(&self) -> CooMatrix {
        let (rows, cols) = (self.rows(), self.cols());
        let mut triplets = Vec::new();
        let mut e = vec![0.0; cols];
        let mut col = vec![0.0; rows];
        for j in 0..cols {
            e[j] = 1.0;
            self.apply(&e, &mut col);
            e[j] = 0.0;
            for (i, &v) in col.iter().enumerate() {
                if v != 0.0 {
                    triplets.push((i as u32, j as u32, v));
                }
            }
        }
        CooMatrix::new(rows, cols, triplets).expect("operator produced invalid triplets")
    }
}

impl LinearOperator for CsbMatrix {
    fn rows(&self) -> usize {
        self.rows()
    }

    fn cols(&self) -> usize {
        self.cols()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.spmv(x, y);
    }

    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        self.spmv_t(x, y);
    }

    fn col_inf_norms(&self) -> Vec<f64> {
        self.col_inf_norms().to_vec()
    }

    fn to_coo(&self) -> CooMatrix {
        self.to_coo()
    }
}

/// Single dense row `scale * 1'`, the embedded objective constraint of
/// the pure packing/covering reductions. Never materialized.
#[derive(Debug, Clone)]
pub struct UniformRowOp {
    cols: usize,
    scale: f64,
}

impl UniformRowOp {
    pub fn new(cols: usize, scale: f64) -> UniformRowOp {
        assert!(scale > 0.0 && cols > 0);
        UniformRowOp { cols, scale }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

impl LinearOperator for UniformRowOp {
    fn rows(&self) -> usize {
        1
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.cols);
        assert_eq!(y.len(), 1);
        y[0] = self.scale * kernels::sum(x);
    }

    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), 1);
        assert_eq!(y.len(), self.cols);
        kernels::fill(y, self.scale * x[0]);
    }

    fn col_inf_norms(&self) -> Vec<f64> {
        vec![self.scale; self.cols]
    }
}

/// Positive objective-bound estimate driven by the outer search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjBound(f64);

impl ObjBound {
    pub fn new(value: f64) -> Result<ObjBound> {
        if value > 0.0 && value.is_finite() {
            Ok(ObjBound(value))
        } else {
            Err(Error::Config(format!(
                "objective bound must be positive, got {value}"
            )))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMode {
    Mixed,
    PurePacking,
    PureCovering,
}

/// `Px <= 1, Cx >= 1, x >= 0` over a shared variable vector.
#[derive(Clone)]
pub struct MixedInstance {
    packing: Arc<dyn LinearOperator>,
    covering: Arc<dyn LinearOperator>,
    mode: SolveMode,
}

impl MixedInstance {
    pub fn new(
        packing: Arc<dyn LinearOperator>,
        covering: Arc<dyn LinearOperator>,
    ) -> Result<MixedInstance> {
        Self::with_mode(packing, covering, SolveMode::Mixed)
    }

    fn with_mode(
        packing: Arc<dyn LinearOperator>,
        covering: Arc<dyn LinearOperator>,
        mode: SolveMode,
    ) -> Result<MixedInstance> {
        if packing.cols() != covering.cols() {
            return Err(Error::Dimension(format!(
                "packing has {} columns, covering has {}",
                packing.cols(),
                covering.cols()
            )));
        }
        Ok(MixedInstance {
            packing,
            covering,
            mode,
        })
    }

    /// Embed `max <1, x> s.t. Px <= 1` at objective estimate `bound`: the
    /// covering side becomes the single row `(1/bound) 1' x >= 1`.
    pub fn embed_packing(
        packing: Arc<dyn LinearOperator>,
        bound: ObjBound,
    ) -> Result<MixedInstance> {
        let row = Arc::new(UniformRowOp::new(packing.cols(), 1.0 / bound.value()));
        Self::with_mode(packing, row, SolveMode::PurePacking)
    }

    /// Embed `min <1, x> s.t. Cx >= 1` at objective estimate `bound`: the
    /// packing side becomes the single row `(1/bound) 1' x <= 1`.
    pub fn embed_covering(
        covering: Arc<dyn LinearOperator>,
        bound: ObjBound,
    ) -> Result<MixedInstance> {
        let row = Arc::new(UniformRowOp::new(covering.cols(), 1.0 / bound.value()));
        Self::with_mode(row, covering, SolveMode::PureCovering)
    }

    pub fn packing(&self) -> &Arc<dyn LinearOperator> {
        &self.packing
    }

    pub fn covering(&self) -> &Arc<dyn LinearOperator> {
        &self.covering
    }

    pub fn mode(&self) -> SolveMode {
        self.mode
    }

    pub fn cols(&self) -> usize {
        self.packing.cols()
    }

    pub fn packing_rows(&self) -> usize {
        self.packing.rows()
    }

    pub fn covering_rows(&self) -> usize {
        self.covering.rows()
    }
}

/// Structured validation findings; never aborts.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Violation {
    DimensionMismatch {
        packing_cols: usize,
        covering_cols: usize,
    },
    /// A variable whose packing column is all zero has no finite
    /// initialization norm and is unbounded at init.
    ZeroPackingColumn { col: usize },
    NegativeOutput {
        operator: &'static str,
        row: usize,
        col: usize,
        value: f64,
    },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check dimensions, packing zero columns, and nonnegativity on sampled
/// unit vectors.
pub fn validate(inst: &MixedInstance) -> ValidationReport {
    let mut report = ValidationReport::default();
    if inst.packing.cols() != inst.covering.cols() {
        report.violations.push(Violation::DimensionMismatch {
            packing_cols: inst.packing.cols(),
            covering_cols: inst.covering.cols(),
        });
        return report;
    }
    let norms = inst.packing.col_inf_norms();
    for (col, &nm) in norms.iter().enumerate() {
        if nm <= 0.0 {
            report.violations.push(Violation::ZeroPackingColumn { col });
        }
    }

    let n = inst.cols();
    let samples: Vec<usize> = if n <= 16 {
        (0..n).collect()
    } else {
        (0..16).map(|k| k * (n - 1) / 15).collect()
    };
    let mut e = vec![0.0; n];
    let mut yp = vec![0.0; inst.packing_rows()];
    let mut yc = vec![0.0; inst.covering_rows()];
    for &j in &samples {
        e[j] = 1.0;
        inst.packing.apply(&e, &mut yp);
        inst.covering.apply(&e, &mut yc);
        e[j] = 0.0;
        for (i, &v) in yp.iter().enumerate() {
            if v < 0.0 {
                report.violations.push(Violation::NegativeOutput {
                    operator: "packing",
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
        for (i, &v) in yc.iter().enumerate() {
            if v < 0.0 {
                report.violations.push(Violation::NegativeOutput {
                    operator: "covering",
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
    }
    report
}

/// Objective upper bound for pure packing: `sum_i 1 / ||P_{:,i}||_inf`.
/// Every column must contain a positive entry.
pub fn objective_upper_bound(packing: &dyn LinearOperator) -> Result<f64> {
    let norms = packing.col_inf_norms();
    let mut total = 0.0;
    for (col, &nm) in norms.iter().enumerate() {
        if nm <= 0.0 {
            return Err(Error::ZeroColumn { col });
        }
        total += 1.0 / nm;
    }
    Ok(total)
}

#[derive(Serialize, Deserialize)]
struct OperatorDump {
    rows: usize,
    cols: usize,
    triplets: Vec<(u32, u32, f64)>,
}

#[derive(Serialize, Deserialize)]
struct InstanceDump {
    schema_version: u32,
    n: usize,
    mode: SolveMode,
    packing: OperatorDump,
    covering: OperatorDump,
}

/// Explicit-COO JSON image of an instance, for debugging and oracle
/// exchange. Pure-mode embedded rows are written out explicitly.
pub fn dump_instance_json(inst: &MixedInstance) -> serde_json::Value {
    let dump = |op: &Arc<dyn LinearOperator>| {
        let coo = op.to_coo();
        OperatorDump {
            rows: coo.rows(),
            cols: coo.cols(),
            triplets: coo.normalized_triplets(),
        }
    };
    serde_json::to_value(InstanceDump {
        schema_version: 1,
        n: inst.cols(),
        mode: inst.mode(),
        packing: dump(&inst.packing),
        covering: dump(&inst.covering),
    })
    .expect("instance dump cannot fail")
}

/// Load a mixed instance from the JSON form written by
/// [`dump_instance_json`], backing both sides with CSB storage.
pub fn load_instance_json(path: impl AsRef<Path>) -> Result<MixedInstance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })?;
    let dump: InstanceDump = serde_json::from_str(&text)?;
    let build = |op: OperatorDump| -> Result<Arc<dyn LinearOperator>> {
        let coo = CooMatrix::new(op.rows, op.cols, op.triplets)?;
        Ok(Arc::new(CsbMatrix::from_coo(&coo, Default::default())))
    };
    MixedInstance::new(build(dump.packing)?, build(dump.covering)?)
}

/// Instrumentation wrapper counting forward and transpose applications;
/// the operator-budget tests wrap instance operators with it.
pub struct CountingOperator {
    inner: Arc<dyn LinearOperator>,
    forward: AtomicU64,
    transpose: AtomicU64,
}

impl CountingOperator {
    pub fn new(inner: Arc<dyn LinearOperator>) -> Arc<CountingOperator> {
        Arc::new(CountingOperator {
            inner,
            forward: AtomicU64::new(0),
            transpose: AtomicU64::new(0),
        })
    }

    pub fn forward_count(&self) -> u64 {
        self.forward.load(Ordering::Relaxed)
    }

    pub fn transpose_count(&self) -> u64 {
        self.transpose.load(Ordering::Relaxed)
    }
}

impl LinearOperator for CountingOperator {
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    fn cols(&self) -> usize {
        self.inner.cols()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.forward.fetch_add(1, Ordering::Relaxed);
        self.inner.apply(x, y);
    }

    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        self.transpose.fetch_add(1, Ordering::Relaxed);
        self.inner.apply_t(x, y);
    }

    fn col_inf_norms(&self) -> Vec<f64> {
        self.inner.col_inf_norms()
    }

    fn to_coo(&self) -> CooMatrix {
        self.inner.to_coo()
    }
}

/// Identity operator as a CSB matrix, a convenience for tests and tiny
/// instances.
pub fn identity_csb(n: usize) -> CsbMatrix {
    let coo = CooMatrix::new(n, n, (0..n as u32).map(|i| (i, i, 1.0)).collect()).unwrap();
    CsbMatrix::from_coo(&coo, Default::default())
}

/// Diagonal operator as a CSB matrix.
pub fn diagonal_csb(diag: &[f64]) -> Result<CsbMatrix> {
    let coo = CooMatrix::new(
        diag.len(),
        diag.len(),
        diag.iter()
            .enumerate()
            .map(|(i, &v)| (i as u32, i as u32, v))
            .collect(),
    )?;
    Ok(CsbMatrix::from_coo(&coo, Default::default()))
}
