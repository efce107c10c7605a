//! Undirected graph storage with stable per-edge identifiers.
//!
//! Edges are kept sorted in row-major order `(r, c)` with `r < c`; the
//! position of an edge in that order is its identifier, which the
//! implicit constraint operators use as a column index. A column-major
//! permutation of the edge list is materialized once at construction so
//! forward operator applications can run the race-free two-phase
//! traversal without re-sorting.

use crate::error::{Error, Result};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    /// Edges as (r, c) with r < c, sorted lexicographically; edge id = index.
    edges: Vec<(u32, u32)>,
    /// Edge-id ranges grouped by r (length n+1).
    row_ptr: Vec<u32>,
    /// Edge ids sorted by (c, r).
    col_order: Vec<u32>,
    /// Ranges into `col_order` grouped by c (length n+1).
    col_ptr: Vec<u32>,
    degree: Vec<u32>,
    /// For graphs read as biadjacency matrices: the number of left vertices.
    bipartition: Option<usize>,
}

/// What a file ingest dropped or merged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub self_loops_dropped: usize,
    pub duplicates_merged: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct MmOptions {
    pub drop_self_loops: bool,
    pub symmetrize: bool,
}

impl Default for MmOptions {
    fn default() -> Self {
        MmOptions {
            drop_self_loops: true,
            symmetrize: true,
        }
    }
}

impl Graph {
    /// Build from undirected edge pairs. Rejects self-loops, duplicate
    /// edges and out-of-range endpoints; use the file readers for inputs
    /// that need cleanup.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::Graph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Graph(format!("self-loop at vertex {u}")));
            }
            let (r, c) = if u < v { (u, v) } else { (v, u) };
            edges.push((r as u32, c as u32));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Graph("duplicate edge".into()));
        }
        Ok(Self::from_sorted_edges(n, edges, None))
    }

    fn from_sorted_edges(n: usize, edges: Vec<(u32, u32)>, bipartition: Option<usize>) -> Graph {
        let m = edges.len();
        let mut row_ptr = vec![0u32; n + 1];
        let mut col_count = vec![0u32; n + 1];
        let mut degree = vec![0u32; n];
        for &(r, c) in &edges {
            row_ptr[r as usize + 1] += 1;
            col_count[c as usize + 1] += 1;
            degree[r as usize] += 1;
            degree[c as usize] += 1;
        }
        for v in 0..n {
            row_ptr[v + 1] += row_ptr[v];
            col_count[v + 1] += col_count[v];
        }
        let col_ptr = col_count;
        let mut col_order: Vec<u32> = (0..m as u32).collect();
        col_order.sort_unstable_by_key(|&e| {
            let (r, c) = edges[e as usize];
            (c, r)
        });
        Graph {
            n,
            edges,
            row_ptr,
            col_order,
            col_ptr,
            degree,
            bipartition,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge endpoints (r, c) with r < c; the index is the edge id.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v] as usize
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn bipartition(&self) -> Option<usize> {
        self.bipartition
    }

    /// Edge ids whose smaller endpoint is `v`.
    pub fn edges_with_row(&self, v: usize) -> std::ops::Range<usize> {
        self.row_ptr[v] as usize..self.row_ptr[v + 1] as usize
    }

    /// Edge ids (via the column-major permutation) whose larger endpoint is `v`.
    pub fn edges_with_col(&self, v: usize) -> &[u32] {
        &self.col_order[self.col_ptr[v] as usize..self.col_ptr[v + 1] as usize]
    }

    pub(crate) fn row_ptr(&self) -> &[u32] {
        &self.row_ptr
    }

    pub(crate) fn col_ptr(&self) -> &[u32] {
        &self.col_ptr
    }

    pub(crate) fn col_order(&self) -> &[u32] {
        &self.col_order
    }

    /// Tag an existing graph with a bipartition split; the caller
    /// guarantees every edge crosses it.
    pub(crate) fn bipartite_unchecked(mut g: Graph, n_left: usize) -> Graph {
        g.bipartition = Some(n_left);
        g
    }

    /// Read an undirected graph from a Matrix Market coordinate file.
    /// Real or integer weights are discarded; the LPs here are unweighted.
    pub fn from_matrix_market(
        path: impl AsRef<Path>,
        opts: MmOptions,
    ) -> Result<(Graph, IngestReport)> {
        let parsed = parse_matrix_market(path.as_ref())?;
        let n = parsed.rows.max(parsed.cols);
        if n == 0 {
            return Err(Error::EmptyGraph(
                "matrix market file declares 0 vertices".into(),
            ));
        }
        let mut report = IngestReport::default();
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(parsed.entries.len());
        for &(i, j) in &parsed.entries {
            if i == j {
                if opts.drop_self_loops {
                    report.self_loops_dropped += 1;
                    continue;
                }
                return Err(Error::Graph(format!("self-loop at vertex {i}")));
            }
            let (r, c) = if i < j { (i, j) } else { (j, i) };
            edges.push((r, c));
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        report.duplicates_merged = before - edges.len();
        if report.duplicates_merged > 0 && !opts.symmetrize && !parsed.symmetric {
            return Err(Error::Graph(format!(
                "{} duplicate entries in a general file without symmetrize",
                report.duplicates_merged
            )));
        }
        if edges.is_empty() {
            return Err(Error::EmptyGraph("no edges after cleanup".into()));
        }
        Ok((Self::from_sorted_edges(n, edges, None), report))
    }

    /// Read a Matrix Market file as a biadjacency matrix: rows become left
    /// vertices `0..n_left`, columns become right vertices `n_left..`.
    pub fn read_biadjacency(path: impl AsRef<Path>) -> Result<(Graph, IngestReport)> {
        let parsed = parse_matrix_market(path.as_ref())?;
        let n_left = parsed.rows;
        let n = parsed.rows + parsed.cols;
        if n == 0 {
            return Err(Error::EmptyGraph(
                "matrix market file declares 0 vertices".into(),
            ));
        }
        let mut edges: Vec<(u32, u32)> = parsed
            .entries
            .iter()
            .map(|&(i, j)| (i, n_left as u32 + j))
            .collect();
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        if edges.is_empty() {
            return Err(Error::EmptyGraph("no entries in biadjacency file".into()));
        }
        let report = IngestReport {
            self_loops_dropped: 0,
            duplicates_merged: before - edges.len(),
        };
        Ok((Self::from_sorted_edges(n, edges, Some(n_left)), report))
    }

    /// Write the edge set as a pattern symmetric coordinate file.
    pub fn write_matrix_market(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut f = File::create(path).map_err(|source| Error::Io {
            path: path.into(),
            source,
        })?;
        let mut buf = String::new();
        buf.push_str("%%MatrixMarket matrix coordinate pattern symmetric\n");
        buf.push_str(&format!("{} {} {}\n", self.n, self.n, self.edges.len()));
        for &(r, c) in &self.edges {
            // symmetric files store the lower triangle
            buf.push_str(&format!("{} {}\n", c + 1, r + 1));
        }
        f.write_all(buf.as_bytes()).map_err(|source| Error::Io {
            path: path.into(),
            source,
        })
    }
}

struct ParsedMm {
    rows: usize,
    cols: usize,
    symmetric: bool,
    /// 0-based (i, j) pairs, mirrored duplicates not folded.
    entries: Vec<(u32, u32)>,
}

fn parse_matrix_market(path: &Path) -> Result<ParsedMm> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines().enumerate();

    let (_, header) = lines.next().ok_or_else(|| Error::MatrixMarket {
        line: 1,
        msg: "empty file".into(),
    })?;
    let header = header.map_err(|source| Error::Io {
        path: path.into(),
        source,
    })?;
    let lower = header.to_ascii_lowercase();
    let fields: Vec<&str> = lower.split_whitespace().collect();
    if fields.len() < 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(Error::MatrixMarket {
            line: 1,
            msg: format!("unrecognized header: {header}"),
        });
    }
    if fields[2] != "coordinate" {
        return Err(Error::MatrixMarket {
            line: 1,
            msg: "only coordinate format is supported".into(),
        });
    }
    let has_value = match fields[3] {
        "pattern" => false,
        "real" | "integer" => true,
        other => {
            return Err(Error::MatrixMarket {
                line: 1,
                msg: format!("unsupported field type: {other}"),
            })
        }
    };
    let symmetric = match fields[4] {
        "general" => false,
        "symmetric" => true,
        other => {
            return Err(Error::MatrixMarket {
                line: 1,
                msg: format!("unsupported symmetry: {other}"),
            })
        }
    };

    let mut dims: Option<(usize, usize, usize)> = None;
    let mut entries = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: path.into(),
            source,
        })?;
        let s = line.trim();
        if s.is_empty() || s.starts_with('%') {
            continue;
        }
        let mut it = s.split_whitespace();
        if dims.is_none() {
            let r: usize = parse_field(it.next(), lineno, "row count")?;
            let c: usize = parse_field(it.next(), lineno, "column count")?;
            let nnz: usize = parse_field(it.next(), lineno, "nonzero count")?;
            dims = Some((r, c, nnz));
            entries.reserve(nnz);
            continue;
        }
        let (rows, cols, _) = dims.unwrap();
        let i: usize = parse_field(it.next(), lineno, "row index")?;
        let j: usize = parse_field(it.next(), lineno, "column index")?;
        if has_value {
            let _: f64 = parse_field(it.next(), lineno, "value")?;
        }
        if i < 1 || i > rows || j < 1 || j > cols {
            return Err(Error::MatrixMarket {
                line: lineno,
                msg: format!("index ({i}, {j}) outside {rows} x {cols}"),
            });
        }
        entries.push((i as u32 - 1, j as u32 - 1));
    }
    let (rows, cols, nnz) = dims.ok_or(Error::MatrixMarket {
        line: 0,
        msg: "missing size line".into(),
    })?;
    if entries.len() != nnz {
        return Err(Error::MatrixMarket {
            line: 0,
            msg: format!("expected {nnz} entries, found {}", entries.len()),
        });
    }
    Ok(ParsedMm {
        rows,
        cols,
        symmetric,
        entries,
    })
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::MatrixMarket {
        line,
        msg: format!("missing {what}"),
    })?
    .parse()
    .map_err(|_| Error::MatrixMarket {
        line,
        msg: format!("bad {what}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn triangle_from_file() {
        let f =
            write_tmp("%%MatrixMarket matrix coordinate pattern general\n3 3 3\n1 2\n1 3\n2 3\n");
        let (g, rep) = Graph::from_matrix_market(f.path(), MmOptions::default()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(rep, IngestReport::default());
        assert_eq!(g.degrees(), &[2, 2, 2]);
    }

    #[test]
    fn self_loop_dropped_and_counted() {
        let f = write_tmp("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 1\n1 2\n");
        let (g, rep) = Graph::from_matrix_market(f.path(), MmOptions::default()).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(rep.self_loops_dropped, 1);
    }

    #[test]
    fn mirrored_duplicate_merges() {
        let f = write_tmp("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 2\n2 1\n");
        let (g, rep) = Graph::from_matrix_market(f.path(), MmOptions::default()).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(rep.duplicates_merged, 1);
        assert_eq!(g.edges()[0], (0, 1));
    }

    #[test]
    fn real_weights_discarded() {
        let f =
            write_tmp("%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n2 1 0.5\n3 2 9.0\n");
        let (g, _) = Graph::from_matrix_market(f.path(), MmOptions::default()).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn malformed_header_rejected() {
        let f = write_tmp("%%MatrixMarket matrix array real general\n2 2\n1.0\n");
        assert!(matches!(
            Graph::from_matrix_market(f.path(), MmOptions::default()),
            Err(Error::MatrixMarket { .. })
        ));
    }

    #[test]
    fn out_of_range_index_rejected() {
        let f = write_tmp("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n3 1\n");
        assert!(Graph::from_matrix_market(f.path(), MmOptions::default()).is_err());
    }

    #[test]
    fn biadjacency_all_ones_2x2() {
        let f = write_tmp(
            "%%MatrixMarket matrix coordinate pattern general\n2 2 4\n1 1\n1 2\n2 1\n2 2\n",
        );
        let (g, _) = Graph::read_biadjacency(f.path()).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.bipartition(), Some(2));
        // every edge crosses the partition
        for &(r, c) in g.edges() {
            assert!((r as usize) < 2 && (c as usize) >= 2);
        }
    }

    #[test]
    fn biadjacency_single_entry() {
        let f = write_tmp("%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n");
        let (g, _) = Graph::read_biadjacency(f.path()).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn biadjacency_3x2() {
        let f = write_tmp(
            "%%MatrixMarket matrix coordinate pattern general\n3 2 4\n1 1\n2 1\n2 2\n3 2\n",
        );
        let (g, _) = Graph::read_biadjacency(f.path()).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 4);
        for &(r, c) in g.edges() {
            assert!((r as usize) < 3 && (c as usize) >= 3);
        }
    }

    #[test]
    fn round_trip_preserves_edge_set() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 4), (2, 3), (1, 2)]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.mtx");
        g.write_matrix_market(&path).unwrap();
        let (g2, rep) = Graph::from_matrix_market(&path, MmOptions::default()).unwrap();
        assert_eq!(g.edges(), g2.edges());
        assert_eq!(rep, IngestReport::default());
    }

    #[test]
    fn traversal_orders_cover_all_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let via_rows: usize = (0..4).map(|v| g.edges_with_row(v).len()).sum();
        let via_cols: usize = (0..4).map(|v| g.edges_with_col(v).len()).sum();
        assert_eq!(via_rows, 4);
        assert_eq!(via_cols, 4);
        let sum_deg: usize = (0..4).map(|v| g.degree(v)).sum();
        assert_eq!(sum_deg, 8);
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 5)]).is_err());
    }
}
