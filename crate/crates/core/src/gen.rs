//! Seeded random-graph and random-instance generators for benchmarks
//! and tests.

use crate::csb::{CooMatrix, CsbMatrix};
use crate::graph::Graph;
use crate::model::MixedInstance;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// G(n, p) with each pair included independently.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generator produces clean edges")
}

/// Random geometric graph: n points in the unit square, an edge when the
/// distance is at most `radius`. Bucketed neighbor search keeps this
/// near-linear.
pub fn random_geometric(n: usize, radius: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
        .collect();
    let cells = ((1.0 / radius).floor() as usize).clamp(1, 4096);
    let cell_of = |x: f64| ((x * cells as f64) as usize).min(cells - 1);
    let mut buckets = vec![Vec::new(); cells * cells];
    for (i, &(x, y)) in pts.iter().enumerate() {
        buckets[cell_of(x) * cells + cell_of(y)].push(i as u32);
    }
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for (i, &(x, y)) in pts.iter().enumerate() {
        let (cx, cy) = (cell_of(x), cell_of(y));
        for dx in -1i64..=1 {
            for dy in -1i64..=1 {
                let bx = cx as i64 + dx;
                let by = cy as i64 + dy;
                if bx < 0 || by < 0 || bx >= cells as i64 || by >= cells as i64 {
                    continue;
                }
                for &j in &buckets[bx as usize * cells + by as usize] {
                    let j = j as usize;
                    if j <= i {
                        continue;
                    }
                    let (px, py) = pts[j];
                    if (px - x) * (px - x) + (py - y) * (py - y) <= r2 {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generator produces clean edges")
}

/// Random bipartite graph on `n_left + n_right` vertices with edge
/// probability `p` across the partition; the bipartition is recorded.
pub fn random_bipartite(n_left: usize, n_right: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n_left {
        for v in 0..n_right {
            if rng.random::<f64>() < p {
                pairs.push((u as u32, (n_left + v) as u32));
            }
        }
    }
    bipartite_from_pairs(n_left, n_right, &pairs)
}

/// Assemble a bipartite graph from cross-partition pairs already encoded
/// as (left, n_left + right).
pub fn bipartite_from_pairs(n_left: usize, n_right: usize, pairs: &[(u32, u32)]) -> Graph {
    let as_usize: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(u, v)| (u as usize, v as usize))
        .collect();
    let g = Graph::from_edges(n_left + n_right, &as_usize).expect("clean bipartite pairs");
    // Graph::from_edges has no bipartition; rebuild via the biadjacency path
    with_bipartition(g, n_left)
}

fn with_bipartition(g: Graph, n_left: usize) -> Graph {
    // edges all cross the partition by construction; tag the split
    debug_assert!(g
        .edges()
        .iter()
        .all(|&(r, c)| (r as usize) < n_left && c as usize >= n_left));
    Graph::bipartite_unchecked(g, n_left)
}

/// Random mixed instance with a planted strictly feasible point: rows are
/// rescaled around a positive `x*` so that `Px* <= 1 <= Cx*` holds with
/// margin. Every packing column gets at least one entry.
pub fn planted_feasible_instance(n: usize, mp: usize, mc: usize, seed: u64) -> MixedInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xstar: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
    let mut pt = Vec::new();
    let mut ct = Vec::new();
    let mut p_rows: Vec<BTreeMap<usize, f64>> = vec![Default::default(); mp];
    for c in 0..n {
        let r = rng.random_range(0..mp);
        p_rows[r].insert(c, rng.random_range(0.1..2.0));
    }
    let density = (4.0 / n as f64).min(0.25);
    for r in 0..mp {
        for c in 0..n {
            if rng.random_range(0.0..1.0) < density {
                p_rows[r]
                    .entry(c)
                    .or_insert_with(|| rng.random_range(0.1..2.0));
            }
        }
        if p_rows[r].is_empty() {
            p_rows[r].insert(rng.random_range(0..n), rng.random_range(0.1..2.0));
        }
        let dot: f64 = p_rows[r].iter().map(|(&c, v)| v * xstar[c]).sum();
        let margin = rng.random_range(1.0..2.0);
        for (&c, &v) in &p_rows[r] {
            pt.push((r as u32, c as u32, v / (dot * margin)));
        }
    }
    for r in 0..mc {
        let mut row: BTreeMap<usize, f64> = Default::default();
        for c in 0..n {
            if rng.random_range(0.0..1.0) < density.max(2.0 / n as f64) {
                row.insert(c, rng.random_range(0.1..2.0));
            }
        }
        if row.is_empty() {
            row.insert(rng.random_range(0..n), rng.random_range(0.1..2.0));
        }
        let dot: f64 = row.iter().map(|(&c, v)| v * xstar[c]).sum();
        let margin = rng.random_range(0.4..0.95);
        for (&c, &v) in &row {
            ct.push((r as u32, c as u32, v / (dot * margin)));
        }
    }
    let p = CsbMatrix::from_coo(&CooMatrix::new(mp, n, pt).unwrap(), Default::default());
    let c = CsbMatrix::from_coo(&CooMatrix::new(mc, n, ct).unwrap(), Default::default());
    MixedInstance::new(Arc::new(p), Arc::new(c)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_graph_matches_brute_force() {
        let n = 200;
        let r = 0.12;
        let g = random_geometric(n, r, 42);
        // brute force the same point set
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let (dx, dy) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
                if dx * dx + dy * dy <= r * r {
                    count += 1;
                }
            }
        }
        assert_eq!(g.edge_count(), count);
    }

    #[test]
    fn bipartite_has_partition() {
        let g = random_bipartite(10, 12, 0.3, 1);
        assert_eq!(g.bipartition(), Some(10));
        assert_eq!(g.vertex_count(), 22);
    }

    #[test]
    fn generators_are_deterministic() {
        let a = erdos_renyi(50, 0.1, 9);
        let b = erdos_renyi(50, 0.1, 9);
        assert_eq!(a.edges(), b.edges());
    }
}
